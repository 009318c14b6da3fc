//! Twisted sums `sum_{n >= 0} e^{2 pi i lambda n} (n + alpha)^{-s}` and the
//! periodic-zeta / Lerch-sum wrappers built on them.
//!
//! For `Re s >= -1/2` the sum is split at `M`: the head is summed directly and
//! the tail `sum_{m >= M} z^m f(m)` is expanded through the generating function
//! `1/(1 - z e^t) = sum_k a_k t^k`, giving `z^M sum_k a_k f^{(k)}(M)`. The
//! coefficients obey `(k+1) a_{k+1} = sum_j a_j a_{k-j} - a_k`, and the series
//! in `k` behaves like `((|s| + k) / (rho (M + alpha)))^k` with
//! `rho = 2 pi dist(lambda, Z)`. Left of `Re s = -1/2` Lerch's transformation
//! maps the evaluation to two sums at `1 - s`. Integer twists reduce to the
//! Hurwitz zeta.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::log_gamma;
use super::zeta::{hurwitz_zeta, riemann_zeta};
use super::{cis_turns, real_pow, unit_fraction};
use crate::error::{domain, Result};

/// Twists closer than this to an integer are treated as integral.
pub const INTEGER_TWIST_TOLERANCE: f64 = 1e-9;

const TAIL_TERMS: usize = 40;
const MAX_DIRECT_TERMS: usize = 4_000_000;
const REFLECT_BELOW: f64 = -0.5;

/// `phi(lambda, alpha, s) = sum_{n >= 0} e^{2 pi i lambda n} (n + alpha)^{-s}`
/// for any real `lambda` and `0 < alpha <= 1`.
pub fn lerch_phi(lambda: f64, alpha: f64, s: Complex64) -> Result<Complex64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(domain(format!("lerch_phi: alpha = {alpha} outside (0, 1]")));
    }
    if !(lambda.is_finite() && s.re.is_finite() && s.im.is_finite()) {
        return Err(domain("lerch_phi: non-finite argument"));
    }
    let lam = twist_fraction(lambda);
    if lam == 0.0 {
        return hurwitz_zeta(s, alpha);
    }
    if s.re >= REFLECT_BELOW {
        head_and_tail(lam, alpha, s)
    } else {
        reflected(lam, alpha, s)
    }
}

/// `lambda mod 1` in `[0, 1)`, snapped to 0 within the integer tolerance.
fn twist_fraction(lambda: f64) -> f64 {
    let f = lambda - lambda.floor();
    if !(INTEGER_TWIST_TOLERANCE..=1.0 - INTEGER_TWIST_TOLERANCE).contains(&f) {
        0.0
    } else {
        f
    }
}

fn head_and_tail(lam: f64, alpha: f64, s: Complex64) -> Result<Complex64> {
    let rho = 2.0 * PI * lam.min(1.0 - lam);
    let wanted = (3.0 * (s.norm() + TAIL_TERMS as f64) / rho - alpha).ceil();
    if wanted > MAX_DIRECT_TERMS as f64 {
        return Err(domain(format!(
            "lerch_phi: twist {lam} is too close to an integer for the direct route"
        )));
    }
    let m_split = (wanted as usize).max(1);

    let mut head = Complex64::new(0.0, 0.0);
    for m in (0..m_split).rev() {
        head += cis_turns(lam * m as f64) * real_pow(m as f64 + alpha, -s);
    }

    // Scaled coefficients b_k = a_k rho^k keep the recurrence in range.
    let z = cis_turns(lam);
    let mut b = Vec::with_capacity(TAIL_TERMS + 1);
    b.push((Complex64::new(1.0, 0.0) - z).inv());
    for k in 0..TAIL_TERMS {
        let conv: Complex64 = (0..=k).map(|j| b[j] * b[k - j]).sum();
        b.push((conv - b[k]) * (rho / (k + 1) as f64));
    }

    let n = m_split as f64 + alpha;
    let step = -1.0 / (rho * n);
    let mut weight = Complex64::new(1.0, 0.0); // (-1)^k (s)_k / (rho n)^k
    let mut tail = Complex64::new(0.0, 0.0);
    let mut last = f64::INFINITY;
    for (k, bk) in b.iter().enumerate() {
        let term = bk * weight;
        tail += term;
        let size = term.norm();
        if size + last <= 1e-17 * tail.norm() {
            break;
        }
        last = size;
        weight *= (s + k as f64) * step;
    }
    Ok(head + cis_turns(lam * m_split as f64) * real_pow(n, -s) * tail)
}

/// Lerch's transformation, for `0 < lam < 1`:
/// `phi(lam, alpha, 1-u) = Gamma(u) (2 pi)^{-u} [ e^{i pi u/2 - 2 pi i alpha lam} phi(-alpha, lam, u)
///                                       + e^{-i pi u/2 + 2 pi i alpha (1-lam)} phi(alpha, 1-lam, u) ]`.
fn reflected(lam: f64, alpha: f64, s: Complex64) -> Result<Complex64> {
    let u = Complex64::new(1.0, 0.0) - s;
    let base = log_gamma(u)? - u * (2.0 * PI).ln();
    let i_half_pi_u = Complex64::new(0.0, 0.5 * PI) * u;
    let first = (base + i_half_pi_u).exp() * cis_turns(-alpha * lam) * lerch_phi(-alpha, lam, u)?;
    let second = (base - i_half_pi_u).exp()
        * cis_turns(alpha * (1.0 - lam))
        * lerch_phi(alpha, 1.0 - lam, u)?;
    Ok(first + second)
}

/// `F(e, s) = sum_{n >= 1} e^{2 pi i e n} n^{-s}` for `0 < e <= 1`.
pub fn periodic_zeta(e: f64, s: Complex64) -> Result<Complex64> {
    if !(e > 0.0 && e <= 1.0) {
        return Err(domain(format!("periodic_zeta: e = {e} outside (0, 1]")));
    }
    if twist_fraction(e) == 0.0 {
        return riemann_zeta(s);
    }
    Ok(cis_turns(e) * lerch_phi(e, 1.0, s)?)
}

/// `Z(d, e, s) = sum_{m >= 0} e^{2 pi i e (d + m)} (d + m)^{-s}` for
/// `0 < d, e <= 1`.
pub fn lerch_sum(d: f64, e: f64, s: Complex64) -> Result<Complex64> {
    if !(d > 0.0 && d <= 1.0 && e > 0.0 && e <= 1.0) {
        return Err(domain(format!(
            "lerch_sum: (d, e) = ({d}, {e}) outside (0, 1] x (0, 1]"
        )));
    }
    class_sum(d, e, s)
}

/// `sum_{x = d mod 1, x > 0} e^{2 pi i e x} x^{-s}` for arbitrary real `d`, `e`.
pub fn class_sum(d: f64, e: f64, s: Complex64) -> Result<Complex64> {
    let start = unit_fraction(d);
    Ok(cis_turns(e * start) * lerch_phi(e, start, s)?)
}

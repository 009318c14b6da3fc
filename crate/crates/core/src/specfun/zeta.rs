//! Riemann and Hurwitz zeta by Euler-Maclaurin summation.
//!
//! Far left the partial sums cancel beyond what double precision can carry,
//! so there the functional equation (Riemann) or Hurwitz's formula (through
//! the periodic zeta at `1 - s`) is used instead.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::bernoulli::bernoulli_table;
use super::gamma::{chi, log_gamma};
use super::lerch::lerch_phi;
use super::{cis_turns, real_pow, POLE_GUARD};
use crate::error::{domain, Error, Result};

/// Euler-Maclaurin truncation parameters.
///
/// With `direct_terms == None` the number of directly summed terms is
/// `max(20, ceil(2 |Im s|))` for `Re s >= 1/2` and `max(5, ceil(0.4 |s|))`
/// otherwise; the smaller count on the left keeps the cancelling partial sums
/// `sum n^{-s}` (of size `M^{1 - Re s}`) from swamping the result.
/// Correction terms are added until they fall below `1e-17` of the running
/// sum, start to grow, or `max_corrections` is reached.
///
/// `riemann_zeta_with` switches to `chi(s) zeta(1 - s)` left of
/// `reflect_below`; `None` keeps Euler-Maclaurin everywhere (accurate to about
/// `1e-9 * max(1, |zeta|)` down to `Re s = -8`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerMaclaurin {
    pub direct_terms: Option<usize>,
    pub max_corrections: usize,
    pub reflect_below: Option<f64>,
}

impl Default for EulerMaclaurin {
    fn default() -> Self {
        Self {
            direct_terms: None,
            max_corrections: 20,
            reflect_below: Some(0.0),
        }
    }
}

impl EulerMaclaurin {
    /// Default truncation with no use of the functional equation.
    pub fn summation_only() -> Self {
        Self {
            reflect_below: None,
            ..Self::default()
        }
    }

    pub fn direct_terms_for(&self, s: Complex64) -> usize {
        if let Some(m) = self.direct_terms {
            return m.max(1);
        }
        if s.re >= 0.5 {
            20usize.max((2.0 * s.im.abs()).ceil() as usize)
        } else {
            5usize.max((0.4 * s.norm()).ceil() as usize)
        }
    }

    /// `sum_{m >= 0} (m + a)^{-s}`, continued; `a > 0` is not range-checked here.
    pub(crate) fn shifted_sum(&self, s: Complex64, a: f64) -> Complex64 {
        let m_direct = self.direct_terms_for(s);
        let mut acc = Complex64::new(0.0, 0.0);
        for m in (0..m_direct).rev() {
            acc += real_pow(m as f64 + a, -s);
        }
        let n = m_direct as f64 + a;
        let one = Complex64::new(1.0, 0.0);
        let n_pow = real_pow(n, -s);
        acc += n_pow * n / (s - one) + n_pow * 0.5;

        let table = bernoulli_table();
        let max_k = self.max_corrections.min((table.len() - 1) / 2);
        // term_k = B_2k / (2k)! * s (s+1) ... (s+2k-2) * n^{-s-2k+1}
        let mut rising = s;
        let mut power = n_pow / n;
        let mut factorial = 2.0;
        let mut previous = f64::INFINITY;
        for k in 1..=max_k {
            let b = table.get(2 * k).expect("index within table");
            let term = rising * power * (b / factorial);
            let size = term.norm();
            if size == 0.0 {
                break;
            }
            if size > previous {
                break;
            }
            acc += term;
            if size <= 1e-17 * acc.norm() {
                break;
            }
            previous = size;
            let j = (2 * k) as f64;
            rising *= (s + (j - 1.0)) * (s + j);
            power /= n * n;
            factorial *= (j + 1.0) * (j + 2.0);
        }
        acc
    }
}

/// Riemann `zeta(s)` with the default parameters.
pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    riemann_zeta_with(s, &EulerMaclaurin::default())
}

pub fn riemann_zeta_with(s: Complex64, params: &EulerMaclaurin) -> Result<Complex64> {
    check_pole("riemann_zeta", s)?;
    if params.reflect_below.is_some_and(|edge| s.re < edge) {
        let one = Complex64::new(1.0, 0.0);
        return Ok(chi(s)? * params.shifted_sum(one - s, 1.0));
    }
    Ok(params.shifted_sum(s, 1.0))
}

/// `hurwitz_zeta` with `a < 1` uses Euler-Maclaurin on `Re s >= HURWITZ_REFLECT_BELOW`.
pub const HURWITZ_REFLECT_BELOW: f64 = -8.0;

/// Hurwitz `zeta(s, a) = sum_{m >= 0} (m + a)^{-s}` for `0 < a <= 1`.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    hurwitz_zeta_with(s, a, &EulerMaclaurin::default())
}

pub fn hurwitz_zeta_with(s: Complex64, a: f64, params: &EulerMaclaurin) -> Result<Complex64> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(domain(format!("hurwitz_zeta: a = {a} outside (0, 1]")));
    }
    check_pole("hurwitz_zeta", s)?;
    if a == 1.0 {
        return riemann_zeta_with(s, params);
    }
    if s.re < HURWITZ_REFLECT_BELOW {
        return hurwitz_reflected(s, a);
    }
    Ok(params.shifted_sum(s, a))
}

/// `zeta(1-u, a) = Gamma(u) (2 pi)^{-u} [e^{-i pi u/2} F(a, u) + e^{i pi u/2} F(-a, u)]`
/// with `F(a, u) = sum_{n >= 1} e^{2 pi i a n} n^{-u}`.
fn hurwitz_reflected(s: Complex64, a: f64) -> Result<Complex64> {
    let u = Complex64::new(1.0, 0.0) - s;
    let base = log_gamma(u)? - u * (2.0 * PI).ln();
    let half = Complex64::new(0.0, 0.5 * PI) * u;
    let plus = cis_turns(a) * lerch_phi(a, 1.0, u)?;
    let minus = cis_turns(-a) * lerch_phi(-a, 1.0, u)?;
    Ok((base - half).exp() * plus + (base + half).exp() * minus)
}

fn check_pole(function: &'static str, s: Complex64) -> Result<()> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(domain(format!("{function}: non-finite argument {s}")));
    }
    if (s - 1.0).norm() <= POLE_GUARD {
        return Err(Error::PoleProximity {
            function,
            at: s,
            radius: POLE_GUARD,
        });
    }
    Ok(())
}

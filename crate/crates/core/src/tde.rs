//! The even distributions `T(d,e) = (D(d,e)(x) + D(d,e)(-x)) / 2` with
//! `D(d,e)(x) = e^{-i pi d e} e^{2 pi i e x} D_0(x - d)` and `D_0` the Dirac comb
//! on the integers.
//!
//! The shifts `T(d+1,e) = e^{-i pi e} T(d,e)`, `T(d,e+1) = e^{i pi d} T(d,e)` and
//! the parity `T(-d,-e) = T(d,e)` reduce every pair to the canonical domain
//! below; the Fourier transform maps `T(d,e)` to `T(-e,d)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::specfun::{cis_turns, class_sum, log_gamma};

/// Offsets from an integer below this are treated as exact integers when
/// reducing parameters.
pub const SNAP_TOLERANCE: f64 = 1e-12;
/// Integrality tolerance for the residue case split.
pub const INTEGRALITY_TOLERANCE: f64 = 1e-9;
/// Parameters closer than this (but not within [`INTEGRALITY_TOLERANCE`]) to
/// an integer are reported as near-degenerate.
pub const NEAR_DEGENERATE_BAND: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TdeParams {
    pub d: f64,
    pub e: f64,
}

impl TdeParams {
    pub fn new(d: f64, e: f64) -> Self {
        Self { d, e }
    }

    /// Membership in the canonical domain: `d, e > 0` with `d + e < 1`, or one
    /// of the boundary pieces `d + e = 1` (`1/2 <= d < 1`), `d = 1`
    /// (`0 < e <= 1/2`), `e = 1` (`0 < d <= 1/2`), or the corner `(1, 1)`.
    pub fn is_canonical(&self) -> bool {
        let (d, e) = (self.d, self.e);
        let eq = |a: f64, b: f64| (a - b).abs() <= SNAP_TOLERANCE;
        if !(d > 0.0 && e > 0.0 && d <= 1.0 && e <= 1.0) {
            return false;
        }
        if eq(d, 1.0) && eq(e, 1.0) {
            return true;
        }
        if eq(d, 1.0) {
            return e <= 0.5 + SNAP_TOLERANCE;
        }
        if eq(e, 1.0) {
            return d <= 0.5 + SNAP_TOLERANCE;
        }
        if eq(d + e, 1.0) {
            return d >= 0.5 - SNAP_TOLERANCE;
        }
        d + e < 1.0
    }
}

/// `T(d,e) = phase * T(params)` with `params` canonical.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasedTde {
    pub params: TdeParams,
    pub phase: Complex64,
}

/// `(x mod 1)` in `(0, 1]` and the integer `x - that`, snapping near-integers.
fn split_unit(x: f64) -> (f64, i64) {
    let nearest = x.round();
    if (x - nearest).abs() <= SNAP_TOLERANCE {
        return (1.0, nearest as i64 - 1);
    }
    let floor = x.floor();
    (x - floor, floor as i64)
}

/// Reduces `(d, e)` to the canonical domain, tracking the unit phase.
pub fn reduce_params(d: f64, e: f64) -> PhasedTde {
    let mut fallback = None;
    for sign in [1.0, -1.0] {
        let (d0, p) = split_unit(sign * d);
        let (e0, q) = split_unit(sign * e);
        // T(d0+p, e0+q) = e^{i pi (d0 q - e0 p - p q)} T(d0, e0)
        let parity = if (p.rem_euclid(2) * q.rem_euclid(2)) == 1 {
            -1.0
        } else {
            1.0
        };
        let phase = cis_turns(0.5 * (d0 * q as f64 - e0 * p as f64)) * parity;
        let candidate = PhasedTde {
            params: TdeParams::new(d0, e0),
            phase,
        };
        if candidate.params.is_canonical() {
            return candidate;
        }
        fallback.get_or_insert(candidate);
    }
    // Only reachable through rounding at the domain edges.
    fallback.expect("at least one candidate")
}

/// `F(T(d,e)) = T(-e,d)`, reduced.
pub fn fourier_map(d: f64, e: f64) -> PhasedTde {
    reduce_params(-e, d)
}

/// Mellin transform of `T(d,e)`:
/// `f(s) = e^{-i pi d e}/2 * [sum_{x = d, x > 0} e^{2 pi i e x} x^{-s} + sum_{x = -d, x > 0} e^{-2 pi i e x} x^{-s}]`.
pub fn tde_f(d: f64, e: f64, s: Complex64) -> Result<Complex64> {
    if !(d.is_finite() && e.is_finite()) {
        return Err(domain("tde_f: non-finite parameters"));
    }
    let PhasedTde { params, phase } = reduce_params(d, e);
    let (d0, e0) = (params.d, params.e);
    let front = phase * cis_turns(-0.5 * d0 * e0) * 0.5;
    let self_mirrored = |x: f64| ((2.0 * x) - (2.0 * x).round()).abs() <= SNAP_TOLERANCE;
    if self_mirrored(d0) && self_mirrored(e0) {
        // Both sums run over the same class with twists differing by the
        // constant e^{-4 pi i e0 d0} = +-1 on it.
        let sign = cis_turns(-2.0 * e0 * d0).re.round();
        if sign == -1.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        return Ok(front * 2.0 * class_sum(d0, e0, s)?);
    }
    Ok(front * (class_sum(d0, e0, s)? + class_sum(-d0, -e0, s)?))
}

/// Mellin transform of the Fourier transform of `T(d,e)`; by the functional
/// equation this is `chi(s) tde_f(d, e, 1 - s)`.
pub fn tde_g(d: f64, e: f64, s: Complex64) -> Result<Complex64> {
    let PhasedTde { params, phase } = fourier_map(d, e);
    Ok(phase * tde_f(params.d, params.e, s)?)
}

/// Residues of `pi^{-s/2} Gamma(s/2) f(s)` at its possible poles `0` and `1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompletedResidues {
    pub pole_at_0: Option<Complex64>,
    pub pole_at_1: Option<Complex64>,
    /// Contour-integral values at `0` and `1` (near zero where there is no pole).
    pub contour_at_0: Complex64,
    pub contour_at_1: Complex64,
    /// Set when `d` or `e` lies within `1e-4` of an integer without being one.
    pub near_degenerate: bool,
}

pub const CONTOUR_RADIUS: f64 = 0.25;
pub const CONTOUR_MIN_NODES: usize = 64;
pub const CONTOUR_MAX_NODES: usize = 512;
pub const CONTOUR_TOLERANCE: f64 = 1e-9;
/// Allowed disagreement between closed-form and contour residues.
pub const RESIDUE_AGREEMENT: f64 = 1e-6;

fn integer_distance(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// Closed-form residues, cross-checked against contour integration.
///
/// Neither parameter integral: entire. `d` integral only: a pole at `0` with
/// residue `-e^{-i pi d e}`. `e` integral only: a pole at `1` with residue
/// `e^{i pi d e}`. Both integral: residues `-(-1)^{de}` at `0` and `(-1)^{de}`
/// at `1`.
pub fn completed_residues(d: f64, e: f64) -> Result<CompletedResidues> {
    if !(d.is_finite() && e.is_finite()) {
        return Err(domain("completed_residues: non-finite parameters"));
    }
    let d_int = integer_distance(d) <= INTEGRALITY_TOLERANCE;
    let e_int = integer_distance(e) <= INTEGRALITY_TOLERANCE;
    let near = |x: f64| {
        let gap = integer_distance(x);
        gap > INTEGRALITY_TOLERANCE && gap < NEAR_DEGENERATE_BAND
    };
    let near_degenerate = near(d) || near(e);
    if near_degenerate {
        log::warn!("parameters ({d}, {e}) lie within {NEAR_DEGENERATE_BAND:e} of an integer; the pole structure is about to change");
    }

    let (pole_at_0, pole_at_1) = match (d_int, e_int) {
        (false, false) => (None, None),
        (true, false) => (Some(-cis_turns(-0.5 * d * e)), None),
        (false, true) => (None, Some(cis_turns(0.5 * d * e))),
        (true, true) => {
            let de = (d.round() as i64) * (e.round() as i64);
            let sign = if de.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            (
                Some(Complex64::new(-sign, 0.0)),
                Some(Complex64::new(sign, 0.0)),
            )
        }
    };

    let contour_at_0 = contour_residue(d, e, 0.0)?;
    let contour_at_1 = contour_residue(d, e, 1.0)?;
    for (center, closed, numeric) in [
        (0.0, pole_at_0, contour_at_0),
        (1.0, pole_at_1, contour_at_1),
    ] {
        let expected = closed.unwrap_or_default();
        if (numeric - expected).norm() > RESIDUE_AGREEMENT {
            return Err(domain(format!(
                "residue at {center} for ({d}, {e}): closed form {expected} but contour gives {numeric}"
            )));
        }
    }
    Ok(CompletedResidues {
        pole_at_0,
        pole_at_1,
        contour_at_0,
        contour_at_1,
        near_degenerate,
    })
}

/// `pi^{-s/2} Gamma(s/2) f(s)`.
pub fn completed_tde_f(d: f64, e: f64, s: Complex64) -> Result<Complex64> {
    let log_factor = log_gamma(s * 0.5)? - s * (0.5 * PI.ln());
    Ok(log_factor.exp() * tde_f(d, e, s)?)
}

/// `(1 / 2 pi i) * contour integral` of the completed function over the circle
/// of radius [`CONTOUR_RADIUS`] about `center`, by the trapezoid rule with
/// node doubling.
pub fn contour_residue(d: f64, e: f64, center: f64) -> Result<Complex64> {
    // r/N * sum F(c + r w) w over the N-th roots w; doubling reuses old nodes.
    let mut nodes = CONTOUR_MIN_NODES;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..nodes {
        sum += weighted_sample(d, e, center, j, nodes)?;
    }
    let mut estimate = sum * (CONTOUR_RADIUS / nodes as f64);
    let mut change = f64::INFINITY;
    while nodes < CONTOUR_MAX_NODES {
        let finer = 2 * nodes;
        for j in (1..finer).step_by(2) {
            sum += weighted_sample(d, e, center, j, finer)?;
        }
        nodes = finer;
        let next = sum * (CONTOUR_RADIUS / nodes as f64);
        change = (next - estimate).norm();
        estimate = next;
        if change < CONTOUR_TOLERANCE {
            return Ok(estimate);
        }
    }
    Err(Error::ContourFailure {
        center,
        nodes,
        change,
    })
}

fn weighted_sample(d: f64, e: f64, center: f64, j: usize, nodes: usize) -> Result<Complex64> {
    let w = cis_turns(j as f64 / nodes as f64);
    let s = Complex64::new(center, 0.0) + w * CONTOUR_RADIUS;
    Ok(completed_tde_f(d, e, s)? * w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{chi, real_pow, riemann_zeta};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_phased(got: PhasedTde, d: f64, e: f64, phase: Complex64) {
        assert!(
            (got.params.d - d).abs() < 1e-12 && (got.params.e - e).abs() < 1e-12,
            "{got:?}"
        );
        assert!((got.phase - phase).norm() < 1e-12, "{got:?}");
    }

    #[test]
    fn reduce_examples() {
        assert_phased(reduce_params(0.3, 0.2), 0.3, 0.2, c(1.0, 0.0));
        assert_phased(reduce_params(1.3, 0.2), 0.3, 0.2, cis_turns(-0.1));
        assert_phased(reduce_params(-0.3, -0.2), 0.3, 0.2, c(1.0, 0.0));
        assert_phased(reduce_params(0.3, 1.2), 0.3, 0.2, cis_turns(0.15));
        // T(0,0) is the comb itself while T(1,1) carries e^{-i pi} on every atom.
        assert_phased(reduce_params(0.0, 0.0), 1.0, 1.0, c(-1.0, 0.0));
        assert_phased(reduce_params(1.0, 1.0), 1.0, 1.0, c(1.0, 0.0));
    }

    #[test]
    fn reduce_boundaries() {
        // d + e = 1 keeps the larger d; the integer edges keep the smaller partner.
        let cases = [
            ((0.3, 0.7), (0.7, 0.3)),
            ((1.0, 0.75), (1.0, 0.25)),
            ((0.8, 1.0), (0.2, 1.0)),
            ((0.5, 0.5), (0.5, 0.5)),
            ((1.0, 0.5), (1.0, 0.5)),
            ((2.0, -0.5), (1.0, 0.5)),
        ];
        for ((d, e), (d0, e0)) in cases {
            let r = reduce_params(d, e).params;
            assert!(
                (r.d - d0).abs() < 1e-12 && (r.e - e0).abs() < 1e-12,
                "({d}, {e}) -> {r:?}"
            );
        }
    }

    #[test]
    fn reduce_is_idempotent_and_canonical() {
        let mut x = 0.123_f64;
        for _ in 0..500 {
            x = (x * 7919.0 + 0.4142).fract();
            let d = 10.0 * x - 5.0;
            x = (x * 7919.0 + 0.6180).fract();
            let e = 10.0 * x - 5.0;
            let r = reduce_params(d, e);
            assert!(r.params.is_canonical(), "{d} {e} -> {r:?}");
            assert!((r.phase.norm() - 1.0).abs() < 1e-12);
            let again = reduce_params(r.params.d, r.params.e);
            assert_eq!(again.params, r.params);
            assert_eq!(again.phase, c(1.0, 0.0));
        }
    }

    #[test]
    fn fourier_examples() {
        assert_phased(fourier_map(0.3, 0.2), 0.2, 0.7, cis_turns(-0.1));
        assert_phased(fourier_map(1.0, 1.0), 1.0, 1.0, c(1.0, 0.0));
        let once = fourier_map(0.3, 0.2);
        let twice = fourier_map(once.params.d, once.params.e);
        assert_phased(twice, 0.3, 0.2, once.phase.inv());
    }

    #[test]
    fn f_examples() {
        let two = c(2.0, 0.0);
        let z2 = PI * PI / 6.0;
        assert!((tde_f(1.0, 1.0, two).unwrap() + z2).norm() < 1e-13);
        assert!((tde_f(0.5, 1.0, two).unwrap() - c(0.0, PI * PI / 2.0)).norm() < 1e-12);
        assert_eq!(tde_f(0.5, 0.5, c(3.0, 0.0)).unwrap(), c(0.0, 0.0));
    }

    fn direct_f(d: f64, e: f64, s: Complex64, terms: u64) -> Complex64 {
        // The two series as written, summed over x = d + n and x = -d + n, x > 0.
        let mut acc = c(0.0, 0.0);
        for n in (-1..terms as i64).rev() {
            let x = d + n as f64;
            if x > 0.0 {
                acc += cis_turns(e * x) * real_pow(x, -s);
            }
            let y = -d + n as f64;
            if y > 0.0 {
                acc += cis_turns(-e * y) * real_pow(y, -s);
            }
        }
        acc * cis_turns(-0.5 * d * e) * 0.5
    }

    #[test]
    fn f_matches_direct_summation() {
        let s = c(3.0, 0.0);
        for &(d, e) in &[
            (0.5, 0.5),
            (0.3, 0.2),
            (1.3, -0.45),
            (0.25, 0.5),
            (-0.7, 2.1),
        ] {
            let got = tde_f(d, e, s).unwrap();
            let direct = direct_f(d, e, s, 1_000_000);
            assert!(
                (got - direct).norm() < 1e-9,
                "({d}, {e}) got={got} direct={direct}"
            );
        }
    }

    #[test]
    fn g_examples() {
        let three = c(3.0, 0.0);
        let g = tde_g(1.0, 1.0, three).unwrap();
        assert!((g + riemann_zeta(three).unwrap()).norm() < 1e-13);

        // g-series as written: e^{i pi d e}/2 [sum_{y = e} e^{-2 pi i d y} y^-s + sum_{y = -e} e^{2 pi i d y} y^-s]
        let (d, e) = (0.3, 0.2);
        let direct = direct_f(-e, d, three, 1_000_000);
        let got = tde_g(d, e, three).unwrap();
        assert!((got - direct).norm() < 1e-9);
    }

    #[test]
    fn functional_equation_at_two() {
        let two = c(2.0, 0.0);
        for &(d, e) in &[
            (0.3, 0.2),
            (0.7, 0.1),
            (1.0, 0.25),
            (0.2, 1.0),
            (0.45, 0.35),
        ] {
            let g = tde_g(d, e, two).unwrap();
            let fe = chi(two).unwrap() * tde_f(d, e, c(-1.0, 0.0)).unwrap();
            assert!((g - fe).norm() < 1e-6, "({d}, {e})");
        }
    }

    #[test]
    fn hamburger_degeneration() {
        for &s in &[c(2.0, 0.0), c(0.3, 7.0), c(-3.5, 2.0), c(12.0, -30.0)] {
            let f = tde_f(1.0, 1.0, s).unwrap();
            assert!((f + riemann_zeta(s).unwrap()).norm() < 1e-10);
        }
    }

    #[test]
    fn residue_examples() {
        let entire = completed_residues(0.3, 0.7).unwrap();
        assert_eq!((entire.pole_at_0, entire.pole_at_1), (None, None));
        assert!(entire.contour_at_0.norm() < 1e-6 && entire.contour_at_1.norm() < 1e-6);

        let r = completed_residues(1.0, 0.25).unwrap();
        assert!((r.pole_at_0.unwrap() + cis_turns(-0.125)).norm() < 1e-14);
        assert!(r.pole_at_1.is_none());

        let r = completed_residues(0.4, 1.0).unwrap();
        assert!((r.pole_at_1.unwrap() - cis_turns(0.2)).norm() < 1e-14);
        assert!(r.pole_at_0.is_none());

        let r = completed_residues(1.0, 1.0).unwrap();
        assert_eq!(r.pole_at_0, Some(c(1.0, 0.0)));
        assert_eq!(r.pole_at_1, Some(c(-1.0, 0.0)));
        assert!((r.contour_at_0 - 1.0).norm() < 1e-6);
        assert!((r.contour_at_1 + 1.0).norm() < 1e-6);
        assert!(!r.near_degenerate);
    }

    #[test]
    fn residue_near_degenerate_flag() {
        let r = completed_residues(0.99999, 0.3).unwrap();
        assert!(r.near_degenerate);
    }
}

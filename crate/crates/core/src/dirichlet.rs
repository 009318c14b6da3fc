//! Generalized Dirichlet series, the `zeta(s - 2k)` family with its duals
//! `g_k(s) = chi(s) zeta(1 - s - 2k)`, coefficient recovery and the
//! support-gap estimator.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::specfun::{real_pow, riemann_zeta, POLE_GUARD};

/// `sum a_n x_n^{-s}` over a finite, strictly increasing list of frequencies.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GeneralizedDirichletSeries {
    terms: Vec<(f64, Complex64)>,
}

impl GeneralizedDirichletSeries {
    /// Builds a series, dropping zero coefficients. Frequencies must be
    /// positive, finite and strictly increasing.
    pub fn new(terms: Vec<(f64, Complex64)>) -> Result<Self> {
        let mut prev = 0.0;
        for &(x, _) in &terms {
            if !(x.is_finite() && x > prev) {
                return Err(domain(format!(
                    "frequencies must be positive and strictly increasing (got {x} after {prev})"
                )));
            }
            prev = x;
        }
        let terms = terms
            .into_iter()
            .filter(|(_, a)| *a != Complex64::new(0.0, 0.0))
            .collect();
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[(f64, Complex64)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Exact finite sum `sum a_n x_n^{-s}`.
pub fn eval_truncated(series: &GeneralizedDirichletSeries, s: Complex64) -> Complex64 {
    series
        .terms
        .iter()
        .rev()
        .map(|&(x, a)| a * real_pow(x, -s))
        .sum()
}

/// `s * int C(x) x^{-s-1} dx` for the step function `C(x) = sum_{x_n <= x} a_n`,
/// integrated piece by piece.
pub fn mellin_step_integral(
    series: &GeneralizedDirichletSeries,
    s: Complex64,
) -> Result<Complex64> {
    let terms = &series.terms;
    let Some(&(x_last, _)) = terms.last() else {
        return Ok(Complex64::new(0.0, 0.0));
    };
    let mut partial = Vec::with_capacity(terms.len());
    let mut c = Complex64::new(0.0, 0.0);
    let mut mass = 0.0;
    for &(_, a) in terms {
        c += a;
        mass += a.norm();
        partial.push(c);
    }
    let final_level = *partial.last().unwrap();
    let vanishes = final_level.norm() <= 1e-14 * mass;
    if s.re <= 0.0 && !vanishes {
        return Err(domain(format!(
            "mellin_step_integral: Re s = {} <= 0 and the step function does not vanish at infinity",
            s.re
        )));
    }
    let mut acc = if vanishes {
        Complex64::new(0.0, 0.0)
    } else {
        final_level * real_pow(x_last, -s)
    };
    for i in (0..terms.len() - 1).rev() {
        let piece = real_pow(terms[i].0, -s) - real_pow(terms[i + 1].0, -s);
        acc += partial[i] * piece;
    }
    Ok(acc)
}

fn four_pi_squared_power(k: i32) -> f64 {
    (-4.0 * PI * PI).powi(k)
}

/// `g_k(s)`: the dual of `zeta(s - 2k)` under `g(s) = chi(s) f(1 - s)`.
///
/// For `k >= 0`, `g_k(s) = s (s+1) ... (s+2k-1) / (-4 pi^2)^k * zeta(s + 2k)`;
/// for `k < 0`, `g_k(s) = (-4 pi^2)^{-k} / ((s+2k) ... (s-1)) * zeta(s + 2k)`.
pub fn zeta_shift_g(k: i32, s: Complex64) -> Result<Complex64> {
    let shifted = s + 2.0 * k as f64;
    let z = riemann_zeta(shifted)?;
    let mut product = Complex64::new(1.0, 0.0);
    if k >= 0 {
        for j in 0..2 * k {
            product *= s + j as f64;
        }
        Ok(product * z / four_pi_squared_power(k))
    } else {
        for j in 2 * k..0 {
            let factor = s + j as f64;
            if factor.norm() <= POLE_GUARD {
                return Err(Error::PoleProximity {
                    function: "zeta_shift_g",
                    at: s,
                    radius: POLE_GUARD,
                });
            }
            product *= factor;
        }
        Ok(z * four_pi_squared_power(-k) / product)
    }
}

/// Finite combination `sum_k c_k zeta(s - 2k)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ZetaShiftCombination {
    pub coefficients: BTreeMap<i32, Complex64>,
}

impl ZetaShiftCombination {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, k: i32, c: Complex64) -> Self {
        self.coefficients.insert(k, c);
        self
    }

    pub fn get(&self, k: i32) -> Complex64 {
        self.coefficients.get(&k).copied().unwrap_or_default()
    }
}

impl FromIterator<(i32, Complex64)> for ZetaShiftCombination {
    fn from_iter<I: IntoIterator<Item = (i32, Complex64)>>(iter: I) -> Self {
        Self {
            coefficients: iter.into_iter().collect(),
        }
    }
}

pub fn combo_f(c: &ZetaShiftCombination, s: Complex64) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (&k, &ck) in &c.coefficients {
        acc += ck * riemann_zeta(s - 2.0 * k as f64)?;
    }
    Ok(acc)
}

pub fn combo_g(c: &ZetaShiftCombination, s: Complex64) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (&k, &ck) in &c.coefficients {
        acc += ck * zeta_shift_g(k, s)?;
    }
    Ok(acc)
}

/// Result of [`recover_shift_coefficients`].
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftFit {
    pub combination: ZetaShiftCombination,
    /// Euclidean norm of the fit residual over all samples.
    pub residual: f64,
    /// Condition number of the column-scaled design matrix.
    pub condition: f64,
}

pub const MAX_CONDITION: f64 = 1e12;
pub const RELATIVE_RESIDUAL_LIMIT: f64 = 1e-6;
/// Fitted terms whose scaled size falls below this fraction of the largest
/// are dropped and the fit is repeated on the remaining columns.
pub const PRUNE_THRESHOLD: f64 = 1e-9;

/// Least-squares fit of samples `(sigma, g(sigma))` in the basis
/// `g_{k_min}, ..., g_{k_max}`.
pub fn recover_shift_coefficients(
    g_samples: &[(f64, Complex64)],
    k_min: i32,
    k_max: i32,
) -> Result<ShiftFit> {
    if k_max < k_min {
        return Err(domain(format!("empty k window [{k_min}, {k_max}]")));
    }
    let width = (k_max - k_min + 1) as usize;
    if g_samples.len() < width {
        return Err(domain(format!(
            "need at least {width} samples for k in [{k_min}, {k_max}], got {}",
            g_samples.len()
        )));
    }
    let mut sigmas: Vec<f64> = g_samples.iter().map(|p| p.0).collect();
    if sigmas.iter().any(|&x| !(x >= 5.0 && x.is_finite())) {
        return Err(domain("sample abscissae must satisfy sigma >= 5"));
    }
    sigmas.sort_by(f64::total_cmp);
    if sigmas.windows(2).any(|w| w[0] == w[1]) {
        return Err(domain("sample abscissae must be distinct"));
    }

    let ks: Vec<i32> = (k_min..=k_max).collect();
    let first = fit_columns(g_samples, &ks)?;
    let largest = first.scaled.iter().cloned().fold(0.0, f64::max);
    let kept: Vec<i32> = ks
        .iter()
        .zip(&first.scaled)
        .filter(|(_, &size)| size > PRUNE_THRESHOLD * largest)
        .map(|(&k, _)| k)
        .collect();
    let fit = if kept.len() == ks.len() || kept.is_empty() {
        first
    } else {
        fit_columns(g_samples, &kept)?
    };

    let norm = g_samples.iter().map(|p| p.1.norm_sqr()).sum::<f64>().sqrt();
    let limit = RELATIVE_RESIDUAL_LIMIT * norm;
    if fit.residual > limit {
        return Err(Error::ResidualTooLarge {
            residual: fit.residual,
            limit,
        });
    }
    Ok(ShiftFit {
        combination: fit.ks.into_iter().zip(fit.coefficients).collect(),
        residual: fit.residual,
        condition: fit.condition,
    })
}

struct ColumnFit {
    ks: Vec<i32>,
    coefficients: Vec<Complex64>,
    /// `|c_k| * column scale`, comparable across columns.
    scaled: Vec<f64>,
    residual: f64,
    condition: f64,
}

fn fit_columns(samples: &[(f64, Complex64)], ks: &[i32]) -> Result<ColumnFit> {
    let log_mean = samples.iter().map(|p| p.0.ln()).sum::<f64>() / samples.len() as f64;
    let scales: Vec<f64> = ks
        .iter()
        .map(|&k| (-(k as f64) * (4.0 * PI * PI).ln() + 2.0 * k as f64 * log_mean).exp())
        .collect();

    let mut design = DMatrix::<Complex64>::zeros(samples.len(), ks.len());
    for (i, &(sigma, _)) in samples.iter().enumerate() {
        for (j, &k) in ks.iter().enumerate() {
            design[(i, j)] = zeta_shift_g(k, Complex64::new(sigma, 0.0))? / scales[j];
        }
    }
    let rhs = DVector::from_iterator(samples.len(), samples.iter().map(|p| p.1));

    let svd = design.clone().svd(true, true);
    let singular = &svd.singular_values;
    let smax = singular.max();
    let smin = singular.min();
    let condition = if smin > 0.0 {
        smax / smin
    } else {
        f64::INFINITY
    };
    if condition > MAX_CONDITION {
        return Err(Error::IllConditioned { condition });
    }
    let solution = svd
        .solve(&rhs, 0.0)
        .map_err(|e| domain(format!("least-squares solve failed: {e}")))?;
    let residual = (&design * &solution - &rhs).norm();

    Ok(ColumnFit {
        ks: ks.to_vec(),
        coefficients: solution.iter().zip(&scales).map(|(c, s)| c / s).collect(),
        scaled: solution.iter().map(|c| c.norm()).collect(),
        residual,
        condition,
    })
}

/// Estimates the smallest positive support point `Y_0` of the dual measure
/// from the growth rate of `log |g(sigma)|` at the top of `sigma_list`.
pub fn estimate_support_gap<F>(g_evaluator: F, sigma_list: &[f64]) -> Result<f64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if sigma_list.len() < 4 {
        return Err(domain("support gap estimate needs at least 4 abscissae"));
    }
    if sigma_list
        .windows(2)
        .any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater))
    {
        return Err(domain("sigma list must be strictly increasing"));
    }
    let top = *sigma_list.last().unwrap();
    if top < 60.0 {
        return Err(domain(format!("largest sigma is {top}, need at least 60")));
    }
    let tail = &sigma_list[sigma_list.len() - 4..];
    let mut logs = Vec::with_capacity(4);
    for &sigma in tail {
        let size = g_evaluator(sigma)?.norm();
        if !(size.is_finite() && size > f64::MIN_POSITIVE) {
            return Err(Error::SignalTooSmall { sigma });
        }
        logs.push(size.ln());
    }
    let mut slopes: Vec<f64> = (1..4)
        .map(|i| (logs[i] - logs[i - 1]) / (tail[i] - tail[i - 1]))
        .collect();
    slopes.sort_by(f64::total_cmp);
    Ok((-slopes[1]).exp())
}

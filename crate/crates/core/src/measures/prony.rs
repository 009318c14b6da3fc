//! Prony decomposition: along each residue class `r + p` the coefficients of
//! a finite `T(d,e)` combination form an exponential sum `sum_k alpha_k
//! e^{2 pi i eps_k p}`, annihilated by a recurrence whose characteristic roots
//! lie on the unit circle.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{
    class_sequence, expand_window, unfolded_classes, AtomicEvenMeasure, TdeDecomposition, TdeTerm,
    MERGE_TOLERANCE,
};
use crate::error::{domain, Error, Result};
use crate::specfun::cis_turns;
use crate::tde::reduce_params;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PronyOptions {
    /// Largest exponential rank searched per class.
    pub max_rank: usize,
    /// Singular values below this fraction of the largest count as zero.
    pub rank_threshold: f64,
    /// Roots farther than this from the unit circle are rejected.
    pub unit_circle_tolerance: f64,
    /// Allowed atom-wise mismatch when re-expanding the result.
    pub round_trip_tolerance: f64,
}

impl Default for PronyOptions {
    fn default() -> Self {
        Self {
            max_rank: 8,
            rank_threshold: 1e-9,
            unit_circle_tolerance: 1e-6,
            round_trip_tolerance: 1e-8,
        }
    }
}

/// Exponential fit of one residue class.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassFit {
    pub residue: f64,
    pub rank: usize,
    /// `eps_k` in `(0, 1]`.
    pub exponents: Vec<f64>,
    pub amplitudes: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PronyReport {
    pub decomposition: TdeDecomposition,
    pub classes: Vec<ClassFit>,
    /// Largest atom-wise difference between the input and the re-expanded result.
    pub round_trip_error: f64,
    /// `|origin - predicted origin|`; the origin is not constrained by the fit.
    pub origin_mismatch: f64,
}

pub fn decompose_prony(m: &AtomicEvenMeasure, window: f64) -> Result<TdeDecomposition> {
    Ok(decompose_prony_detailed(m, window, &PronyOptions::default())?.decomposition)
}

pub fn decompose_prony_detailed(
    m: &AtomicEvenMeasure,
    window: f64,
    options: &PronyOptions,
) -> Result<PronyReport> {
    if !(window >= 1.0 && window.is_finite()) {
        return Err(domain(format!("window {window} must be at least 1")));
    }
    if let Some(&(x, _)) = m.atoms().last() {
        if x > window + MERGE_TOLERANCE {
            return Err(domain(format!(
                "atom at {x} lies outside the window {window}"
            )));
        }
    }

    let mut classes = Vec::new();
    for r in unfolded_classes(m) {
        classes.push(fit_class(r, &class_sequence(m, r, window), options)?);
    }

    // Each (r, eps, alpha) is alpha / u copies of the canonical term reached
    // from (r, eps), where u is the unit atom that term places at x = r.
    let mut estimates: Vec<(f64, f64, Vec<Complex64>)> = Vec::new();
    for fit in &classes {
        for (&eps, &alpha) in fit.exponents.iter().zip(&fit.amplitudes) {
            let canon = reduce_params(fit.residue, eps).params;
            let unit = unit_atom(canon.d, canon.e, fit.residue, eps);
            if unit.norm() < 1e-12 {
                if alpha.norm() > options.round_trip_tolerance {
                    return Err(Error::NotFiniteCombination(format!(
                        "class {} carries exponent {eps} that no T(d,e) produces",
                        fit.residue
                    )));
                }
                continue;
            }
            let c = alpha / unit;
            match estimates
                .iter_mut()
                .find(|(d, e, _)| (d - canon.d).abs() <= 1e-7 && (e - canon.e).abs() <= 1e-7)
            {
                Some(entry) => entry.2.push(c),
                None => estimates.push((canon.d, canon.e, vec![c])),
            }
        }
    }
    let decomposition = TdeDecomposition::new(estimates.into_iter().map(|(d, e, cs)| TdeTerm {
        d,
        e,
        coefficient: cs.iter().sum::<Complex64>() / cs.len() as f64,
    }));

    let rebuilt = expand_window(&decomposition, window.max(1.0))?;
    let atoms_only = |x: &AtomicEvenMeasure| {
        AtomicEvenMeasure::new(x.atoms().to_vec(), Complex64::new(0.0, 0.0))
    };
    let round_trip_error = atoms_only(m)?.max_difference(&atoms_only(&rebuilt)?);
    let scale = m.atoms().iter().map(|p| p.1.norm()).fold(1.0, f64::max);
    if round_trip_error > options.round_trip_tolerance * scale {
        return Err(Error::NotFiniteCombination(format!(
            "re-expanded decomposition misses the input by {round_trip_error:e}"
        )));
    }
    let origin_mismatch = (rebuilt.origin() - m.origin()).norm();
    if origin_mismatch > MERGE_TOLERANCE * scale {
        log::warn!(
            "origin coefficient {} differs from the decomposition's {} by {origin_mismatch:e}",
            m.origin(),
            rebuilt.origin()
        );
    }
    Ok(PronyReport {
        decomposition,
        classes,
        round_trip_error,
        origin_mismatch,
    })
}

/// Atom at `x = r` of `T(d, e)` when `(r, eps)` is one of its two
/// (class, twist) pairs.
fn unit_atom(d: f64, e: f64, r: f64, eps: f64) -> Complex64 {
    let same = |a: f64, b: f64| {
        let t = a - b;
        (t - t.round()).abs() <= 1e-7
    };
    let front = cis_turns(-0.5 * d * e) * 0.5;
    let mut u = Complex64::new(0.0, 0.0);
    if same(r, d) && same(eps, e) {
        u += front * cis_turns(e * r);
    }
    if same(r, -d) && same(eps, -e) {
        u += front * cis_turns(-e * r);
    }
    u
}

fn fit_class(residue: f64, y: &[Complex64], options: &PronyOptions) -> Result<ClassFit> {
    let empty = ClassFit {
        residue,
        rank: 0,
        exponents: vec![],
        amplitudes: vec![],
    };
    let len = y.len();
    if y.iter().all(|v| v.norm() == 0.0) {
        return Ok(empty);
    }
    if len < 4 {
        return Err(Error::InsufficientWindow {
            residue,
            available: len,
            required: 4,
        });
    }

    let cols = (options.max_rank + 1).min(len.div_ceil(2));
    let singular = hankel(y, len - cols + 1, cols).singular_values(); // unsorted order is fine here
    let largest = singular.max();
    let rank = singular
        .iter()
        .filter(|&&v| v > options.rank_threshold * largest)
        .count();
    if rank >= cols {
        if cols == options.max_rank + 1 {
            return Err(Error::NotFiniteCombination(format!(
                "class {residue} has exponential rank above {}",
                options.max_rank
            )));
        }
        return Err(Error::InsufficientWindow {
            residue,
            available: len,
            required: 2 * (rank + 1) + 2,
        });
    }
    if len < 2 * rank + 2 {
        return Err(Error::InsufficientWindow {
            residue,
            available: len,
            required: 2 * rank + 2,
        });
    }

    let roots = characteristic_roots(y, rank)?;
    let mut exponents = Vec::with_capacity(rank);
    for z in roots {
        let off = (z.norm() - 1.0).abs();
        if off > options.unit_circle_tolerance {
            return Err(Error::NotFiniteCombination(format!(
                "class {residue}: recurrence root {z} is {off:e} off the unit circle"
            )));
        }
        let turns = z.arg() / (2.0 * std::f64::consts::PI);
        let eps = turns - turns.floor();
        exponents.push(if eps <= 1e-12 { 1.0 } else { eps });
    }
    exponents.sort_by(f64::total_cmp);

    let vandermonde = DMatrix::from_fn(len, rank, |p, k| cis_turns(exponents[k] * p as f64));
    let rhs = DVector::from_column_slice(y);
    let amplitudes = vandermonde
        .svd(true, true)
        .solve(&rhs, 0.0)
        .map_err(|e| domain(format!("Vandermonde solve failed: {e}")))?;
    Ok(ClassFit {
        residue,
        rank,
        exponents,
        amplitudes: amplitudes.iter().copied().collect(),
    })
}

fn hankel(y: &[Complex64], rows: usize, cols: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows, cols, |i, j| y[i + j])
}

/// Roots of `sum_j v_j z^j`, where `v` spans the null space of the
/// `(L - R) x (R + 1)` Hankel matrix of `y`.
fn characteristic_roots(y: &[Complex64], rank: usize) -> Result<Vec<Complex64>> {
    let h = hankel(y, y.len() - rank, rank + 1);
    let svd = h.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let smallest = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("nonempty");
    // rows of v_t are conjugated right singular vectors
    let v: Vec<Complex64> = v_t.row(smallest).iter().map(|c| c.conj()).collect();
    let lead = v[rank];
    if lead.norm() < 1e-14 {
        return Err(Error::NotFiniteCombination("degenerate recurrence".into()));
    }
    let monic: Vec<Complex64> = v.iter().map(|c| c / lead).collect();

    let mut roots = if rank == 1 {
        vec![-monic[0]]
    } else {
        let mut companion = DMatrix::<Complex64>::zeros(rank, rank);
        for i in 1..rank {
            companion[(i, i - 1)] = Complex64::new(1.0, 0.0);
        }
        for i in 0..rank {
            companion[(i, rank - 1)] = -monic[i];
        }
        companion
            .schur()
            .eigenvalues()
            .ok_or_else(|| {
                Error::NotFiniteCombination("companion eigenvalues did not converge".into())
            })?
            .iter()
            .copied()
            .collect()
    };
    for z in &mut roots {
        polish_root(&monic, z);
    }
    Ok(roots)
}

fn polish_root(monic: &[Complex64], z: &mut Complex64) {
    for _ in 0..4 {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in monic.iter().rev() {
            dp = dp * *z + p;
            p = p * *z + c;
        }
        if dp.norm() == 0.0 {
            return;
        }
        let step = p / dp;
        *z -= step;
        if step.norm() <= 1e-16 * z.norm() {
            return;
        }
    }
}

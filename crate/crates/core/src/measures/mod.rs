//! Even atomic measures supported on finitely many translates of `Z`, and
//! their decomposition into the `T(d,e)` basis.

mod prony;

pub use prony::{decompose_prony, decompose_prony_detailed, ClassFit, PronyOptions, PronyReport};

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::specfun::{cis_turns, real_pow, unit_fraction};
use crate::tde::{fourier_map, reduce_params};

/// Positions closer than this are the same atom; residues closer than this
/// are the same class.
pub const MERGE_TOLERANCE: f64 = 1e-9;
/// Default bound on the number of residue classes.
pub const MAX_CLASSES: usize = 16;
/// Merged coefficients below this fraction of the largest are dropped.
const CANCELLATION_FLOOR: f64 = 1e-14;

/// `origin * delta_0 + sum_n a_n (delta_{x_n} + delta_{-x_n})`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AtomicEvenMeasure {
    atoms: Vec<(f64, Complex64)>,
    origin: Complex64,
}

impl AtomicEvenMeasure {
    /// Atoms must have finite, positive, strictly increasing positions.
    pub fn new(atoms: Vec<(f64, Complex64)>, origin: Complex64) -> Result<Self> {
        let mut prev = 0.0;
        for &(x, a) in &atoms {
            if !(x.is_finite() && x > prev) {
                return Err(domain(format!(
                    "atom positions must be positive and strictly increasing (got {x} after {prev})"
                )));
            }
            if !(a.re.is_finite() && a.im.is_finite()) {
                return Err(domain(format!("non-finite coefficient at {x}")));
            }
            prev = x;
        }
        Ok(Self { atoms, origin })
    }

    /// Sorts, merges nearby positions and drops cancelled coefficients.
    pub fn from_unsorted(mut atoms: Vec<(f64, Complex64)>, origin: Complex64) -> Result<Self> {
        atoms.retain(|&(x, _)| x > MERGE_TOLERANCE);
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, Complex64)> = Vec::with_capacity(atoms.len());
        for (x, a) in atoms {
            match merged.last_mut() {
                Some(last) if x - last.0 <= MERGE_TOLERANCE => last.1 += a,
                _ => merged.push((x, a)),
            }
        }
        let largest = merged
            .iter()
            .map(|p| p.1.norm())
            .fold(origin.norm(), f64::max);
        merged.retain(|p| p.1.norm() > CANCELLATION_FLOOR * largest);
        let origin = if origin.norm() > CANCELLATION_FLOOR * largest {
            origin
        } else {
            Complex64::new(0.0, 0.0)
        };
        Self::new(merged, origin)
    }

    pub fn atoms(&self) -> &[(f64, Complex64)] {
        &self.atoms
    }

    pub fn origin(&self) -> Complex64 {
        self.origin
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty() && self.origin == Complex64::new(0.0, 0.0)
    }

    /// Coefficient at `x > 0`, or zero when there is no atom there.
    pub fn mass_at(&self, x: f64) -> Complex64 {
        let i = self.atoms.partition_point(|p| p.0 < x - MERGE_TOLERANCE);
        match self.atoms.get(i) {
            Some(&(y, a)) if (y - x).abs() <= MERGE_TOLERANCE => a,
            _ => Complex64::new(0.0, 0.0),
        }
    }

    /// Largest coefficient difference against `other`, origins included.
    pub fn max_difference(&self, other: &Self) -> f64 {
        let mut worst = (self.origin - other.origin).norm();
        for &(x, a) in &self.atoms {
            worst = worst.max((a - other.mass_at(x)).norm());
        }
        for &(x, b) in &other.atoms {
            if self.mass_at(x) == Complex64::new(0.0, 0.0) {
                worst = worst.max(b.norm());
            }
        }
        worst
    }
}

/// Residue classes `d_j` in `(0, 1]`, folded so that `d` and `-d` share a
/// representative `min(d, 1 - d)`; the integers are represented by `1`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ProgressionSupport {
    pub residues: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TdeTerm {
    pub d: f64,
    pub e: f64,
    pub coefficient: Complex64,
}

/// `sum c(d,e) T(d,e)` over canonical, pairwise distinct `(d, e)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TdeDecomposition {
    terms: Vec<TdeTerm>,
}

impl TdeDecomposition {
    /// Reduces every pair to the canonical domain (absorbing the phase into
    /// the coefficient), merges equal pairs and drops zero coefficients.
    pub fn new(terms: impl IntoIterator<Item = TdeTerm>) -> Self {
        let mut out: Vec<TdeTerm> = Vec::new();
        for t in terms {
            let r = reduce_params(t.d, t.e);
            let term = TdeTerm {
                d: r.params.d,
                e: r.params.e,
                coefficient: t.coefficient * r.phase,
            };
            match out.iter_mut().find(|o| {
                (o.d - term.d).abs() <= MERGE_TOLERANCE && (o.e - term.e).abs() <= MERGE_TOLERANCE
            }) {
                Some(o) => o.coefficient += term.coefficient,
                None => out.push(term),
            }
        }
        out.retain(|t| t.coefficient != Complex64::new(0.0, 0.0));
        out.sort_by(|a, b| a.d.total_cmp(&b.d).then(a.e.total_cmp(&b.e)));
        Self { terms: out }
    }

    pub fn terms(&self) -> &[TdeTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the canonical pair `(d, e)`, zero if absent.
    pub fn coefficient(&self, d: f64, e: f64) -> Complex64 {
        self.terms
            .iter()
            .find(|t| (t.d - d).abs() <= 1e-7 && (t.e - e).abs() <= 1e-7)
            .map(|t| t.coefficient)
            .unwrap_or_default()
    }
}

/// All atoms of the combination with `0 < x <= window`, plus the origin.
pub fn expand_window(dec: &TdeDecomposition, window: f64) -> Result<AtomicEvenMeasure> {
    if !(window >= 1.0 && window.is_finite()) {
        return Err(domain(format!("window {window} must be at least 1")));
    }
    let mut atoms = Vec::new();
    let mut origin = Complex64::new(0.0, 0.0);
    for t in &dec.terms {
        let front = t.coefficient * cis_turns(-0.5 * t.d * t.e);
        // class d with twist e, class -d with twist -e
        for sign in [1.0, -1.0] {
            let start = unit_fraction(sign * t.d);
            let start = if (start - 1.0).abs() <= 1e-12 {
                1.0
            } else {
                start
            };
            let mut p = 0usize;
            loop {
                let x = start + p as f64;
                if x > window + MERGE_TOLERANCE {
                    break;
                }
                atoms.push((x, front * 0.5 * cis_turns(sign * t.e * x)));
                p += 1;
            }
        }
        if (t.d - t.d.round()).abs() <= 1e-12 {
            origin += front;
        }
    }
    AtomicEvenMeasure::from_unsorted(atoms, origin)
}

/// Residue of `x` modulo 1 in `(0, 1]`, snapping to `1` near integers.
pub(crate) fn residue_of(x: f64) -> f64 {
    let r = unit_fraction(x);
    if r <= MERGE_TOLERANCE || r >= 1.0 - MERGE_TOLERANCE {
        1.0
    } else {
        r
    }
}

/// Distinct residues of the atom positions, clustered within
/// [`MERGE_TOLERANCE`]; unfolded, sorted, in `(0, 1]`.
pub(crate) fn unfolded_classes(m: &AtomicEvenMeasure) -> Vec<f64> {
    let mut residues: Vec<f64> = m.atoms.iter().map(|p| residue_of(p.0)).collect();
    residues.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::new();
    for r in residues {
        if out.last().is_none_or(|&last| r - last > MERGE_TOLERANCE) {
            out.push(r);
        }
    }
    out
}

pub fn detect_progressions(m: &AtomicEvenMeasure) -> Result<ProgressionSupport> {
    detect_progressions_bounded(m, MAX_CLASSES)
}

pub fn detect_progressions_bounded(
    m: &AtomicEvenMeasure,
    bound: usize,
) -> Result<ProgressionSupport> {
    let mut folded: Vec<f64> = unfolded_classes(m)
        .into_iter()
        .map(|r| if r == 1.0 { 1.0 } else { r.min(1.0 - r) })
        .collect();
    folded.sort_by(f64::total_cmp);
    let mut residues: Vec<f64> = Vec::new();
    for r in folded {
        if residues
            .last()
            .is_none_or(|&last| r - last > MERGE_TOLERANCE)
        {
            residues.push(r);
        }
    }
    if residues.len() > bound {
        return Err(Error::TooManyClasses {
            found: residues.len(),
            bound,
        });
    }
    Ok(ProgressionSupport { residues })
}

/// `F(sum c T(d,e)) = sum c T(-e,d)`, reduced and merged.
pub fn fourier_measure(dec: &TdeDecomposition) -> TdeDecomposition {
    TdeDecomposition::new(dec.terms.iter().map(|t| {
        let r = fourier_map(t.d, t.e);
        TdeTerm {
            d: r.params.d,
            e: r.params.e,
            coefficient: t.coefficient * r.phase,
        }
    }))
}

/// `|<D, t^{-1/2} psi_{1/t}> - <F D, psi_t>|` with `psi_t(x) = exp(-pi t x^2)`,
/// both pairings summed over the atoms in `[-window, window]`.
pub fn gaussian_pairing_check(dec: &TdeDecomposition, t: f64, window: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(domain(format!(
            "gaussian_pairing_check: t = {t} must be positive"
        )));
    }
    let w2 = window * window;
    let tail = (-std::f64::consts::PI * w2 * t.min(1.0 / t)).exp();
    if tail.is_nan() || tail >= 1e-16 {
        return Err(domain(format!(
            "window {window} is too small for t = {t}: Gaussian tail {tail:e} exceeds 1e-16"
        )));
    }
    let left = pair_with_gaussian(&expand_window(dec, window)?, 1.0 / t) / t.sqrt();
    let right = pair_with_gaussian(&expand_window(&fourier_measure(dec), window)?, t);
    Ok((left - right).norm())
}

/// `<m, psi_t>` for the even measure `m`.
pub fn pair_with_gaussian(m: &AtomicEvenMeasure, t: f64) -> Complex64 {
    let atoms: Complex64 = m
        .atoms
        .iter()
        .rev()
        .map(|&(x, a)| a * (-std::f64::consts::PI * t * x * x).exp())
        .sum();
    m.origin + atoms * 2.0
}

/// `sum_n a_n x_n^{-s}`; the origin atom is ignored.
pub fn mellin_of_measure(m: &AtomicEvenMeasure, s: Complex64) -> Complex64 {
    m.atoms
        .iter()
        .rev()
        .map(|&(x, a)| a * real_pow(x, -s))
        .sum()
}

/// Applies `prod_j (tau - e^{2 pi i r_j})`, over the full-line classes
/// `r_j = +-d_j` of `support`, to the coefficient sequence of every residue
/// class of `m` and returns the largest resulting term.
pub fn annihilator_residual(
    m: &AtomicEvenMeasure,
    support: &ProgressionSupport,
    window: f64,
) -> f64 {
    let mut roots: Vec<f64> = Vec::new();
    for &d in &support.residues {
        for r in [residue_of(d), residue_of(-d)] {
            if !roots.iter().any(|&q| (q - r).abs() <= MERGE_TOLERANCE) {
                roots.push(r);
            }
        }
    }
    // coefficients of prod (z - w_j), lowest degree first
    let mut poly = vec![Complex64::new(1.0, 0.0)];
    for &r in &roots {
        let w = cis_turns(r);
        let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
        for (j, &a) in poly.iter().enumerate() {
            next[j + 1] += a;
            next[j] -= a * w;
        }
        poly = next;
    }
    let mut worst: f64 = 0.0;
    for r in unfolded_classes(m) {
        let sequence = class_sequence(m, r, window);
        if sequence.len() < poly.len() {
            continue;
        }
        for p in 0..=sequence.len() - poly.len() {
            let value: Complex64 = poly
                .iter()
                .enumerate()
                .map(|(j, &a)| a * sequence[p + j])
                .sum();
            worst = worst.max(value.norm());
        }
    }
    worst
}

/// Coefficients at `r, r + 1, ...` up to the window.
pub(crate) fn class_sequence(m: &AtomicEvenMeasure, r: f64, window: f64) -> Vec<Complex64> {
    let count = ((window - r + MERGE_TOLERANCE).floor() + 1.0).max(0.0) as usize;
    (0..count).map(|p| m.mass_at(r + p as f64)).collect()
}

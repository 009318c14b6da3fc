//! Named verification suites. Every suite runs a fixed number of checks; the
//! randomized ones draw their fixtures from [`SplitMix64`] seeded by the caller.

mod rng;

pub use rng::SplitMix64;

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dirichlet::{
    combo_g, estimate_support_gap, recover_shift_coefficients, zeta_shift_g, ZetaShiftCombination,
};
use crate::error::{Error, Result};
use crate::measures::{
    annihilator_residual, decompose_prony, detect_progressions, expand_window, fourier_measure,
    gaussian_pairing_check, TdeDecomposition, TdeTerm,
};
use crate::specfun::{
    bernoulli_periodic, chi, chi_flagged, riemann_zeta, riemann_zeta_with, theta, EulerMaclaurin,
};
use crate::tde::{completed_residues, reduce_params, tde_f, tde_g};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub label: String,
    /// `null` in JSON when the check could not be evaluated.
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} (seed {}, {} checks)",
            self.suite,
            self.seed,
            self.checks.len()
        )?;
        let width = self
            .checks
            .iter()
            .map(|c| c.label.len())
            .max()
            .unwrap_or(5)
            .max(5);
        writeln!(
            f,
            "  {:<width$}  {:>12}  {:>12}  result",
            "check", "max error", "tolerance"
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "  {:<width$}  {:>12.3e}  {:>12.3e}  {}",
                c.label,
                c.max_error,
                c.tolerance,
                if c.passed { "pass" } else { "FAIL" }
            )?;
            if let Some(note) = &c.note {
                writeln!(f, "  {:<width$}  {note}", "")?;
            }
        }
        write!(f, "{}", if self.passed() { "PASSED" } else { "FAILED" })
    }
}

/// Suite names with their fixed check counts.
pub const SUITES: &[(&str, usize)] = &[
    ("chi-reflection", 3),
    ("zeta-fe", 2),
    ("tde-fe-hurwitz", 3),
    ("tde-residues", 5),
    ("prony-roundtrip", 2),
    ("fourier-pairing", 5),
    ("theta", 2),
    ("bernoulli-fourier", 2),
    ("gk-asymptotics", 4),
    ("coefficient-recovery", 2),
    ("support-gap", 3),
];

pub fn run_suite(name: &str, seed: u64) -> Result<VerificationReport> {
    let mut rng = SplitMix64::new(seed);
    let mut checks = match name {
        "chi-reflection" => chi_reflection(&mut rng),
        "zeta-fe" => zeta_fe(&mut rng),
        "tde-fe-hurwitz" => tde_fe_hurwitz(&mut rng),
        "tde-residues" => tde_residues(),
        "prony-roundtrip" => prony_roundtrip(&mut rng),
        "fourier-pairing" => fourier_pairing(&mut rng),
        "theta" => theta_suite(),
        "bernoulli-fourier" => bernoulli_fourier(),
        "gk-asymptotics" => gk_asymptotics(&mut rng),
        "coefficient-recovery" => coefficient_recovery(&mut rng),
        "support-gap" => support_gap(),
        _ => return Err(Error::UnknownSuite(name.to_string())),
    };
    checks.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(VerificationReport {
        suite: name.to_string(),
        seed,
        checks,
    })
}

/// Worst error over a batch of fallible evaluations; the first failure turns
/// the check into an unevaluated one.
struct Tally {
    worst: f64,
    failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Self {
            worst: 0.0,
            failure: None,
        }
    }

    fn record(&mut self, value: Result<f64>) {
        match value {
            Ok(err) if err.is_nan() => {
                self.worst = f64::INFINITY;
                self.failure.get_or_insert_with(|| "NaN error".to_string());
            }
            Ok(err) => self.worst = self.worst.max(err),
            Err(e) => {
                self.worst = f64::INFINITY;
                self.failure.get_or_insert_with(|| e.to_string());
            }
        }
    }

    fn check(self, label: &str, tolerance: f64) -> Check {
        Check {
            label: label.to_string(),
            max_error: self.worst,
            tolerance,
            passed: self.worst <= tolerance,
            note: self.failure,
        }
    }
}

fn single(label: &str, value: Result<f64>, tolerance: f64) -> Check {
    let mut t = Tally::new();
    t.record(value);
    t.check(label, tolerance)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `|a - b| / max(1, |b|)`.
fn mixed(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// Random point of the box `Re s in [re_lo, re_hi]`, `|Im s| <= im_max`,
/// at least `0.05` from every integer.
fn box_point(rng: &mut SplitMix64, re_lo: f64, re_hi: f64, im_max: f64) -> Complex64 {
    loop {
        let s = c(rng.uniform(re_lo, re_hi), rng.uniform(-im_max, im_max));
        if (s - s.re.round()).norm() >= 0.05 {
            return s;
        }
    }
}

fn chi_reflection(rng: &mut SplitMix64) -> Vec<Check> {
    let mut product = Tally::new();
    for _ in 0..200 {
        let s = box_point(rng, -8.0, 9.0, 20.0);
        product.record((|| Ok((chi(s)? * chi(c(1.0, 0.0) - s)? - 1.0).norm()))());
    }
    vec![
        product.check("chi(s) chi(1-s) = 1, 200 points", 1e-11),
        single(
            "chi(1/2) = 1",
            chi(c(0.5, 0.0)).map(|v| (v - 1.0).norm()),
            1e-15,
        ),
        single(
            "chi(-1) = -1/(2 pi^2)",
            chi(c(-1.0, 0.0)).map(|v| (v + 1.0 / (2.0 * PI * PI)).norm()),
            1e-15,
        ),
    ]
}

fn zeta_fe(rng: &mut SplitMix64) -> Vec<Check> {
    let em = EulerMaclaurin::summation_only();
    let one = c(1.0, 0.0);
    let mut box_check = Tally::new();
    for _ in 0..200 {
        let s = box_point(rng, -8.0, 9.0, 20.0);
        box_check.record((|| {
            let lhs = riemann_zeta_with(s, &em)?;
            let factor = chi(s)?;
            let reflected = riemann_zeta_with(one - s, &em)?;
            Ok(fe_residual(lhs, factor, reflected))
        })());
    }
    let mut zeros = Tally::new();
    for n in [2.0, 4.0, 6.0] {
        zeros.record((|| {
            let s = c(-n, 0.0);
            let flagged = chi_flagged(s)?;
            let rhs = flagged.value * riemann_zeta_with(one - s, &em)?;
            if !flagged.trivial_zero || rhs != c(0.0, 0.0) {
                return Ok(f64::INFINITY);
            }
            Ok(riemann_zeta_with(s, &em)?.norm())
        })());
    }
    vec![
        box_check.check(
            "zeta(s) = chi(s) zeta(1-s), 200 points, normwise residual",
            1e-8,
        ),
        zeros.check(
            "trivial zeros -2, -4, -6 (exact zero on the chi side)",
            1e-8,
        ),
    ]
}

/// `|a - chi b| / (max(1, |a|) + |chi| max(1, |b|))` for the identity `a = chi b`.
///
/// Near `Re s = 9` the factor `|chi(s)|` reaches `2e4`, so a plain relative
/// error would mostly measure `chi` times the rounding error of `b`.
pub fn fe_residual(a: Complex64, chi: Complex64, b: Complex64) -> f64 {
    (a - chi * b).norm() / (a.norm().max(1.0) + chi.norm() * b.norm().max(1.0))
}

fn tde_fe_hurwitz(rng: &mut SplitMix64) -> Vec<Check> {
    let mut tallies = [Tally::new(), Tally::new(), Tally::new()];
    let ds = [0.2, 0.5, 0.8];
    for i in 0..50 {
        let s = box_point(rng, 2.0, 6.0, 10.0);
        let d = ds[i % 3];
        tallies[i % 3].record((|| {
            let lhs = tde_g(d, 1.0, s)?;
            let rhs = chi(s)? * tde_f(d, 1.0, c(1.0, 0.0) - s)?;
            Ok(mixed(lhs, rhs))
        })());
    }
    tallies
        .into_iter()
        .zip(ds)
        .map(|(t, d)| t.check(&format!("g(s) = chi(s) f(1-s), d = {d}, e = 1"), 1e-7))
        .collect()
}

fn tde_residues() -> Vec<Check> {
    let case = |d: f64, e: f64| {
        completed_residues(d, e).map(|r| {
            let at0 = (r.contour_at_0 - r.pole_at_0.unwrap_or_default()).norm();
            let at1 = (r.contour_at_1 - r.pole_at_1.unwrap_or_default()).norm();
            at0.max(at1)
        })
    };
    // T(1,1) has Mellin transform -zeta, so its residues are minus those of
    // the completed zeta function (-1 at 0, +1 at 1).
    let completed_zeta = completed_residues(1.0, 1.0).map(|r| {
        let a = (r.contour_at_0 - 1.0).norm();
        let b = (r.contour_at_1 + 1.0).norm();
        a.max(b)
    });
    vec![
        single("entire: (d, e) = (0.3, 0.7)", case(0.3, 0.7), 1e-6),
        single(
            "d integral: (1, 0.25), residue -e^{-i pi de} at 0",
            case(1.0, 0.25),
            1e-6,
        ),
        single(
            "e integral: (0.4, 1), residue e^{i pi de} at 1",
            case(0.4, 1.0),
            1e-6,
        ),
        single(
            "both integral: (2, 1), residues -+(-1)^{de}",
            case(2.0, 1.0),
            1e-6,
        ),
        single(
            "T(1,1) against completed zeta residues",
            completed_zeta,
            1e-6,
        ),
    ]
}

/// Torus distance between `(d1, e1)` and `+-(d2, e2)` modulo 1.
fn pair_distance(a: (f64, f64), b: (f64, f64)) -> f64 {
    let circ = |x: f64| (x - x.round()).abs();
    [1.0, -1.0]
        .iter()
        .map(|&sign| circ(a.0 - sign * b.0).hypot(circ(a.1 - sign * b.1)))
        .fold(f64::INFINITY, f64::min)
}

/// Up to `max_terms` canonical terms, pairwise separated (and separated from
/// the null pair `(1/2, 1/2)`) by `separation`, coefficients with modulus in
/// `[0.1, 1]`. About a third of the terms reuse an earlier residue class so
/// that several exponentials share a progression.
pub fn random_decomposition(
    rng: &mut SplitMix64,
    max_terms: usize,
    separation: f64,
) -> TdeDecomposition {
    let count = rng.integer(1, max_terms as i64) as usize;
    let mut pairs: Vec<(f64, f64)> = Vec::with_capacity(count);
    let mut terms = Vec::with_capacity(count);
    while pairs.len() < count {
        let d = if !pairs.is_empty() && rng.next_f64() < 1.0 / 3.0 {
            pairs[rng.integer(0, pairs.len() as i64 - 1) as usize].0
        } else {
            rng.uniform(0.0, 1.0)
        };
        let e = rng.uniform(0.0, 1.0);
        let canon = reduce_params(d, e).params;
        let pair = (canon.d, canon.e);
        if pair_distance(pair, (0.5, 0.5)) < separation
            || pairs.iter().any(|&p| pair_distance(p, pair) < separation)
        {
            continue;
        }
        let modulus = rng.uniform(0.1, 1.0);
        let angle = rng.uniform(0.0, 2.0 * PI);
        pairs.push(pair);
        terms.push(TdeTerm {
            d: pair.0,
            e: pair.1,
            coefficient: Complex64::from_polar(modulus, angle),
        });
    }
    TdeDecomposition::new(terms)
}

/// Largest coefficient and parameter errors of `got` against `want`; a
/// missing or extra term counts as infinite error.
pub fn compare_decompositions(want: &TdeDecomposition, got: &TdeDecomposition) -> (f64, f64) {
    if want.len() != got.len() {
        return (f64::INFINITY, f64::INFINITY);
    }
    let mut coefficient: f64 = 0.0;
    let mut params: f64 = 0.0;
    for w in want.terms() {
        let nearest = got.terms().iter().min_by(|a, b| {
            let da = (a.d - w.d).abs().max((a.e - w.e).abs());
            let db = (b.d - w.d).abs().max((b.e - w.e).abs());
            da.total_cmp(&db)
        });
        match nearest {
            Some(g) if (g.d - w.d).abs().max((g.e - w.e).abs()) < 1e-6 => {
                params = params.max((g.d - w.d).abs().max((g.e - w.e).abs()));
                coefficient = coefficient.max((g.coefficient - w.coefficient).norm());
            }
            _ => return (f64::INFINITY, f64::INFINITY),
        }
    }
    (coefficient, params)
}

fn prony_roundtrip(rng: &mut SplitMix64) -> Vec<Check> {
    let window = 40.0;
    let mut coefficients = Tally::new();
    let mut params = Tally::new();
    for _ in 0..50 {
        let original = random_decomposition(rng, 4, 0.05);
        let result = expand_window(&original, window).and_then(|m| decompose_prony(&m, window));
        match result {
            Ok(got) => {
                let (ce, pe) = compare_decompositions(&original, &got);
                coefficients.record(Ok(ce));
                params.record(Ok(pe));
            }
            Err(e) => {
                coefficients.record(Err(e.clone()));
                params.record(Err(e));
            }
        }
    }
    vec![
        coefficients.check("coefficients, 50 decompositions, window 40", 1e-8),
        params.check("(d, e), 50 decompositions, window 40", 1e-9),
    ]
}

fn fourier_pairing(rng: &mut SplitMix64) -> Vec<Check> {
    let window = 12.0;
    let fixtures: Vec<TdeDecomposition> = (0..20)
        .map(|_| random_decomposition(rng, 4, 0.05))
        .collect();
    let mut checks = Vec::new();
    for t in [0.5, 1.0, 2.0] {
        let mut tally = Tally::new();
        for dec in &fixtures {
            tally.record(gaussian_pairing_check(dec, t, window));
        }
        checks.push(tally.check(&format!("pairing, 20 decompositions, t = {t}"), 1e-10));
    }
    let lattice = TdeDecomposition::new([TdeTerm {
        d: 1.0,
        e: 1.0,
        coefficient: c(-1.0, 0.0),
    }]);
    let mut jacobi = Tally::new();
    for t in [0.25, 0.5, 1.0, 2.0, 4.0] {
        jacobi.record(gaussian_pairing_check(&lattice, t, window));
    }
    checks.push(jacobi.check("lattice pairing: theta(1/t) = sqrt(t) theta(t)", 1e-13));

    let mut annihilator = Tally::new();
    for dec in &fixtures {
        annihilator.record((|| {
            let support = detect_progressions(&expand_window(dec, 30.0)?)?;
            let dual = expand_window(&fourier_measure(dec), 30.0)?;
            Ok(annihilator_residual(&dual, &support, 30.0))
        })());
    }
    checks.push(annihilator.check("annihilator of the support kills the dual sequences", 1e-10));
    checks
}

fn theta_suite() -> Vec<Check> {
    let mut jacobi = Tally::new();
    for t in [0.25, 0.5, 1.0, 2.0, 4.0] {
        jacobi.record((|| Ok((theta(1.0 / t)? - t.sqrt() * theta(t)?).abs()))());
    }
    let mut values = Tally::new();
    values.record(theta(1.0).map(|v| (v - 1.086_434_811_213_308_1).abs()));
    let four = 1.0 + 2.0 * (-4.0 * PI).exp() + 2.0 * (-16.0 * PI).exp();
    values.record(theta(4.0).map(|v| (v - four).abs()));
    vec![
        jacobi.check(
            "theta(1/t) = sqrt(t) theta(t), t in {1/4, 1/2, 1, 2, 4}",
            1e-13,
        ),
        values.check("theta(1), theta(4) reference values", 1e-13),
    ]
}

/// `B_{2n}({x}) = (-1)^{n+1} 2 (2n)! / (2 pi)^{2n} sum_{k >= 1} cos(2 pi k x) / k^{2n}`.
fn bernoulli_fourier() -> Vec<Check> {
    let terms = 10_000;
    let mut checks = Vec::new();
    for n in [1usize, 2] {
        let order = 2 * n;
        let factorial: f64 = (1..=order).map(|j| j as f64).product();
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        let scale = sign * 2.0 * factorial / (2.0 * PI).powi(order as i32);
        let mut tally = Tally::new();
        for j in 0..100 {
            let x = (j as f64 + 0.5) / 100.0;
            let series: f64 = (1..=terms)
                .rev()
                .map(|k| (2.0 * PI * k as f64 * x).cos() / (k as f64).powi(order as i32))
                .sum();
            tally.record(bernoulli_periodic(order, x).map(|b| (b - scale * series).abs()));
        }
        checks.push(tally.check(
            &format!("B_{order}({{x}}) vs 10^4-term cosine series, 100 midpoints"),
            1e-6,
        ));
    }
    checks
}

fn gk_asymptotics(rng: &mut SplitMix64) -> Vec<Check> {
    let ratio_at = |sigma: f64| {
        let mut tally = Tally::new();
        for k in -3..=3 {
            tally.record(zeta_shift_g(k, c(sigma, 0.0)).map(|g| {
                let model = (-4.0 * PI * PI).powi(-k) * sigma.powi(2 * k);
                (g.re / model - 1.0).abs()
            }));
        }
        tally
    };
    let mut signs = Tally::new();
    for k in -3..=3 {
        signs.record(zeta_shift_g(k, c(200.0, 0.0)).map(|g| {
            let want = if k % 2 == 0 { 1.0 } else { -1.0 };
            if g.re.signum() == want {
                0.0
            } else {
                1.0
            }
        }));
    }
    let mut dual = Tally::new();
    for _ in 0..50 {
        let s = c(rng.uniform(3.0, 12.0), rng.uniform(-10.0, 10.0));
        for k in -4..=4 {
            dual.record((|| {
                let rhs = chi(s)? * riemann_zeta(c(1.0, 0.0) - s - 2.0 * k as f64)?;
                Ok(mixed(zeta_shift_g(k, s)?, rhs))
            })());
        }
    }
    vec![
        ratio_at(200.0).check(
            "|g_k / ((-4 pi^2)^-k sigma^2k) - 1| at sigma = 200, |k| <= 3",
            0.05,
        ),
        ratio_at(2000.0).check(
            "|g_k / ((-4 pi^2)^-k sigma^2k) - 1| at sigma = 2000, |k| <= 3",
            0.05,
        ),
        signs.check("sign of g_k(200) is (-1)^k", 0.0),
        dual.check("g_k(s) = chi(s) zeta(1-s-2k), |k| <= 4, 50 points", 1e-8),
    ]
}

fn coefficient_recovery(rng: &mut SplitMix64) -> Vec<Check> {
    let sigmas: Vec<f64> = (5..=20).map(|n| 2.0 * n as f64).collect();
    let synthesize = |combo: &ZetaShiftCombination| -> Result<Vec<(f64, Complex64)>> {
        sigmas
            .iter()
            .map(|&x| Ok((x, combo_g(combo, c(x, 0.0))?)))
            .collect()
    };
    let mut random = Tally::new();
    for _ in 0..20 {
        let mut combo = ZetaShiftCombination::new();
        let count = rng.integer(1, 4);
        for _ in 0..count {
            let k = rng.integer(-3, 3) as i32;
            let r = rng.next_f64().sqrt();
            combo = combo.with(k, Complex64::from_polar(r, rng.uniform(0.0, 2.0 * PI)));
        }
        random.record((|| {
            let fit = recover_shift_coefficients(&synthesize(&combo)?, -3, 3)?;
            let mut worst: f64 = 0.0;
            for k in -3..=3 {
                worst = worst.max((fit.combination.get(k) - combo.get(k)).norm());
            }
            Ok(worst)
        })());
    }
    let constant = c(1.7, -0.4);
    let limit = (|| {
        let combo = ZetaShiftCombination::new().with(0, constant);
        let fit = recover_shift_coefficients(&synthesize(&combo)?, -3, 3)?;
        let keys: Vec<i32> = fit.combination.coefficients.keys().copied().collect();
        if keys != [0] {
            return Ok(f64::INFINITY);
        }
        Ok((fit.combination.get(0) - constant).norm())
    })();
    vec![
        random.check("random combinations, |k| <= 3, 20 fixtures", 1e-7),
        single("constant limit g -> c gives exactly {0: c}", limit, 1e-10),
    ]
}

fn support_gap() -> Vec<Check> {
    let sigmas: Vec<f64> = (4..=20).map(|n| 5.0 * n as f64).collect();
    let exact =
        estimate_support_gap(|x| Ok(c(2f64.powf(-x), 0.0)), &sigmas).map(|y| (y - 2.0).abs());
    let zeta = estimate_support_gap(|x| riemann_zeta(c(x, 0.0)), &sigmas).map(|y| (y - 1.0).abs());
    let tde =
        estimate_support_gap(|x| tde_g(0.3, 0.2, c(x, 0.0)), &sigmas).map(|y| (y - 0.2).abs());
    vec![
        single("g = 2^-sigma gives Y0 = 2", exact, 1e-6),
        single("g = zeta gives Y0 = 1", zeta, 1e-3),
        single("g = tde_g(0.3, 0.2) gives Y0 = 0.2", tde, 5e-2),
    ]
}

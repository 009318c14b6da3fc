//! JSON forms of measures and decompositions.
//!
//! Measure: `{"atoms":[{"x":..,"re":..,"im":..}],"origin":{"re":..,"im":..}}`.
//! Decomposition: `{"terms":[{"d":..,"e":..,"re":..,"im":..}]}`.
//! Numbers are written in shortest round-trip form, so reading back what was
//! written reproduces every double exactly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dirichlet::{GeneralizedDirichletSeries, ShiftFit};
use crate::error::Result;
use crate::measures::{AtomicEvenMeasure, TdeDecomposition, TdeTerm};

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
struct ComplexJson {
    re: f64,
    im: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct AtomJson {
    x: f64,
    re: f64,
    im: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct MeasureJson {
    atoms: Vec<AtomJson>,
    #[serde(default)]
    origin: ComplexJson,
}

#[derive(Debug, Serialize, Deserialize)]
struct TermJson {
    d: f64,
    e: f64,
    re: f64,
    im: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct DecompositionJson {
    terms: Vec<TermJson>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SeriesTermJson {
    lambda: f64,
    re: f64,
    im: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct SeriesJson {
    terms: Vec<SeriesTermJson>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SampleJson {
    sigma: f64,
    re: f64,
    im: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct SamplesJson {
    samples: Vec<SampleJson>,
}

#[derive(Debug, Serialize)]
struct ShiftCoefficientJson {
    k: i32,
    re: f64,
    im: f64,
}

#[derive(Debug, Serialize)]
struct ShiftFitJson {
    coefficients: Vec<ShiftCoefficientJson>,
    residual: f64,
    condition: f64,
}

/// Malformed JSON, or JSON that does not describe a valid object.
#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] crate::Error),
}

pub fn measure_to_json(m: &AtomicEvenMeasure) -> String {
    let doc = MeasureJson {
        atoms: m
            .atoms()
            .iter()
            .map(|&(x, a)| AtomJson {
                x,
                re: a.re,
                im: a.im,
            })
            .collect(),
        origin: ComplexJson {
            re: m.origin().re,
            im: m.origin().im,
        },
    };
    serde_json::to_string_pretty(&doc).expect("finite values serialize")
}

pub fn measure_from_json(text: &str) -> std::result::Result<AtomicEvenMeasure, FormatError> {
    let doc: MeasureJson = serde_json::from_str(text)?;
    let atoms = doc
        .atoms
        .into_iter()
        .map(|a| (a.x, Complex64::new(a.re, a.im)))
        .collect();
    let m: Result<_> = AtomicEvenMeasure::new(atoms, Complex64::new(doc.origin.re, doc.origin.im));
    Ok(m?)
}

pub fn decomposition_to_json(dec: &TdeDecomposition) -> String {
    let doc = DecompositionJson {
        terms: dec
            .terms()
            .iter()
            .map(|t| TermJson {
                d: t.d,
                e: t.e,
                re: t.coefficient.re,
                im: t.coefficient.im,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("finite values serialize")
}

/// Terms are reduced to canonical parameters on reading.
pub fn decomposition_from_json(text: &str) -> std::result::Result<TdeDecomposition, FormatError> {
    let doc: DecompositionJson = serde_json::from_str(text)?;
    for t in &doc.terms {
        if ![t.d, t.e, t.re, t.im].iter().all(|v| v.is_finite()) {
            return Err(crate::error::domain("decomposition term with non-finite value").into());
        }
    }
    Ok(TdeDecomposition::new(doc.terms.into_iter().map(|t| {
        TdeTerm {
            d: t.d,
            e: t.e,
            coefficient: Complex64::new(t.re, t.im),
        }
    })))
}

/// Series: `{"terms":[{"lambda":..,"re":..,"im":..}]}`.
pub fn series_to_json(series: &GeneralizedDirichletSeries) -> String {
    let doc = SeriesJson {
        terms: series
            .terms()
            .iter()
            .map(|&(lambda, a)| SeriesTermJson {
                lambda,
                re: a.re,
                im: a.im,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("finite values serialize")
}

pub fn series_from_json(
    text: &str,
) -> std::result::Result<GeneralizedDirichletSeries, FormatError> {
    let doc: SeriesJson = serde_json::from_str(text)?;
    let terms = doc
        .terms
        .into_iter()
        .map(|t| (t.lambda, Complex64::new(t.re, t.im)))
        .collect();
    Ok(GeneralizedDirichletSeries::new(terms)?)
}

/// Samples of `g` on the real axis: `{"samples":[{"sigma":..,"re":..,"im":..}]}`.
pub fn samples_from_json(text: &str) -> std::result::Result<Vec<(f64, Complex64)>, FormatError> {
    let doc: SamplesJson = serde_json::from_str(text)?;
    Ok(doc
        .samples
        .into_iter()
        .map(|p| (p.sigma, Complex64::new(p.re, p.im)))
        .collect())
}

/// `{"coefficients":[{"k":..,"re":..,"im":..}],"residual":..,"condition":..}`.
pub fn shift_fit_to_json(fit: &ShiftFit) -> String {
    let doc = ShiftFitJson {
        coefficients: fit
            .combination
            .coefficients
            .iter()
            .map(|(&k, c)| ShiftCoefficientJson {
                k,
                re: c.re,
                im: c.im,
            })
            .collect(),
        residual: fit.residual,
        condition: fit.condition,
    };
    serde_json::to_string_pretty(&doc).expect("finite values serialize")
}

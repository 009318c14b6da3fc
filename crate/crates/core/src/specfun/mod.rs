//! Complex special functions used throughout the crate.

pub mod bernoulli;
pub mod gamma;
pub mod lerch;
pub mod theta;
pub mod zeta;

use std::f64::consts::PI;

use num_complex::Complex64;

pub use bernoulli::{bernoulli_periodic, bernoulli_polynomial, bernoulli_table, BernoulliTable};
pub use gamma::{chi, chi_flagged, gamma, log_gamma, ChiValue};
pub use lerch::{class_sum, lerch_phi, lerch_sum, periodic_zeta};
pub use theta::theta;
pub use zeta::{hurwitz_zeta, hurwitz_zeta_with, riemann_zeta, riemann_zeta_with, EulerMaclaurin};

/// Radius around poles inside which evaluations are refused.
pub const POLE_GUARD: f64 = 1e-8;

/// `x^p = exp(p ln x)` for real `x > 0`.
pub fn real_pow(x: f64, p: Complex64) -> Complex64 {
    let l = x.ln();
    Complex64::from_polar((p.re * l).exp(), p.im * l)
}

/// `exp(2 pi i t)` with the argument reduced modulo 1 first.
pub fn cis_turns(t: f64) -> Complex64 {
    let r = t - t.round();
    Complex64::from_polar(1.0, 2.0 * PI * r)
}

/// Representative of `x mod 1` in `(0, 1]`.
pub fn unit_fraction(x: f64) -> f64 {
    let f = x - x.floor();
    if f == 0.0 {
        1.0
    } else {
        f
    }
}

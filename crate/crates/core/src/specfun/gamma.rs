//! Complex log-Gamma and the `chi` factor of the even functional equation.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::bernoulli::bernoulli_table;
use super::POLE_GUARD;
use crate::error::{Error, Result};

const STIRLING_SHIFT: f64 = 20.0;
const STIRLING_TERMS: usize = 10;
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Distance from `z` to the nearest nonpositive integer, when that integer is
/// the closest one on the real axis.
fn nonpositive_integer_distance(z: Complex64) -> f64 {
    let n = z.re.round();
    if n > 0.0 {
        return f64::INFINITY;
    }
    (z - Complex64::new(n, 0.0)).norm()
}

fn stirling(w: Complex64) -> Complex64 {
    let table = bernoulli_table();
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for k in 1..=STIRLING_TERMS {
        let b = table.get(2 * k).expect("table covers Stirling terms");
        series += pow * (b / ((2 * k) as f64 * (2 * k - 1) as f64));
        pow *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_TWO_PI + series
}

/// Principal branch of `log Gamma(z)`.
///
/// The Stirling series is evaluated at `z + n` with `Re(z + n) >= 20`; the
/// recursion `log Gamma(z) = log Gamma(z + n) - sum log(z + k)` with principal
/// logarithms keeps the result continuous off the negative real axis.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("log_gamma: non-finite argument {z}")));
    }
    if nonpositive_integer_distance(z) <= POLE_GUARD {
        return Err(Error::PoleProximity {
            function: "log_gamma",
            at: z,
            radius: POLE_GUARD,
        });
    }
    let shift = if z.re < STIRLING_SHIFT {
        (STIRLING_SHIFT - z.re).ceil() as usize
    } else {
        0
    };
    let mut correction = Complex64::new(0.0, 0.0);
    for k in 0..shift {
        correction += (z + k as f64).ln();
    }
    Ok(stirling(z + shift as f64) - correction)
}

/// `Gamma(z)` as `exp(log_gamma(z))`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    log_gamma(z).map(|l| l.exp())
}

/// Value of `chi(s)` together with the trivial-zero flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiValue {
    pub value: Complex64,
    /// `s` sits on a zero of `chi` (`s = 0, -2, -4, ...`); `value` is exactly 0.
    pub trivial_zero: bool,
}

/// `chi(s) = pi^(s - 1/2) Gamma((1 - s)/2) / Gamma(s/2)` with the zero flag.
pub fn chi_flagged(s: Complex64) -> Result<ChiValue> {
    let upper = (Complex64::new(1.0, 0.0) - s) * 0.5;
    let lower = s * 0.5;
    if nonpositive_integer_distance(upper) <= POLE_GUARD {
        return Err(Error::PoleProximity {
            function: "chi",
            at: s,
            radius: POLE_GUARD,
        });
    }
    if nonpositive_integer_distance(lower) <= POLE_GUARD {
        return Ok(ChiValue {
            value: Complex64::new(0.0, 0.0),
            trivial_zero: true,
        });
    }
    let log = (s - 0.5) * PI.ln() + log_gamma(upper)? - log_gamma(lower)?;
    Ok(ChiValue {
        value: log.exp(),
        trivial_zero: false,
    })
}

/// `chi(s)`; exactly zero at `s = 0, -2, -4, ...`.
pub fn chi(s: Complex64) -> Result<Complex64> {
    chi_flagged(s).map(|c| c.value)
}

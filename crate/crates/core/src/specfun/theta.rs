use std::f64::consts::PI;

use crate::error::{domain, Result};

/// Jacobi theta sum `theta(t) = sum_{n in Z} exp(-pi n^2 t)`, `t > 0`.
pub fn theta(t: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(domain(format!("theta: t = {t} must be positive")));
    }
    let mut tail = 0.0;
    let mut n = 1u64;
    loop {
        let term = (-PI * t * (n * n) as f64).exp();
        if term < 1e-17 {
            break;
        }
        tail += term;
        n += 1;
    }
    Ok(1.0 + 2.0 * tail)
}

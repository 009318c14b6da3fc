//! Bernoulli numbers and the 1-periodic Bernoulli functions.

use crate::error::{domain, Result};

/// Largest index kept in the table and accepted by [`bernoulli_periodic`].
pub const MAX_INDEX: usize = 40;

// B_0 ..= B_40 as exact rationals rounded once to f64 (B_1 = -1/2 convention).
static VALUES: [f64; MAX_INDEX + 1] = [
    1.0,
    -1.0 / 2.0,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
    0.0,
    -3617.0 / 510.0,
    0.0,
    43867.0 / 798.0,
    0.0,
    -174611.0 / 330.0,
    0.0,
    854513.0 / 138.0,
    0.0,
    -236364091.0 / 2730.0,
    0.0,
    8553103.0 / 6.0,
    0.0,
    -23749461029.0 / 870.0,
    0.0,
    8615841276005.0 / 14322.0,
    0.0,
    -7709321041217.0 / 510.0,
    0.0,
    2577687858367.0 / 6.0,
    0.0,
    -26315271553053477373.0 / 1919190.0,
    0.0,
    2929993913841559.0 / 6.0,
    0.0,
    -261082718496449122051.0 / 13530.0,
];

/// Immutable table of Bernoulli numbers `B_0 ..= B_40`.
#[derive(Debug, Clone, Copy)]
pub struct BernoulliTable {
    values: &'static [f64],
}

impl BernoulliTable {
    /// `B_n`, or `None` beyond the table.
    pub fn get(&self, n: usize) -> Option<f64> {
        self.values.get(n).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &'static [f64] {
        self.values
    }
}

/// The shared table.
pub fn bernoulli_table() -> BernoulliTable {
    BernoulliTable { values: &VALUES }
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// Bernoulli polynomial `B_n(y)` evaluated by Horner's rule on its
/// coefficients `C(n, k) B_k`.
pub fn bernoulli_polynomial(n: usize, y: f64) -> Result<f64> {
    if n > MAX_INDEX {
        return Err(domain(format!(
            "Bernoulli index {n} outside 0..={MAX_INDEX}"
        )));
    }
    // B_n(y) = sum_k C(n,k) B_k y^(n-k); Horner from the leading coefficient.
    let mut acc = 0.0;
    for (k, &b) in VALUES.iter().enumerate().take(n + 1) {
        acc = acc * y + binomial(n, k) * b;
    }
    Ok(acc)
}

/// `B_n({x})`: the Bernoulli polynomial composed with the fractional part.
pub fn bernoulli_periodic(n: usize, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(domain("bernoulli_periodic: non-finite argument"));
    }
    bernoulli_polynomial(n, x - x.floor())
}

//! Numerical companion to the converse theorems of Hamburger type for the
//! even functional equation `g(s) = chi(s) f(1 - s)`.
//!
//! The crate is organised by the objects that appear in that theory:
//!
//! * [`specfun`]: log-Gamma, the `chi` factor, Riemann/Hurwitz/periodic zeta,
//!   Lerch sums, periodic Bernoulli functions and the Jacobi theta sum.
//! * [`dirichlet`]: generalized Dirichlet series, the `zeta(s - 2k)` family and
//!   its duals `g_k`, least-squares coefficient recovery, the support-gap
//!   estimator.
//! * [`tde`]: the even distributions `T(d,e)`: parameter reduction, Mellin
//!   transforms, the Fourier rotation and the completed-function residues.
//! * [`measures`]: even atomic measures on unit-step progressions, Prony
//!   decomposition into the `T(d,e)` basis, Gaussian pairing checks.
//! * [`verify`]: named, seeded verification suites.
//! * [`cli`]: the command-line front end and its JSON/CSV formats.

pub mod cli;
pub mod dirichlet;
pub mod error;
pub mod measures;
pub mod specfun;
pub mod tde;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;

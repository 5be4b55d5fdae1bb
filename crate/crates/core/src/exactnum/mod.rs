//! Exact scalars and sparse exact linear algebra.
//!
//! Everything downstream works over the rationals (as a model of the complex
//! ground field) or over polynomials in the deformation parameter `hbar` with
//! rational coefficients. Nothing in this crate ever rounds.

mod coeff;
mod hpoly;
mod lin;
mod linalg;
mod rational;

pub use coeff::Coeff;
pub use hpoly::HPoly;
pub use lin::Lin;
pub use linalg::{kernel_basis, rank, rank_mod_p, solve, SparseMatrix, RANK_PRIME};
pub use rational::{fmt_rational, int, rat, Rational};

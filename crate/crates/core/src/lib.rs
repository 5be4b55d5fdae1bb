//! Exact computer algebra for the Yangian of `sl_n`.
//!
//! The crate builds the objects needed to check, by exact rational
//! computation, the identities behind the uniqueness of the homogeneous
//! quantization of the current Lie bialgebra `g[u]`:
//!
//! * [`exactnum`]: rationals, polynomials in `hbar`, sparse exact linear algebra;
//! * [`liealg`]: `sl_n` with root data, trace form and Casimir tensor;
//! * [`envelope`]: `U(g)` in PBW normal form, tensor powers and coproduct;
//! * [`current`]: the current algebra `g[u]` with its cobracket;
//! * [`freequant`]: the free quantization model generated by `I(x)`, `J(x)`;
//! * [`cohom`]: Chevalley–Eilenberg and cobar complexes, the bicomplex and
//!   the constructive solver for the correction of the degree-one lift;
//! * [`report`]: pass/fail reports shared by every verification suite.

pub mod cohom;
pub mod current;
pub mod envelope;
pub mod error;
pub mod exactnum;
pub mod fault;
pub mod freequant;
pub mod liealg;
pub mod report;

pub use cohom::{Bicomplex, Cochain, GModule};
pub use current::{CurrentAlgebra, CurrentElement, CurrentTensor};
pub use envelope::{Envelope, PbwMonomial, TensorElement, UElement};
pub use error::{Error, Result};
pub use exactnum::{HPoly, Lin, Rational, SparseMatrix};
pub use fault::Fault;
pub use freequant::{FmElement, FmTensor, FmWord, FreeModel};
pub use liealg::{LieAlgebraData, LieBasisIndex, LieElement};
pub use report::{Check, Report};

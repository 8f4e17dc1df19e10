//! Univariate polynomial kernels behind the binary-form routines: arithmetic
//! and factorization over F_p, and factorization of squarefree integer
//! polynomials by Hensel lifting.

pub mod fp;
pub mod zx;

pub use fp::FpPoly;

//! Arithmetic of finite point configurations on the projective line over
//! `Z_S`, binary forms with S-unit discriminant, nonabelian Galois
//! cohomology of finite groups, and orbit descent over finite fields.

pub mod cohomology;
pub mod descent;
pub mod error;
pub mod forms;
pub mod json;
pub mod linalg;
pub mod poly;
pub mod projective;
pub mod sarith;

pub use error::{Error, Result};
pub use forms::{BinaryForm, FormClass};
pub use projective::{PointConfig, ProjPoint, ProjPointModP, GL2ZS};
pub use sarith::{Factorization, SPrimeSet};

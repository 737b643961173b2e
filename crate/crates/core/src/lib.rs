//! Exact computations with quantum linear objects: graded quadratic
//! decompositions, the hom-algebras between them, PBW and confluence checks,
//! R-matrices and bialgebra structure.
//!
//! All arithmetic is over exact rationals.

pub mod bialgebra;
pub mod error;
pub mod graded;
pub mod hom;
pub mod linalg;
pub mod object;
pub mod pbw;
pub mod rewrite;
pub mod rmatrix;
pub mod sampling;

pub use bialgebra::ComposableTriple;
pub use error::{Error, Result};
pub use graded::GradedSpace;
pub use hom::{HomAlgebra, RelationSet};
pub use linalg::{Matrix, Scalar, Vector};
pub use object::{ObjectKind, Orientation, QuantumObject};
pub use pbw::PBWVerdict;
pub use rewrite::{Alphabet, NCPoly, RewriteSystem, Word};
pub use rmatrix::BMatrix;

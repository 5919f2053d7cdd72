//! Exact polynomial arithmetic over ℚ and 𝔽ₚ with a weighted grading, and
//! dense linear algebra over the coefficient field.

mod field;
mod graded;
mod linalg;
mod matrix;
mod parse;
mod poly;

pub use field::{FieldSpec, Scalar};
pub use graded::{graded_piece_basis, GradedRing, Monomial};
pub use linalg::{exact_solve, FieldMatrix, LinearSolution};
pub use matrix::PolyMatrix;
pub use parse::parse_poly;
pub use poly::{Homogeneity, Poly};

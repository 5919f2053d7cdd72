//! Matrix factorizations, their morphisms, and the triangulated operations
//! on them: shift, twist, direct sum, cone and base change.

mod base_change;
mod factorization;
mod morphism;

pub use base_change::{base_change, BaseChange};
pub use factorization::{FreeModule, Factorization, Grading, ValidityReport, Violation};
pub use morphism::{cone, cone_composite_homotopy, cone_inclusion, cone_projection, contractible_envelope, envelope_contraction, FactMorphism, Homotopy};

//! Exact arithmetic over GF(p^e) and dense linear algebra on top of it.

mod field;
mod matrix;

pub use field::{ArithError, FieldElement, FieldSpec};
pub use matrix::{ExactMatrix, RrefResult};

//! Exact graded-commutative algebras: group ring ⊗ polynomial ⊗ exterior ⊗ finite table.

mod generator;
mod signature;
mod table;

pub use generator::{GeneratorKind, GeneratorSpec, Side};
pub use signature::{constant_term, Element, Monomial, Signature, Window, WordFactor};
pub use table::TableAlgebra;

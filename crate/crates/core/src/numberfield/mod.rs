//! Number-field models of irreducible blocks and field-level predicates.

mod diag;
mod embed;
mod field;

pub use diag::{diagonalize_block, element_charpoly, NumberFieldAction};
pub use embed::{embeddings_between, eval_in};
pub use field::{is_root_of_unity, FieldElement, NumberField};

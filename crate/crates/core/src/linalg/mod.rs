//! Exact linear algebra over ℚ.

mod jordan;
mod matrix;
mod polys;
mod subspace;

pub use jordan::{commutant, jordan_chevalley, semisimple_part};
pub use matrix::QMatrix;
pub use polys::{charpoly, minpoly};
pub(crate) use subspace::unit;
pub use subspace::QSubspace;

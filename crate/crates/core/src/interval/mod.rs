//! Outward-rounded dyadic interval arithmetic, complex boxes, logarithms and
//! certified polynomial root isolation.

mod boxes;
mod dyadic;
mod real;
mod roots;

pub use boxes::CBox;
pub use dyadic::Dyadic;
pub use real::{ln2, Interval};
pub use roots::{isolate_roots, Root, RootSet};

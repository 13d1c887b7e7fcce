//! Exact structure, entropy and rigidity computations for ℤ^d-actions by
//! commuting rational matrices on solenoids.
//!
//! The crate is `no_std` (it needs `alloc`). All algebra is exact over ℚ;
//! the only approximate objects are outward-rounded dyadic intervals used
//! for archimedean absolute values, and every decision taken from them is
//! certified or reported as undecided.
//!
//! Layout, bottom up:
//!
//! * [`exact`]: rationals, univariate polynomials, factorization over ℚ,
//!   resultants, Newton polygons.
//! * [`interval`]: dyadic intervals, complex boxes, logarithms and certified
//!   root isolation.
//! * [`linalg`]: matrices and subspaces over ℚ, characteristic and minimal
//!   polynomials, Jordan–Chevalley, commutants.
//! * [`action`]: the action model, invariant flags and socles.
//! * [`numberfield`]: number-field diagonalization of irreducible blocks.
//! * [`weights`]: places, Lyapunov weights and coarse classes.
//! * [`entropy`]: Haar entropy, contributions and the κ ratio.
//! * [`classify`]: irreducibility, virtual cyclicity, comparison and
//!   symmetry groups.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod action;
pub mod classify;
mod config;
pub mod entropy;
mod error;
pub mod exact;
pub mod interval;
pub mod linalg;
pub mod numberfield;
pub mod weights;

pub use config::Config;
pub use error::{Error, Result};
pub use exact::{Rat, RatPoly};
pub use linalg::{QMatrix, QSubspace};

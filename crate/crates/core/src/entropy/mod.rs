//! Haar entropy of α^n, entropy contributions of coarse classes, the κ
//! ratio, linearity in n, and the shape identity on homogeneous measures.
//!
//! Entropies are in nats. For Haar measure the contribution of a set of
//! places S′ is Σ_{σ∈S′} δ_σ·log 1/|ζ_n|_σ, summed over the stable places.

mod haar;
mod shape;

pub use crate::weights::LogValue;
pub use haar::{
    block_entropy, entropy_contribution, entropy_linear_form, haar_entropy, kappa, EntropyReport,
    Kappa, LinearForm,
};
pub use shape::{
    homogeneous_entropy, sample_grid, shape_identity_report, HomogeneousMeasure, ShapeReport,
    ShapeRow,
};

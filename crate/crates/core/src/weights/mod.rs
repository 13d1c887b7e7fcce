//! Places, Lyapunov weights and coarse Lyapunov classes.
//!
//! For a block K = ℚ(θ) with multipliers ζ_j, every place σ gives a weight
//! χ_σ(n) = Σ n_j log|ζ_j|_σ. At a prime p the entries are −v_σ(ζ_j)·log p
//! with v_σ normalized by v(p) = 1, kept as exact rationals; at ∞ they are
//! certified intervals around log|g_j(z)|.

mod arch;
mod classes;
mod logvalue;
mod padic;
mod system;

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::exact::Rat;
use crate::interval::Interval;

pub(crate) use arch::field_roots;
pub use arch::{archimedean_weights, check_product_formula, is_unit_modulus, log_abs_at};
pub use classes::{
    coarse_classes, exposed_classes, Certainty, ClassPartition, CoarseClass, Exposure,
};
pub use logvalue::LogValue;
pub use padic::{bad_primes, block_primes, padic_weights, BadPlaceSet};
pub use system::{BlockData, Horospherical, WeightSystem};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    /// Root index into the block's isolated roots.
    Real {
        root: usize,
    },
    /// Upper member of a conjugate pair.
    Complex {
        root: usize,
    },
    Padic {
        prime: u64,
        cluster: usize,
    },
}

impl Place {
    pub fn is_archimedean(&self) -> bool {
        !matches!(self, Place::Padic { .. })
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            Place::Padic { prime, .. } => Some(*prime),
            _ => None,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real { root } => write!(f, "real place {}", root),
            Place::Complex { root } => write!(f, "complex place {}", root),
            Place::Padic { prime, cluster } => write!(f, "{}-adic cluster {}", prime, cluster),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entries {
    /// entry_j = c_j·log p.
    Padic { prime: u64, coeffs: Vec<Rat> },
    /// entry_j ∈ interval; exact zeros are certified |ζ_j|_σ = 1.
    Arch(Vec<Interval>),
}

/// One Lyapunov weight χ_σ of one block, with local degree δ(σ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    pub block: usize,
    pub place: Place,
    pub delta: usize,
    pub entries: Entries,
}

impl WeightVector {
    pub fn d(&self) -> usize {
        match &self.entries {
            Entries::Padic { coeffs, .. } => coeffs.len(),
            Entries::Arch(v) => v.len(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.entries, Entries::Padic { .. })
    }

    pub fn is_zero(&self) -> bool {
        match &self.entries {
            Entries::Padic { coeffs, .. } => coeffs.iter().all(|c| c.is_zero()),
            Entries::Arch(v) => v.iter().all(|i| i.is_exact_zero()),
        }
    }

    /// Enclosure of entry j.
    pub fn entry(&self, j: usize, prec: u32) -> Interval {
        match &self.entries {
            Entries::Padic { prime, coeffs } => {
                LogValue::log_prime(*prime, coeffs[j].clone()).to_interval(prec)
            }
            Entries::Arch(v) => v[j].clone(),
        }
    }

    /// Exact sign of entry j: −1, 0 or 1. Archimedean entries are built with
    /// certified signs.
    pub fn entry_sign(&self, j: usize) -> i8 {
        match &self.entries {
            Entries::Padic { coeffs, .. } => {
                if coeffs[j].is_zero() {
                    0
                } else if coeffs[j] > Rat::zero() {
                    1
                } else {
                    -1
                }
            }
            Entries::Arch(v) => {
                if v[j].is_exact_zero() {
                    0
                } else if v[j].is_positive() {
                    1
                } else {
                    debug_assert!(v[j].is_negative());
                    -1
                }
            }
        }
    }

    /// χ·n, exact for p-adic weights; for archimedean weights an interval
    /// whose sign is not yet certified (see [`WeightSystem::chi`]).
    pub fn dot(&self, n: &[i64], prec: u32) -> LogValue {
        match &self.entries {
            Entries::Padic { prime, coeffs } => {
                let c: Rat = coeffs
                    .iter()
                    .zip(n)
                    .map(|(c, &k)| c * Rat::from_integer(k.into()))
                    .sum();
                LogValue::log_prime(*prime, c)
            }
            Entries::Arch(v) => {
                let mut acc = Interval::zero();
                for (i, &k) in v.iter().zip(n) {
                    if k != 0 && !i.is_exact_zero() {
                        acc = (&acc + &i.mul_rat(&Rat::from_integer(k.into()), prec)).round(prec);
                    }
                }
                LogValue::from_interval(acc)
            }
        }
    }
}

//! Rigidity verdicts: total irreducibility, virtual cyclicity, pairwise
//! comparison of actions and finite symmetry groups.
//!
//! Every positive answer carries a witness that has been re-checked in exact
//! arithmetic; undecidable cases at the configured bounds come back as
//! [`Verdict::Unknown`] rather than as a guess.

mod compare;
mod cyclic;
pub mod lattice;
mod torsion;
mod total;

use core::fmt;

pub use compare::{
    compare, irreducible_factors, torsion_kernel, verify_joining, CommonFactor, ComparisonReport,
    Embedding, Piece, WeakIsomorphism,
};
pub use cyclic::{
    block_relations, has_virtually_cyclic_factor, virtually_cyclic, BlockRelations,
    CyclicityReport, FactorReport, RelationLattice,
};
pub use torsion::{commutant_torsion, TorsionGroup};
pub use total::{
    action_torsion_exponent, torsion_exponent, total_irreducibility, TotalIrreducibility,
};

/// Three-valued answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn is_decided(self) -> bool {
        self != Verdict::Unknown
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "true",
            Verdict::No => "false",
            Verdict::Unknown => "unknown",
        })
    }
}

//! The action model: d commuting invertible rational matrices, their
//! invariant flags with irreducible quotients, and socles.
//!
//! The generators act on ℚ^m (and on 𝔸^m); closed invariant subgroups of
//! the solenoid correspond to invariant rational subspaces, and algebraic
//! factors correspond to quotients. Irreducible factors are therefore the
//! socle of the transposed action.

mod flag;
mod irreducible;
mod sample;
mod socle;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::linalg::{QMatrix, QSubspace};
use crate::{Error, Result};

pub use flag::{invariant_flag, FlagDesignation, InvariantFlag};
pub use irreducible::{
    algebra_basis, find_invariant_subspace, is_irreducible, is_irreducible_seeded,
};
pub use sample::{height, random_action};
pub use socle::{socle_irreducibles, SocleFamily};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolenoidAction {
    generators: Vec<QMatrix>,
    m: usize,
    label: Option<String>,
}

impl SolenoidAction {
    /// Checks shapes only; see [`validate`] for commutation and
    /// invertibility.
    pub fn new(generators: Vec<QMatrix>, label: Option<String>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::InvalidAction("rank d must be at least 1".into()));
        };
        let m = first.rows();
        if m == 0 {
            return Err(Error::InvalidAction(
                "dimension m must be at least 1".into(),
            ));
        }
        for (j, g) in generators.iter().enumerate() {
            if g.rows() != m || g.cols() != m {
                return Err(Error::InvalidAction(format!(
                    "generator {} is {}x{}, expected {}x{}",
                    j + 1,
                    g.rows(),
                    g.cols(),
                    m,
                    m
                )));
            }
        }
        Ok(SolenoidAction {
            generators,
            m,
            label,
        })
    }

    /// Shape check plus [`validate`]; rejects invalid actions.
    pub fn checked(generators: Vec<QMatrix>, label: Option<String>) -> Result<Self> {
        let a = Self::new(generators, label)?;
        let v = validate(&a);
        match v.diagnostics.first() {
            None => Ok(a),
            Some(d) => Err(Error::InvalidAction(format!("{}", d))),
        }
    }

    pub fn d(&self) -> usize {
        self.generators.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn generators(&self) -> &[QMatrix] {
        &self.generators
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: Option<String>) -> Self {
        self.label = label;
        self
    }

    /// α^n = A_1^{n_1} ⋯ A_d^{n_d}.
    pub fn element(&self, n: &[i64]) -> Result<QMatrix> {
        if n.len() != self.d() {
            return Err(Error::Dimension(format!(
                "exponent vector of length {} for d = {}",
                n.len(),
                self.d()
            )));
        }
        let mut acc = QMatrix::identity(self.m);
        for (g, &e) in self.generators.iter().zip(n) {
            if e != 0 {
                acc = &acc * &g.pow(e)?;
            }
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> Self {
        SolenoidAction {
            generators: self.generators.iter().map(|g| g.transpose()).collect(),
            m: self.m,
            label: self.label.clone(),
        }
    }

    /// Action on an invariant subspace, in its echelon basis.
    pub fn restrict(&self, w: &QSubspace) -> Result<Self> {
        if w.ambient() != self.m || w.is_zero() {
            return Err(Error::InvalidArgument(
                "restriction needs a nonzero subspace of the right ambient".into(),
            ));
        }
        let gens: Option<Vec<QMatrix>> = self.generators.iter().map(|g| w.restrict(g)).collect();
        let gens = gens.ok_or_else(|| Error::NotInvariant("subspace is not invariant".into()))?;
        Ok(SolenoidAction {
            generators: gens,
            m: w.dim(),
            label: None,
        })
    }

    /// Induced action on ℚ^m / w in the echelon-lift basis.
    pub fn quotient(&self, w: &QSubspace) -> Result<Self> {
        if w.ambient() != self.m || w.is_full() {
            return Err(Error::InvalidArgument(
                "quotient needs a proper subspace".into(),
            ));
        }
        if !self.generators.iter().all(|g| w.is_invariant(g)) {
            return Err(Error::NotInvariant("subspace is not invariant".into()));
        }
        let gens = self
            .generators
            .iter()
            .map(|g| w.quotient_action(g))
            .collect();
        Ok(SolenoidAction {
            generators: gens,
            m: self.m - w.dim(),
            label: None,
        })
    }

    /// Restriction to the sublattice ⊕ M_j ℤ: generators A_j^{M_j}.
    pub fn restrict_lattice(&self, steps: &[u64]) -> Result<Self> {
        if steps.len() != self.d() || steps.contains(&0) {
            return Err(Error::InvalidArgument(
                "lattice steps must be d positive integers".into(),
            ));
        }
        let gens: Result<Vec<QMatrix>> = self
            .generators
            .iter()
            .zip(steps)
            .map(|(g, &s)| g.pow(s as i64))
            .collect();
        Ok(SolenoidAction {
            generators: gens?,
            m: self.m,
            label: None,
        })
    }

    /// Restriction to the sublattice spanned by the given vectors: one
    /// generator α^b per basis vector b.
    pub fn restrict_sublattice(&self, basis: &[Vec<i64>]) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::InvalidArgument(
                "sublattice needs at least one vector".into(),
            ));
        }
        let gens: Result<Vec<QMatrix>> = basis.iter().map(|b| self.element(b)).collect();
        Ok(SolenoidAction {
            generators: gens?,
            m: self.m,
            label: None,
        })
    }

    /// Diagonal product action on ℚ^{m1+m2}.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.d() != other.d() {
            return Err(Error::Dimension(
                "product of actions of different rank".into(),
            ));
        }
        let gens = self
            .generators
            .iter()
            .zip(&other.generators)
            .map(|(a, b)| QMatrix::block_diag(&[a, b]))
            .collect();
        Ok(SolenoidAction {
            generators: gens,
            m: self.m + other.m,
            label: None,
        })
    }
}

/// A violated requirement; generator indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    NonCommuting(usize, usize),
    Singular(usize),
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::NonCommuting(i, j) => {
                write!(f, "generators {} and {} do not commute", i, j)
            }
            Diagnostic::Singular(i) => write!(f, "generator {} is not invertible", i),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validation {
    pub diagnostics: Vec<Diagnostic>,
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        self.diagnostics.is_empty()
    }
}

/// Checks invertibility and pairwise commutation; never aborts.
pub fn validate(action: &SolenoidAction) -> Validation {
    let mut diagnostics = Vec::new();
    let g = action.generators();
    for (i, a) in g.iter().enumerate() {
        if a.det().map_or(true, |d| d.is_zero()) {
            diagnostics.push(Diagnostic::Singular(i + 1));
        }
    }
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            if !g[i].commutes_with(&g[j]) {
                diagnostics.push(Diagnostic::NonCommuting(i + 1, j + 1));
            }
        }
    }
    Validation { diagnostics }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::exact::rat;

    pub(crate) fn x2x3() -> SolenoidAction {
        SolenoidAction::new(
            alloc::vec![QMatrix::from_i64(&[&[2]]), QMatrix::from_i64(&[&[3]])],
            None,
        )
        .unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(validate(&x2x3()).is_ok());
        let a = SolenoidAction::new(
            alloc::vec![
                QMatrix::from_i64(&[&[0, 1], &[1, 0]]),
                QMatrix::from_i64(&[&[1, 1], &[0, 1]])
            ],
            None,
        )
        .unwrap();
        assert_eq!(
            validate(&a).diagnostics,
            alloc::vec![Diagnostic::NonCommuting(1, 2)]
        );
        let s =
            SolenoidAction::new(alloc::vec![QMatrix::from_i64(&[&[1, 2], &[2, 4]])], None).unwrap();
        assert_eq!(
            validate(&s).diagnostics,
            alloc::vec![Diagnostic::Singular(1)]
        );
        assert!(SolenoidAction::checked(s.generators().to_vec(), None).is_err());
        assert!(SolenoidAction::new(alloc::vec![QMatrix::from_i64(&[&[1, 2]])], None).is_err());
    }

    #[test]
    fn elements_and_products() {
        let a = x2x3();
        assert_eq!(
            a.element(&[1, -1]).unwrap(),
            QMatrix::scalar(1, crate::exact::frac(2, 3))
        );
        let p = a.product(&a).unwrap();
        assert_eq!(p.m(), 2);
        assert_eq!(p.element(&[1, 1]).unwrap(), QMatrix::scalar(2, rat(6)));
        assert_eq!(
            a.restrict_lattice(&[4, 1]).unwrap().generators()[0],
            QMatrix::scalar(1, rat(16))
        );
    }
}

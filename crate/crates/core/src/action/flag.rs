use alloc::vec::Vec;

use num_traits::Zero;

use super::irreducible::find_invariant_subspace;
use super::SolenoidAction;
use crate::exact::Rat;
use crate::linalg::{QMatrix, QSubspace};
use crate::{Error, Result};

/// {0} = V_0 < V_1 < … < V_r = ℚ^m, each V_i invariant, each V_i/V_{i−1}
/// irreducible.
///
/// `basis` is an adapted basis: its first dim V_i columns span V_i, and the
/// columns for step i are echelon lifts of the quotient basis. In this basis
/// every generator is block upper triangular with diagonal blocks equal to
/// `quotient_blocks`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFlag {
    pub subspaces: Vec<QSubspace>,
    pub quotient_blocks: Vec<Vec<QMatrix>>,
    pub basis: QMatrix,
}

/// Labels for a flag position: Y_irred is the quotient between
/// `subspaces[posfact]` and `subspaces[base]`, where base = posfact + 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlagDesignation {
    pub posfact: usize,
    pub base: usize,
}

impl FlagDesignation {
    /// Designates quotient block `block`.
    pub fn block(block: usize) -> Self {
        FlagDesignation {
            posfact: block,
            base: block + 1,
        }
    }

    pub fn irred_block(&self) -> usize {
        self.posfact
    }
}

impl InvariantFlag {
    /// Number of irreducible quotients r.
    pub fn len(&self) -> usize {
        self.quotient_blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotient_blocks.is_empty()
    }

    pub fn block_dims(&self) -> Vec<usize> {
        self.quotient_blocks.iter().map(|b| b[0].rows()).collect()
    }

    /// The irreducible action on V_{i+1}/V_i.
    pub fn block_action(&self, i: usize) -> SolenoidAction {
        SolenoidAction::new(self.quotient_blocks[i].clone(), None).expect("blocks are square")
    }

    /// Checks that P⁻¹·A_j·P is block upper triangular with the recorded
    /// diagonal blocks.
    pub fn reconstructs(&self, action: &SolenoidAction) -> bool {
        let Ok(pinv) = self.basis.inverse() else {
            return false;
        };
        let dims = self.block_dims();
        for (j, a) in action.generators().iter().enumerate() {
            let t = &(&pinv * a) * &self.basis;
            let mut off = 0;
            for (b, &k) in dims.iter().enumerate() {
                if t.submatrix(off, off + k, off, off + k) != self.quotient_blocks[b][j] {
                    return false;
                }
                // Nothing below the diagonal block.
                for i in off + k..t.rows() {
                    for c in off..off + k {
                        if !t.get(i, c).is_zero() {
                            return false;
                        }
                    }
                }
                off += k;
            }
        }
        true
    }

    /// Designation with Y_irred the first quotient whose restriction to the
    /// generators is not trivial on entropy grounds is chosen by callers;
    /// this helper only validates an index.
    pub fn designate(&self, block: usize) -> Result<FlagDesignation> {
        if block >= self.len() {
            return Err(Error::InvalidArgument("flag position out of range".into()));
        }
        Ok(FlagDesignation::block(block))
    }
}

/// Data for one step V_{i−1} ⊂ V_i: coordinates of V_{i−1} inside V_i's
/// echelon basis, and the restricted generators.
fn step_data(
    action: &SolenoidAction,
    lower: &QSubspace,
    upper: &QSubspace,
) -> (QSubspace, Vec<QMatrix>) {
    let inner: Vec<Vec<Rat>> = lower
        .basis()
        .iter()
        .map(|v| upper.coordinates(v).expect("nested"))
        .collect();
    let s = QSubspace::from_vectors(upper.dim(), &inner);
    let restricted = action
        .generators()
        .iter()
        .map(|g| upper.restrict(g).expect("invariant"))
        .collect();
    (s, restricted)
}

/// Builds an invariant flag by repeatedly splitting reducible quotients.
pub fn invariant_flag(action: &SolenoidAction, seed: u64) -> Result<InvariantFlag> {
    let m = action.m();
    let mut chain = alloc::vec![QSubspace::zero(m), QSubspace::full(m)];
    let mut i = 1;
    while i < chain.len() {
        let (s, restricted) = step_data(action, &chain[i - 1], &chain[i]);
        let quotient: Vec<QMatrix> = restricted.iter().map(|g| s.quotient_action(g)).collect();
        match find_invariant_subspace(&quotient, seed)? {
            None => i += 1,
            Some(w) => {
                // Lift quotient vectors: place coordinates at s's free columns,
                // then map V_i coordinates to ℚ^m.
                let free = s.free_columns();
                let upper_basis = chain[i].basis_matrix();
                let mut vs: Vec<Vec<Rat>> = chain[i - 1].basis().to_vec();
                for u in w.basis() {
                    let mut x = alloc::vec![Rat::zero(); chain[i].dim()];
                    for (k, &c) in free.iter().enumerate() {
                        x[c] = u[k].clone();
                    }
                    vs.push(upper_basis.apply(&x));
                }
                chain.insert(i, QSubspace::from_vectors(m, &vs));
            }
        }
    }
    let mut blocks = Vec::new();
    let mut cols: Vec<Vec<Rat>> = Vec::new();
    for i in 1..chain.len() {
        let (s, restricted) = step_data(action, &chain[i - 1], &chain[i]);
        blocks.push(restricted.iter().map(|g| s.quotient_action(g)).collect());
        for c in s.free_columns() {
            cols.push(chain[i].basis()[c].clone());
        }
    }
    let basis = QMatrix::from_columns(m, &cols);
    Ok(InvariantFlag {
        subspaces: chain,
        quotient_blocks: blocks,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use alloc::vec;

    #[test]
    fn triangular_example() {
        let a = SolenoidAction::new(vec![QMatrix::from_i64(&[&[2, 1], &[0, 3]])], None).unwrap();
        let f = invariant_flag(&a, 0).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(
            f.subspaces[1],
            QSubspace::from_vectors(2, &[vec![rat(1), rat(0)]])
        );
        assert_eq!(f.quotient_blocks[0][0], QMatrix::from_i64(&[&[2]]));
        assert_eq!(f.quotient_blocks[1][0], QMatrix::from_i64(&[&[3]]));
        assert!(f.reconstructs(&a));
    }

    #[test]
    fn irreducible_has_length_one() {
        let a = SolenoidAction::new(
            vec![
                QMatrix::from_i64(&[&[0, -2], &[2, 0]]),
                QMatrix::scalar(2, rat(3)),
            ],
            None,
        )
        .unwrap();
        let f = invariant_flag(&a, 0).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.block_dims(), vec![2]);
        assert!(f.reconstructs(&a));
    }

    #[test]
    fn mixed_blocks_reconstruct() {
        // companion(x²−2) and a Jordan block coupled through a corner.
        let mut a = QMatrix::zeros(4, 4);
        let c = QMatrix::companion(&crate::exact::RatPoly::from_ints(&[-2, 0, 1]));
        for i in 0..2 {
            for j in 0..2 {
                a.set(i, j, c.get(i, j).clone());
            }
        }
        a.set(2, 2, rat(3));
        a.set(2, 3, rat(1));
        a.set(3, 3, rat(3));
        a.set(0, 3, rat(5));
        let act = SolenoidAction::new(vec![a.clone(), &a * &a], None).unwrap();
        let f = invariant_flag(&act, 1).unwrap();
        let mut dims = f.block_dims();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 2]);
        assert!(f.reconstructs(&act));
        for w in &f.subspaces {
            assert!(w.is_invariant(&a));
        }
    }
}

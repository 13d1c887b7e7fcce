use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::irreducible::{algebra_basis, krylov};
use super::SolenoidAction;
use crate::exact::{factor_poly, Rat, RatPoly};
use crate::linalg::{minpoly, semisimple_part, QMatrix, QSubspace};
use crate::{Error, Result};

/// One isotypic component of the socle.
///
/// `representative` is a minimal invariant subspace inside `component`, and
/// `block` is the action restricted to it. When `multiplicity > 1`, `flag`
/// is a chain 0 < W_1 < … < W_k = component with each W_i a sum of i
/// minimal subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocleFamily {
    pub component: QSubspace,
    pub representative: QSubspace,
    pub block: SolenoidAction,
    pub multiplicity: usize,
    pub flag: Vec<QSubspace>,
    /// Minimal polynomial of the separating element on this component.
    pub factor: RatPoly,
}

/// Restricted generators on an invariant subspace.
fn restricted(gens: &[QMatrix], w: &QSubspace) -> Vec<QMatrix> {
    gens.iter()
        .map(|g| w.restrict(g).expect("invariant"))
        .collect()
}

/// An element of the (semisimple, commutative) algebra generated by `gens`
/// that generates it, so its minpoly separates all isotypic components.
fn primitive_element(gens: &[QMatrix], seed: u64) -> Result<QMatrix> {
    let a = algebra_basis(gens).len();
    let m = gens[0].rows();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for round in 0..64u32 {
        let bound = 8i64 << (round / 16);
        let mut g = QMatrix::zeros(m, m);
        for s in gens {
            let c: i64 = rng.gen_range(-bound..=bound);
            if c != 0 {
                g = &g + &s.scale(&Rat::from_integer(c.into()));
            }
        }
        if minpoly(&g)?.deg() == a {
            return Ok(g);
        }
    }
    Err(Error::Certification(
        "no separating element found for the socle".into(),
    ))
}

/// Minimal invariant subspaces grouped by isomorphism type.
///
/// The socle is the common kernel of the nilpotent parts A_j − S_j. On it
/// the algebra is a product of number fields; a primitive element g splits
/// the socle into isotypic components ker q_i(g).
pub fn socle_irreducibles(action: &SolenoidAction, seed: u64) -> Result<Vec<SocleFamily>> {
    let m = action.m();
    let mut socle = QSubspace::full(m);
    for a in action.generators() {
        let n = a - &semisimple_part(a)?;
        if !n.is_zero() {
            socle = socle.intersect(&QSubspace::kernel_of(&n));
        }
    }
    let on_socle = restricted(action.generators(), &socle);
    let g = primitive_element(&on_socle, seed)?;
    let basis = socle.basis_matrix();
    let lift = |v: &[Rat]| basis.apply(v);
    let mut families = Vec::new();
    for (q, _) in factor_poly(&minpoly(&g)?)?.factors {
        let k = q.deg();
        let local = QSubspace::kernel_of(&g.eval_poly(&q));
        let lift_space = |w: &QSubspace| {
            let vs: Vec<Vec<Rat>> = w.basis().iter().map(|v| lift(v)).collect();
            QSubspace::from_vectors(m, &vs)
        };
        let mut flag = Vec::new();
        let mut acc = QSubspace::zero(socle.dim());
        for v in local.basis() {
            if !acc.contains(v) {
                acc = acc.sum(&krylov(&g, v, k));
                flag.push(lift_space(&acc));
            }
        }
        let rep = lift_space(&krylov(&g, &local.basis()[0], k));
        let component = lift_space(&local);
        families.push(SocleFamily {
            block: action.restrict(&rep)?,
            multiplicity: component.dim() / k,
            representative: rep,
            component,
            flag,
            factor: q,
        });
    }
    families.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(families)
}

impl SocleFamily {
    pub fn dim(&self) -> usize {
        self.representative.dim()
    }
}

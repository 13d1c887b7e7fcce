use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::SolenoidAction;
use crate::exact::{cyclotomic, euler_phi, factor_poly, Rat, RatPoly};
use crate::linalg::{commutant, minpoly, semisimple_part, QMatrix, QSubspace};
use crate::numberfield::embeddings_between;
use crate::{Config, Error, Result};

/// Finite-order rational matrices commuting with the action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionGroup {
    /// Generators of a direct product of cyclic groups, with their orders.
    pub generators: Vec<(QMatrix, u64)>,
    pub order: u64,
    /// False when the commutant is not commutative and only its centre was
    /// searched.
    pub complete: bool,
    pub dimension: usize,
    pub note: String,
}

impl TorsionGroup {
    /// Enumerates the group (only sensible for small orders).
    pub fn elements(&self) -> Vec<QMatrix> {
        let m = self.generators.first().map_or(0, |(g, _)| g.rows());
        let mut out = alloc::vec![QMatrix::identity(m)];
        for (g, o) in &self.generators {
            let mut next = Vec::with_capacity(out.len() * *o as usize);
            for e in &out {
                let mut p = e.clone();
                for _ in 0..*o {
                    next.push(p.clone());
                    p = &p * g;
                }
            }
            out = next;
        }
        out
    }
}

fn is_commutative(basis: &[QMatrix]) -> bool {
    basis
        .iter()
        .enumerate()
        .all(|(i, a)| basis[i + 1..].iter().all(|b| a.commutes_with(b)))
}

/// Largest n such that Φ_n has a root in ℚ[x]/(q), with that root.
fn roots_of_unity(q: &RatPoly) -> Result<(u64, RatPoly)> {
    let k = q.deg() as u64;
    let mut best = (2u64, RatPoly::constant(-Rat::from_integer(1.into())));
    for n in 3..=(2 * k * k).max(6) {
        let phi = euler_phi(n);
        if phi > k || !k.is_multiple_of(phi) {
            continue;
        }
        if let Some(r) = embeddings_between(&cyclotomic(n), q)?.into_iter().next() {
            best = (n, r.poly().clone());
        }
    }
    Ok(best)
}

/// Torsion units of the commutant algebra.
///
/// The semisimple elements of a commutative matrix algebra form a product of
/// number fields ∏ L_i = ℚ[s] for a generic semisimple s. Torsion units
/// are semisimple, so the group is ∏ μ(L_i), each factor cyclic and
/// generated by a root of unity of L_i placed on its idempotent.
pub fn commutant_torsion(action: &SolenoidAction, cfg: &Config) -> Result<TorsionGroup> {
    let m = action.m();
    let mut basis = commutant(action.generators())?;
    let complete = is_commutative(&basis);
    if !complete {
        let mut all: Vec<QMatrix> = action.generators().to_vec();
        all.extend(basis.iter().cloned());
        basis = commutant(&all)?;
    }
    let n = basis.len();
    // Radical: the kernel of the trace form.
    let gram: Vec<Vec<Rat>> = basis
        .iter()
        .map(|a| basis.iter().map(|b| (a * b).trace()).collect())
        .collect();
    let rad = QSubspace::kernel_of(&QMatrix::from_rows(gram)?).dim();
    let target = n - rad;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x7041_7351);
    let mut found = None;
    for round in 0..96u32 {
        let bound = 4i64 << (round / 24);
        let mut g = QMatrix::zeros(m, m);
        for b in &basis {
            let c: i64 = rng.gen_range(-bound..=bound);
            if c != 0 {
                g = &g + &b.scale(&Rat::from_integer(c.into()));
            }
        }
        let s = semisimple_part(&g)?;
        let q = minpoly(&s)?;
        if q.deg() == target {
            found = Some((s, q));
            break;
        }
    }
    let (s, q) = found.ok_or_else(|| {
        Error::Certification("no generic semisimple element in the commutant".into())
    })?;
    let mut generators = Vec::new();
    let mut order = 1u64;
    let id = QMatrix::identity(m);
    for (qi, _) in factor_poly(&q)?.factors {
        // Idempotent e_i ≡ 1 mod q_i, ≡ 0 mod q/q_i.
        let rest = q.exact_div(&qi).expect("factor divides");
        let (_, u, _) = RatPoly::ext_gcd(&rest, &qi);
        let e = (&rest * &u).rem(&q);
        let ei = s.eval_poly(&e);
        let (w, r) = roots_of_unity(&qi)?;
        let gen = &(&s.eval_poly(&r) * &ei) + &(&id - &ei);
        if !action.generators().iter().all(|a| a.commutes_with(&gen))
            || !gen.pow(w as i64)?.is_identity()
        {
            return Err(Error::Certification(
                "torsion generator failed verification".into(),
            ));
        }
        order *= w;
        generators.push((gen, w));
    }
    let note = String::from(
        "affine extensions x ↦ γx + w with (A_j − I)w in the dual lattice are not enumerated; −Id + w is always present",
    );
    Ok(TorsionGroup {
        generators,
        order,
        complete,
        dimension: n,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::tests::x2x3;

    #[test]
    fn x2x3_has_only_sign() {
        let t = commutant_torsion(&x2x3(), &Config::default()).unwrap();
        assert_eq!(t.order, 2);
        let els = t.elements();
        assert!(els.contains(&QMatrix::from_i64(&[&[-1]])));
    }

    #[test]
    fn twisted_rotation() {
        let a = SolenoidAction::new(
            alloc::vec![
                QMatrix::from_i64(&[&[0, -2], &[2, 0]]),
                QMatrix::from_i64(&[&[3, 0], &[0, 3]])
            ],
            None,
        )
        .unwrap();
        let t = commutant_torsion(&a, &Config::default()).unwrap();
        assert_eq!(t.order, 4);
        let j = QMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        let els = t.elements();
        assert!(els.contains(&j));
        assert_eq!(&j * &j, QMatrix::scalar(2, -Rat::from_integer(1.into())));
    }

    #[test]
    fn split_diagonal() {
        // Commutant ℚ × ℚ: four sign matrices.
        let a =
            SolenoidAction::new(alloc::vec![QMatrix::from_i64(&[&[2, 0], &[0, 3]])], None).unwrap();
        let t = commutant_torsion(&a, &Config::default()).unwrap();
        assert_eq!(t.order, 4);
        assert!(t.complete);
    }

    #[test]
    fn sixth_roots() {
        // Companion of x² − x + 1 commutes with itself: μ(ℚ(ζ₆)) has order 6.
        let a = SolenoidAction::new(alloc::vec![QMatrix::from_i64(&[&[0, -1], &[1, 1]])], None)
            .unwrap();
        let t = commutant_torsion(&a, &Config::default()).unwrap();
        assert_eq!(t.order, 6);
    }
}

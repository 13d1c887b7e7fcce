use alloc::vec::Vec;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SolenoidAction;
use crate::exact::{factor_poly, Rat};
use crate::linalg::{minpoly, QMatrix, QSubspace};
use crate::{Error, Result};

/// Irreducibility with the default seed.
pub fn is_irreducible(action: &SolenoidAction) -> bool {
    is_irreducible_seeded(action, 0)
}

pub fn is_irreducible_seeded(action: &SolenoidAction, seed: u64) -> bool {
    matches!(find_invariant_subspace(action.generators(), seed), Ok(None))
}

enum Probe {
    Split(QSubspace),
    Irreducible,
    Inconclusive,
}

/// Looks at one element g of the algebra generated by the action.
fn probe(g: &QMatrix) -> Result<Probe> {
    let m = g.rows();
    let q = minpoly(g)?;
    let fz = factor_poly(&q)?;
    if fz.factors.len() == 1 && fz.factors[0].1 == 1 {
        return Ok(if q.deg() == m {
            Probe::Irreducible
        } else {
            Probe::Inconclusive
        });
    }
    // Kernels of polynomials in g are invariant under everything commuting
    // with g. Pick the smallest candidate, ties broken by echelon basis.
    let mut best: Option<QSubspace> = None;
    for (f, e) in &fz.factors {
        for pw in [1, *e] {
            let w = QSubspace::kernel_of(&g.eval_poly(&f.pow(pw as u32)));
            if !w.is_zero() && !w.is_full() && best.as_ref().is_none_or(|b| w < *b) {
                best = Some(w);
            }
        }
    }
    Ok(best.map_or(Probe::Inconclusive, Probe::Split))
}

fn combo(gens: &[QMatrix], c: &[Rat]) -> QMatrix {
    let m = gens[0].rows();
    let mut g = QMatrix::zeros(m, m);
    for (a, ci) in gens.iter().zip(c) {
        if !ci.is_zero() {
            g = &g + &a.scale(ci);
        }
    }
    g
}

/// Basis of the unital algebra generated by commuting matrices (closure of
/// monomials), as matrices.
pub fn algebra_basis(gens: &[QMatrix]) -> Vec<QMatrix> {
    let m = gens[0].rows();
    let mut space = QSubspace::from_vectors(m * m, &[QMatrix::identity(m).vectorize()]);
    let mut basis = alloc::vec![QMatrix::identity(m)];
    let mut frontier = basis.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for b in &frontier {
            for a in gens {
                let p = a * b;
                let v = p.vectorize();
                if !space.contains(&v) {
                    space = space.sum(&QSubspace::from_vectors(m * m, &[v]));
                    basis.push(p.clone());
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    basis
}

/// A proper nonzero subspace invariant under all generators, or None when
/// the action is irreducible. Deterministic given the seed.
pub fn find_invariant_subspace(gens: &[QMatrix], seed: u64) -> Result<Option<QSubspace>> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidArgument("no generators".into()));
    };
    let m = first.rows();
    if m == 1 {
        return Ok(None);
    }
    let d = gens.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..32 {
        let c: Vec<Rat> = loop {
            let c: Vec<i64> = (0..d).map(|_| rng.gen_range(-8..=8)).collect();
            if c.iter().any(|&x| x != 0) {
                break c.into_iter().map(|x| Rat::from_integer(x.into())).collect();
            }
        };
        match probe(&combo(gens, &c))? {
            Probe::Split(w) => return Ok(Some(w)),
            Probe::Irreducible => return Ok(None),
            Probe::Inconclusive => {}
        }
    }
    // Exact fallback on the full commutative algebra A generated by the action.
    for g in gens {
        match probe(g)? {
            Probe::Split(w) => return Ok(Some(w)),
            Probe::Irreducible => return Ok(None),
            Probe::Inconclusive => {}
        }
    }
    let basis = algebra_basis(gens);
    let a = basis.len();
    // If A is a field, g_c = Σ c^i b_i is primitive for all but at most
    // (a−1)·a(a−1)/2 values of c; otherwise some g_c has a reducible minpoly.
    let ladder = (a - 1) * (a - 1) * a / 2 + a * a + 1;
    for c in 1..=ladder as i64 {
        let cr = Rat::from_integer(c.into());
        let mut pw = Rat::from_integer(1.into());
        let mut coeffs = Vec::with_capacity(a);
        for _ in 0..a {
            coeffs.push(pw.clone());
            pw *= &cr;
        }
        let g = combo(&basis, &coeffs);
        let q = minpoly(&g)?;
        match probe(&g)? {
            Probe::Split(w) => return Ok(Some(w)),
            Probe::Irreducible => return Ok(None),
            Probe::Inconclusive if q.deg() == a => {
                // A = ℚ[g] is a field of degree a < m; A·e₁ is invariant.
                return Ok(Some(krylov(&g, &unit0(m), a)));
            }
            Probe::Inconclusive => {}
        }
    }
    Err(Error::Certification(
        "irreducibility ladder exhausted".into(),
    ))
}

fn unit0(m: usize) -> Vec<Rat> {
    let mut v = alloc::vec![Rat::zero(); m];
    v[0] = Rat::from_integer(1.into());
    v
}

/// span(v, g v, …, g^{k−1} v).
pub(crate) fn krylov(g: &QMatrix, v: &[Rat], k: usize) -> QSubspace {
    let mut vs = Vec::with_capacity(k);
    let mut cur = v.to_vec();
    for _ in 0..k {
        vs.push(cur.clone());
        cur = g.apply(&cur);
    }
    QSubspace::from_vectors(g.rows(), &vs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, RatPoly};

    fn act(gens: &[QMatrix]) -> SolenoidAction {
        SolenoidAction::new(gens.to_vec(), None).unwrap()
    }

    #[test]
    fn examples() {
        assert!(is_irreducible(&act(&[
            QMatrix::from_i64(&[&[2]]),
            QMatrix::from_i64(&[&[3]])
        ])));
        let c = QMatrix::companion(&RatPoly::from_ints(&[-2, 0, 1]));
        assert!(is_irreducible(&act(&[c])));
        let d = QMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert!(!is_irreducible(&act(core::slice::from_ref(&d))));
        let w = find_invariant_subspace(&[QMatrix::from_i64(&[&[2, 1], &[0, 3]])], 0)
            .unwrap()
            .unwrap();
        assert_eq!(
            w,
            QSubspace::from_vectors(2, &[alloc::vec![rat(1), rat(0)]])
        );
    }

    #[test]
    fn scalar_generators_need_the_fallback() {
        // Every element is scalar: minpolys have degree 1 < m, reducible.
        let s = QMatrix::scalar(3, rat(5));
        let w = find_invariant_subspace(&[s.clone(), s], 7)
            .unwrap()
            .unwrap();
        assert_eq!(w.dim(), 1);
    }

    #[test]
    fn field_of_smaller_degree() {
        // ℚ(i) acting diagonally on ℚ(i)²: minpolys x²+1 irreducible, degree 2 < 4.
        let j = QMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        let jj = QMatrix::block_diag(&[&j, &j]);
        let w = find_invariant_subspace(&[jj.clone(), QMatrix::scalar(4, rat(2))], 3)
            .unwrap()
            .unwrap();
        assert_eq!(w.dim(), 2);
        assert!(w.is_invariant(&jj));
    }

    #[test]
    fn algebra_dimension() {
        let a = QMatrix::from_i64(&[&[0, -2], &[2, 0]]);
        assert_eq!(algebra_basis(&[a, QMatrix::scalar(2, rat(3))]).len(), 2);
    }
}

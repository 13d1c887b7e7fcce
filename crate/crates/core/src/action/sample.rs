use alloc::vec::Vec;

use num_traits::{Signed, Zero};
use rand::Rng;

use super::SolenoidAction;
use crate::exact::{Rat, RatPoly};
use crate::linalg::QMatrix;

/// Largest |numerator| or denominator among the entries.
pub fn height(m: &QMatrix) -> u64 {
    use num_traits::ToPrimitive;
    m.entries()
        .iter()
        .map(|x| {
            x.numer()
                .abs()
                .max(x.denom().clone())
                .to_u64()
                .unwrap_or(u64::MAX)
        })
        .max()
        .unwrap_or(0)
}

fn random_poly<R: Rng>(rng: &mut R, deg: usize, c: i64) -> RatPoly {
    loop {
        let mut v: Vec<i64> = (0..deg).map(|_| rng.gen_range(-c..=c)).collect();
        v.push(1);
        if v[0] != 0 {
            return RatPoly::from_ints(&v);
        }
    }
}

const SCALES: [(i64, i64); 8] = [
    (1, 1),
    (1, 1),
    (2, 1),
    (1, 2),
    (3, 1),
    (1, 3),
    (3, 2),
    (2, 3),
];

/// A random action by d commuting invertible m × m rational matrices with
/// entries of height at most `height_bound`.
///
/// The generators are scaled polynomials in one matrix C, a block diagonal
/// of companion matrices, optionally conjugated by a unipotent upper
/// triangular matrix; reducible companions give non-semisimple actions.
pub fn random_action<R: Rng>(rng: &mut R, m: usize, d: usize, height_bound: u64) -> SolenoidAction {
    assert!(m >= 1 && d >= 1);
    loop {
        let mut blocks = Vec::new();
        let mut left = m;
        while left > 0 {
            let k = rng.gen_range(1..=left);
            blocks.push(QMatrix::companion(&random_poly(rng, k, 2)));
            left -= k;
        }
        let refs: Vec<&QMatrix> = blocks.iter().collect();
        let c = QMatrix::block_diag(&refs);
        let conj = if rng.gen_bool(0.3) {
            let mut u = QMatrix::identity(m);
            for i in 0..m {
                for j in i + 1..m {
                    if rng.gen_bool(0.3) {
                        u.set(i, j, Rat::from_integer(rng.gen_range(-1i64..=1).into()));
                    }
                }
            }
            Some(u)
        } else {
            None
        };
        let mut gens = Vec::with_capacity(d);
        for _ in 0..d {
            let deg = rng.gen_range(0..m.min(3));
            let g = random_poly(rng, deg, 1);
            let (p, q) = SCALES[rng.gen_range(0..SCALES.len())];
            let mut a = c.eval_poly(&g).scale(&Rat::new(p.into(), q.into()));
            if let Some(u) = &conj {
                a = &(u * &a) * &u.inverse().expect("unipotent");
            }
            gens.push(a);
        }
        if gens
            .iter()
            .any(|a| height(a) > height_bound || a.det().map_or(true, |x| x.is_zero()))
        {
            continue;
        }
        if let Ok(act) = SolenoidAction::checked(gens, None) {
            return act;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a = random_action(&mut rng, 4, 2, 20);
            assert!(super::super::validate(&a).is_ok());
            assert!(a.generators().iter().all(|g| height(g) <= 20));
        }
    }
}

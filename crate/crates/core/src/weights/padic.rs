use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Entries, Place, WeightVector};
use crate::action::SolenoidAction;
use crate::exact::{factor_integer, newton_polygon, Rat};
use crate::numberfield::NumberFieldAction;
use crate::{Error, Result};

/// Primes where some generator or inverse is not p-integral; ∞ is always
/// bad as well.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadPlaceSet {
    pub primes: Vec<u64>,
}

impl BadPlaceSet {
    pub fn always_includes_infinity(&self) -> bool {
        true
    }
}

fn denominator_primes<'a>(
    it: impl IntoIterator<Item = &'a Rat>,
    out: &mut BTreeSet<u64>,
) -> Result<()> {
    for r in it {
        if !r.denom().is_one() {
            let (_, mag) = r.denom().clone().into_parts();
            for (p, _) in factor_integer(&mag)? {
                out.insert(p);
            }
        }
    }
    Ok(())
}

pub fn bad_primes(action: &SolenoidAction) -> Result<BadPlaceSet> {
    let mut set = BTreeSet::new();
    for a in action.generators() {
        denominator_primes(a.entries(), &mut set)?;
        denominator_primes(a.inverse()?.entries(), &mut set)?;
    }
    Ok(BadPlaceSet {
        primes: set.into_iter().collect(),
    })
}

/// Primes at which some ζ_j is not a unit at some place: those dividing a
/// denominator of charpoly(ζ_j) or charpoly(ζ_j⁻¹).
pub fn block_primes(nf: &NumberFieldAction) -> Result<Vec<u64>> {
    let mut set = BTreeSet::new();
    for j in 0..nf.d() {
        let z = nf.zeta(j);
        denominator_primes(z.charpoly().coeffs(), &mut set)?;
        denominator_primes(z.inv()?.charpoly().coeffs(), &mut set)?;
    }
    Ok(set.into_iter().collect())
}

fn root_valuations(nf: &NumberFieldAction, n: &[i64], p: u64) -> Result<Vec<Rat>> {
    Ok(newton_polygon(&nf.element_charpoly(n)?, p)?.root_valuations())
}

fn sorted(mut v: Vec<Rat>) -> Vec<Rat> {
    v.sort();
    v
}

/// Is Σ n_j c_j injective on the grid ∏ S_j? Returns the value → tuple map.
fn decoder(sets: &[Vec<Rat>], n: &[i64]) -> Option<BTreeMap<Rat, Vec<Rat>>> {
    let mut map = BTreeMap::new();
    let mut idx = alloc::vec![0usize; sets.len()];
    loop {
        let t: Vec<Rat> = idx.iter().zip(sets).map(|(&i, s)| s[i].clone()).collect();
        let v: Rat = t
            .iter()
            .zip(n)
            .map(|(c, &k)| c * Rat::from_integer(k.into()))
            .sum();
        if map.insert(v, t).is_some() {
            return None;
        }
        let mut j = 0;
        loop {
            if j == sets.len() {
                return Some(map);
            }
            idx[j] += 1;
            if idx[j] < sets[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Joint valuation vectors (v(τζ_1), …, v(τζ_d)) over all embeddings τ of K
/// into an algebraic closure of ℚ_p, grouped into clusters of equal vectors.
///
/// Marginals come from Newton polygons of charpoly(ζ_j). They are joined
/// by one more polygon along a direction n* on which the pairing is
/// injective, then checked against the marginals.
pub(crate) fn padic_clusters(
    nf: &NumberFieldAction,
    p: u64,
    seed: u64,
) -> Result<Vec<(Vec<Rat>, usize)>> {
    let d = nf.d();
    let k = nf.degree();
    let marginals: Vec<Vec<Rat>> = (0..d)
        .map(|j| root_valuations(nf, &unit_vec(d, j), p).map(sorted))
        .collect::<Result<_>>()?;
    let sets: Vec<Vec<Rat>> = marginals
        .iter()
        .map(|m| {
            let mut s = m.clone();
            s.dedup();
            s
        })
        .collect();
    let try_dir = |n: &[i64]| -> Result<Option<Vec<Vec<Rat>>>> {
        let Some(dec) = decoder(&sets, n) else {
            return Ok(None);
        };
        let vals = root_valuations(nf, n, p)?;
        let mut joint = Vec::with_capacity(k);
        for v in &vals {
            match dec.get(v) {
                Some(t) => joint.push(t.clone()),
                None => return Ok(None),
            }
        }
        for j in 0..d {
            if sorted(joint.iter().map(|t| t[j].clone()).collect()) != marginals[j] {
                return Ok(None);
            }
        }
        Ok(Some(joint))
    };
    let mut joint = None;
    // Powers of B: the grid's digit ranges bound the smallest working B.
    let span: usize = sets.iter().map(|s| s.len()).max().unwrap_or(1);
    let denom = crate::exact::denom_lcm(sets.iter().flatten());
    let range = sets
        .iter()
        .map(|s| ((s.last().unwrap() - &s[0]) * Rat::from_integer(denom.clone())).to_integer())
        .max()
        .unwrap_or_default();
    let top = range
        .to_i64()
        .unwrap_or(i64::MAX / 4)
        .saturating_add(2)
        .max(2);
    if span == 1 {
        joint = try_dir(&alloc::vec![1; d])?;
    } else {
        for b in 2..=top {
            let n: Vec<i64> = (0..d as u32).map(|i| b.pow(i)).collect();
            if decoder(&sets, &n).is_some() {
                joint = try_dir(&n)?;
                break;
            }
        }
    }
    if joint.is_none() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p);
        for _ in 0..16 {
            let n: Vec<i64> = (0..d).map(|_| rng.gen_range(-6..=6)).collect();
            if let Some(j) = try_dir(&n)? {
                joint = Some(j);
                break;
            }
        }
    }
    let joint = joint.ok_or(Error::SeparationFailure(p))?;
    let mut clusters: BTreeMap<Vec<Rat>, usize> = BTreeMap::new();
    for t in joint {
        *clusters.entry(t).or_insert(0) += 1;
    }
    Ok(clusters.into_iter().collect())
}

fn unit_vec(d: usize, j: usize) -> Vec<i64> {
    let mut v = alloc::vec![0; d];
    v[j] = 1;
    v
}

/// p-adic weights of a block, one per cluster of equal valuation vectors.
pub fn padic_weights(nf: &NumberFieldAction, p: u64) -> Result<Vec<WeightVector>> {
    padic_weights_seeded(nf, p, 0, 0)
}

pub(crate) fn padic_weights_seeded(
    nf: &NumberFieldAction,
    p: u64,
    block: usize,
    seed: u64,
) -> Result<Vec<WeightVector>> {
    Ok(padic_clusters(nf, p, seed)?
        .into_iter()
        .enumerate()
        .map(|(i, (v, delta))| WeightVector {
            block,
            place: Place::Padic {
                prime: p,
                cluster: i,
            },
            delta,
            entries: Entries::Padic {
                prime: p,
                coeffs: v.into_iter().map(|x| -x).collect(),
            },
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat, RatPoly};
    use crate::linalg::QMatrix;
    use crate::numberfield::diagonalize_block;
    use alloc::vec;

    fn x2x3() -> NumberFieldAction {
        diagonalize_block(&[QMatrix::from_i64(&[&[2]]), QMatrix::from_i64(&[&[3]])], 0).unwrap()
    }

    #[test]
    fn bad_place_examples() {
        let a = SolenoidAction::new(
            vec![QMatrix::from_i64(&[&[2]]), QMatrix::from_i64(&[&[3]])],
            None,
        )
        .unwrap();
        assert_eq!(bad_primes(&a).unwrap().primes, vec![2, 3]);
        let cat = SolenoidAction::new(vec![QMatrix::from_i64(&[&[2, 1], &[1, 1]])], None).unwrap();
        assert!(bad_primes(&cat).unwrap().primes.is_empty());
        let a2 = SolenoidAction::new(
            vec![
                QMatrix::from_i64(&[&[0, -2], &[2, 0]]),
                QMatrix::scalar(2, rat(3)),
            ],
            None,
        )
        .unwrap();
        assert_eq!(bad_primes(&a2).unwrap().primes, vec![2, 3]);
    }

    #[test]
    fn rational_block_valuations() {
        let nf = x2x3();
        assert_eq!(block_primes(&nf).unwrap(), vec![2, 3]);
        let w2 = padic_weights(&nf, 2).unwrap();
        assert_eq!(w2.len(), 1);
        assert_eq!(w2[0].delta, 1);
        assert_eq!(
            w2[0].entries,
            Entries::Padic {
                prime: 2,
                coeffs: vec![rat(-1), rat(0)]
            }
        );
        let w3 = padic_weights(&nf, 3).unwrap();
        assert_eq!(
            w3[0].entries,
            Entries::Padic {
                prime: 3,
                coeffs: vec![rat(0), rat(-1)]
            }
        );
    }

    #[test]
    fn ramified_cluster() {
        let nf =
            diagonalize_block(&[QMatrix::companion(&RatPoly::from_ints(&[5, -5, 1]))], 0).unwrap();
        let w = padic_weights(&nf, 5).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].delta, 2);
        assert_eq!(
            w[0].entries,
            Entries::Padic {
                prime: 5,
                coeffs: vec![frac(-1, 2)]
            }
        );
    }

    #[test]
    fn joint_pairing_is_not_the_sorted_one() {
        // ζ_1 = (2+i)/(2−i) has valuations {+1, −1} at the two places over
        // 5, and ζ_2 = 2+i has {1, 0}; the pairing must match ζ_1's +1 with
        // ζ_2's 1 since ζ_1 = ζ_2²/5.
        let k = RatPoly::from_ints(&[1, 0, 1]);
        let nf_i = crate::numberfield::NumberField::new(&k).unwrap();
        let z2 = nf_i.element(&RatPoly::from_ints(&[2, 1]));
        let z1 = z2.mul(&z2).scale(&frac(1, 5));
        let block = [z1.mul_matrix(), z2.mul_matrix()];
        let nf = diagonalize_block(&block, 0).unwrap();
        let c = padic_clusters(&nf, 5, 0).unwrap();
        assert_eq!(
            c,
            vec![(vec![rat(-1), rat(0)], 1), (vec![rat(1), rat(1)], 1)]
        );
    }
}

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::{Entries, WeightVector};
use crate::exact::Rat;
use crate::interval::Interval;
use crate::linalg::QMatrix;

/// How a class was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certainty {
    /// Every merge inside the class was decided exactly.
    Exact,
    /// Some merge relied on interval minors at this many bits.
    Numeric { bits: u32 },
}

/// A positive-proportionality class [χ] of nonzero weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoarseClass {
    /// Indices into the weight list, ascending.
    pub members: Vec<usize>,
    pub certainty: Certainty,
    /// Set when two members could be neither separated nor proven
    /// proportional and were merged.
    pub undecided: bool,
}

impl CoarseClass {
    /// Σ δ over members: the dimension of W^{[χ]} over its local fields.
    pub fn delta(&self, weights: &[WeightVector]) -> usize {
        self.members.iter().map(|&m| weights[m].delta).sum()
    }

    /// Rational direction: a p-adic member's coefficients if there is one,
    /// else interval midpoints (see [`Self::has_exact_direction`]).
    pub fn direction(&self, weights: &[WeightVector]) -> Vec<Rat> {
        for &m in &self.members {
            if let Entries::Padic { coeffs, .. } = &weights[m].entries {
                return coeffs.clone();
            }
        }
        match &weights[self.members[0]].entries {
            Entries::Arch(v) => v
                .iter()
                .map(|i| {
                    if i.is_exact_zero() {
                        Rat::zero()
                    } else {
                        i.mid().to_rat()
                    }
                })
                .collect(),
            Entries::Padic { .. } => unreachable!(),
        }
    }

    pub fn has_exact_direction(&self, weights: &[WeightVector]) -> bool {
        self.members.iter().any(|&m| weights[m].is_exact())
    }
}

/// Nonzero weights partitioned into coarse classes, plus the zero weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPartition {
    pub classes: Vec<CoarseClass>,
    pub zero: Vec<usize>,
}

impl ClassPartition {
    pub fn class_of(&self, w: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.members.contains(&w))
    }

    pub fn has_undecided(&self) -> bool {
        self.classes.iter().any(|c| c.undecided)
    }
}

enum Relation {
    Distinct,
    Proportional { exact: bool },
    Undecided,
}

fn relation(a: &WeightVector, b: &WeightVector, prec: u32) -> Relation {
    let d = a.d();
    let mut support = Vec::new();
    for j in 0..d {
        let (sa, sb) = (a.entry_sign(j), b.entry_sign(j));
        if sa != sb {
            return Relation::Distinct;
        }
        if sa != 0 {
            support.push(j);
        }
    }
    if support.len() <= 1 {
        return Relation::Proportional { exact: true };
    }
    if let (Entries::Padic { coeffs: x, .. }, Entries::Padic { coeffs: y, .. }) =
        (&a.entries, &b.entries)
    {
        let i = support[0];
        let ok = support[1..].iter().all(|&j| &x[i] * &y[j] == &x[j] * &y[i]);
        return if ok {
            Relation::Proportional { exact: true }
        } else {
            Relation::Distinct
        };
    }
    let x: Vec<Interval> = (0..d).map(|j| a.entry(j, prec + 16)).collect();
    let y: Vec<Interval> = (0..d).map(|j| b.entry(j, prec + 16)).collect();
    for (k, &i) in support.iter().enumerate() {
        for &j in &support[k + 1..] {
            let minor = &x[i].mul(&y[j], prec + 16) - &x[j].mul(&y[i], prec + 16);
            if !minor.contains_zero() {
                return Relation::Distinct;
            }
        }
    }
    Relation::Undecided
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    let mut i = i;
    while parent[i] != r {
        let next = parent[i];
        parent[i] = r;
        i = next;
    }
    r
}

/// Groups nonzero weights by positive proportionality.
///
/// Pairs are compared exactly when both are p-adic (log p factors cancel
/// from each vector) and by sign pattern when at most one entry is nonzero;
/// otherwise by interval 2×2 minors. Pairs that cannot be separated are
/// merged and the class is marked undecided: splitting them could break the
/// direct-sum decomposition, merging cannot.
pub fn coarse_classes(weights: &[WeightVector], prec: u32) -> ClassPartition {
    let nz: Vec<usize> = (0..weights.len())
        .filter(|&i| !weights[i].is_zero())
        .collect();
    let zero: Vec<usize> = (0..weights.len())
        .filter(|&i| weights[i].is_zero())
        .collect();
    let n = weights.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut numeric = alloc::vec![false; n];
    let mut undecided = alloc::vec![false; n];
    for (k, &i) in nz.iter().enumerate() {
        for &j in &nz[k + 1..] {
            let (num, und) = match relation(&weights[i], &weights[j], prec) {
                Relation::Distinct => continue,
                Relation::Proportional { exact } => (!exact, false),
                Relation::Undecided => (true, true),
            };
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            let r = ri.min(rj);
            parent[ri] = r;
            parent[rj] = r;
            numeric[r] |= num || numeric[ri] || numeric[rj];
            undecided[r] |= und || undecided[ri] || undecided[rj];
        }
    }
    let mut classes: Vec<CoarseClass> = Vec::new();
    for &i in &nz {
        let r = find(&mut parent, i);
        if r == i {
            classes.push(CoarseClass {
                members: Vec::new(),
                certainty: if numeric[r] {
                    Certainty::Numeric { bits: prec }
                } else {
                    Certainty::Exact
                },
                undecided: undecided[r],
            });
        }
    }
    let roots: Vec<usize> = nz
        .iter()
        .copied()
        .filter(|&i| find(&mut parent, i) == i)
        .collect();
    for &i in &nz {
        let r = find(&mut parent, i);
        let c = roots.iter().position(|&x| x == r).unwrap();
        classes[c].members.push(i);
    }
    ClassPartition { classes, zero }
}

/// Whether one class of a set V is exposed in V.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exposure {
    pub class: usize,
    pub exposed: bool,
    /// False when some direction in V is only known numerically.
    pub exact: bool,
}

/// Is {y : r·y < 0 for all rows r} nonempty? Fourier–Motzkin on strict
/// homogeneous inequalities.
fn strict_feasible(mut rows: Vec<Vec<Rat>>, vars: usize) -> bool {
    for k in 0..vars {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r[k].is_zero() {
                rest.push(r);
            } else if r[k].is_positive() {
                pos.push(r);
            } else {
                neg.push(r);
            }
        }
        if !pos.is_empty() && !neg.is_empty() {
            for p in &pos {
                for q in &neg {
                    let (a, b) = (p[k].clone(), -q[k].clone());
                    let comb: Vec<Rat> = p.iter().zip(q).map(|(x, y)| x * &b + y * &a).collect();
                    rest.push(comb);
                }
            }
        }
        rest.sort();
        rest.dedup();
        rows = rest;
    }
    rows.is_empty()
}

/// For each class c in V: is there n′ with χ_c·n′ = 0 and χ′·n′ < 0 for
/// every other χ′ in V?
pub fn exposed_classes(
    weights: &[WeightVector],
    partition: &ClassPartition,
    v: &[usize],
) -> Vec<Exposure> {
    let dirs: Vec<Vec<Rat>> = v
        .iter()
        .map(|&c| partition.classes[c].direction(weights))
        .collect();
    let exact = v
        .iter()
        .all(|&c| partition.classes[c].has_exact_direction(weights));
    let mut out = Vec::new();
    for (i, &c) in v.iter().enumerate() {
        let ker = QMatrix::from_rows(alloc::vec![dirs[i].clone()])
            .expect("one row")
            .kernel();
        let rows: Vec<Vec<Rat>> = dirs
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, r)| {
                ker.iter()
                    .map(|kv| r.iter().zip(kv).map(|(a, b)| a * b).sum())
                    .collect()
            })
            .collect();
        out.push(Exposure {
            class: c,
            exposed: strict_feasible(rows, ker.len()),
            exact,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::weights::Place;
    use alloc::vec;

    fn padic(p: u64, c: &[i64]) -> WeightVector {
        WeightVector {
            block: 0,
            place: Place::Padic {
                prime: p,
                cluster: 0,
            },
            delta: 1,
            entries: Entries::Padic {
                prime: p,
                coeffs: c.iter().map(|&x| rat(x)).collect(),
            },
        }
    }

    fn arch(v: &[f64]) -> WeightVector {
        let prec = 80;
        let e = v
            .iter()
            .map(|&x| {
                if x == 0.0 {
                    Interval::zero()
                } else {
                    let r = Rat::from_float(x).unwrap();
                    let i = Interval::from_rat(&r, prec);
                    let eps = crate::interval::Dyadic::pow2(-60);
                    Interval::new(i.lo() - &eps, i.hi() + &eps)
                }
            })
            .collect();
        WeightVector {
            block: 0,
            place: Place::Real { root: 0 },
            delta: 1,
            entries: Entries::Arch(e),
        }
    }

    #[test]
    fn x2x3_has_three_classes() {
        let w = vec![
            arch(&[2f64.ln(), 3f64.ln()]),
            padic(2, &[-1, 0]),
            padic(3, &[0, -1]),
        ];
        let p = coarse_classes(&w, 100);
        assert_eq!(p.classes.len(), 3);
        assert!(p.classes.iter().all(|c| c.certainty == Certainty::Exact));
        assert!(p.zero.is_empty());
    }

    #[test]
    fn doubled_block_doubles_delta() {
        let w = vec![
            padic(2, &[-1, 0]),
            padic(2, &[-1, 0]),
            padic(3, &[0, -1]),
            padic(3, &[0, -1]),
        ];
        let p = coarse_classes(&w, 100);
        assert_eq!(p.classes.len(), 2);
        assert!(p.classes.iter().all(|c| c.delta(&w) == 2));
    }

    #[test]
    fn cross_prime_proportionality_is_exact() {
        let w = vec![
            padic(2, &[-1, -2]),
            padic(5, &[-2, -4]),
            padic(3, &[-1, -1]),
        ];
        let p = coarse_classes(&w, 100);
        assert_eq!(p.classes.len(), 2);
        assert_eq!(p.classes[0].members, vec![0, 1]);
    }

    #[test]
    fn golden_weights_split_by_sign() {
        let l = ((1.0 + 5f64.sqrt()) / 2.0).ln();
        let w = vec![arch(&[l, 2.0 * l]), arch(&[-l, -2.0 * l])];
        let p = coarse_classes(&w, 100);
        assert_eq!(p.classes.len(), 2);
    }

    #[test]
    fn zero_weights_are_set_aside() {
        let w = vec![padic(2, &[0, 0]), arch(&[0.0, 0.0]), padic(3, &[1, 0])];
        let p = coarse_classes(&w, 100);
        assert_eq!(p.zero, vec![0, 1]);
        assert_eq!(p.classes.len(), 1);
    }

    #[test]
    fn exposure_examples() {
        let w = vec![padic(2, &[-1, 0]), padic(3, &[0, -1])];
        let p = coarse_classes(&w, 100);
        let e = exposed_classes(&w, &p, &[0, 1]);
        assert!(e.iter().all(|x| x.exposed && x.exact));
        let e = exposed_classes(&w, &p, &[0]);
        assert!(e[0].exposed);
        let w = vec![padic(2, &[-1, 0]), padic(2, &[1, 0])];
        let p = coarse_classes(&w, 100);
        let e = exposed_classes(&w, &p, &[0, 1]);
        assert!(e.iter().all(|x| !x.exposed));
    }
}

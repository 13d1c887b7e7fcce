use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::lattice::{hnf, integer_kernel, primitive_integer};
use super::Verdict;
use crate::action::{invariant_flag, socle_irreducibles, SolenoidAction};
use crate::exact::{lcm_u64, simplest_between, Rat};
use crate::interval::Interval;
use crate::linalg::{jordan_chevalley, QMatrix, QSubspace};
use crate::numberfield::{diagonalize_block, NumberFieldAction};
use crate::weights::{block_primes, field_roots, log_abs_at, padic_weights, Entries};
use crate::{Config, Error, Result};

/// Integer vectors a with ζ^a torsion in every block and α^a of finite
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationLattice {
    /// Hermite basis of the relation lattice.
    pub basis: Vec<Vec<i64>>,
    /// Order of α^b for each basis vector b, checked exactly.
    pub orders: Vec<u64>,
    /// d − rank of the lattice: the multiplicative rank modulo torsion.
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicityReport {
    pub verdict: Verdict,
    pub relations: RelationLattice,
    /// A candidate relation that could be neither certified nor refuted.
    pub offending: Option<Vec<i64>>,
    /// Upper bound on the relation rank from certified pivots.
    pub relation_rank_bound: usize,
}

/// Relation space of one block: its certified part, the certified upper
/// bound on its dimension and the first uncertified candidate if any.
#[derive(Clone, Debug)]
pub struct BlockRelations {
    pub space: QSubspace,
    pub upper_bound: usize,
    pub offending: Option<Vec<i64>>,
}

impl BlockRelations {
    pub fn is_certified(&self) -> bool {
        self.offending.is_none() && self.space.dim() == self.upper_bound
    }
}

fn rat_row(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(x.into())).collect()
}

/// Interval elimination on an s × r matrix. Returns the number of
/// certified pivots and, per free column, the rational vector read off
/// from back substitution.
fn interval_kernel(
    mut rows: Vec<Vec<Interval>>,
    r: usize,
    prec: u32,
) -> Result<(usize, Vec<Vec<Rat>>)> {
    let mut ech: Vec<(Vec<Interval>, usize)> = Vec::new();
    let mut free = Vec::new();
    for c in 0..r {
        let pick = (0..rows.len())
            .filter(|&i| !rows[i][c].contains_zero())
            .max_by(|&a, &b| rows[a][c].abs().lo().cmp(rows[b][c].abs().lo()));
        let Some(p) = pick else {
            free.push(c);
            continue;
        };
        let prow = rows.remove(p);
        for row in rows.iter_mut() {
            if row[c].is_exact_zero() {
                continue;
            }
            let f = row[c].div(&prow[c], prec)?;
            for k in c..r {
                row[k] = (&row[k] - &f.mul(&prow[k], prec)).round(prec);
            }
            row[c] = Interval::zero();
        }
        ech.push((prow, c));
    }
    let pivots: Vec<usize> = ech.iter().map(|(_, c)| *c).collect();
    let mut out = Vec::new();
    for &f in &free {
        let mut x: Vec<Option<Rat>> = vec![None; r];
        for &g in &free {
            x[g] = Some(if g == f { Rat::one() } else { Rat::zero() });
        }
        for (row, c) in ech.iter().rev() {
            let mut acc = Interval::zero();
            for k in 0..r {
                if k == *c || (pivots.contains(&k) && k < *c) {
                    continue;
                }
                let xk = x[k].as_ref().expect("solved before use");
                if !xk.is_zero() {
                    acc = (&acc + &row[k].mul_rat(xk, prec)).round(prec);
                }
            }
            let v = acc.div(&row[*c], prec)?;
            x[*c] = Some(-simplest_between(&v.lo().to_rat(), &v.hi().to_rat()));
        }
        out.push(x.into_iter().map(|v| v.expect("all solved")).collect());
    }
    Ok((ech.len(), out))
}

/// Relations among the multipliers of one block.
///
/// The exact p-adic valuation rows cut out a rational space K_p; the
/// archimedean log rows, restricted to K_p, are eliminated in interval
/// arithmetic. Each candidate kernel vector is accepted only once ζ^a is
/// certified a root of unity; otherwise the precision doubles.
pub fn block_relations(nf: &NumberFieldAction, cfg: &Config) -> Result<BlockRelations> {
    let d = nf.d();
    let mut padic_rows: Vec<Vec<Rat>> = Vec::new();
    for p in block_primes(nf)? {
        for w in padic_weights(nf, p)? {
            if let Entries::Padic { coeffs, .. } = w.entries {
                padic_rows.push(coeffs);
            }
        }
    }
    let kp = if padic_rows.is_empty() {
        QSubspace::full(d)
    } else {
        QSubspace::kernel_of(&QMatrix::from_rows(padic_rows)?)
    };
    let r0 = kp.dim();
    if r0 == 0 {
        return Ok(BlockRelations {
            space: kp,
            upper_bound: 0,
            offending: None,
        });
    }
    let bk = kp.basis_matrix();
    let mut local = cfg.clone();
    loop {
        let prec = local.precision_bits + 32;
        let roots = field_roots(nf, &local)?;
        let mut rows = Vec::new();
        for idx in roots.places() {
            let logs: Result<Vec<Interval>> = (0..d)
                .map(|j| log_abs_at(&roots, idx, &nf.zeta(j), &local))
                .collect();
            let logs = logs?;
            let row: Vec<Interval> = (0..r0)
                .map(|c| {
                    let mut acc = Interval::zero();
                    for (j, l) in logs.iter().enumerate() {
                        let b = bk.get(j, c);
                        if !b.is_zero() && !l.is_exact_zero() {
                            acc = (&acc + &l.mul_rat(b, prec)).round(prec);
                        }
                    }
                    acc
                })
                .collect();
            rows.push(row);
        }
        let (rank, cands) = interval_kernel(rows, r0, prec)?;
        let upper = r0 - rank;
        let mut good = Vec::new();
        let mut bad = None;
        for c in cands {
            let a = primitive_integer(&bk.apply(&c))?;
            if nf.zeta_n(&a)?.root_of_unity_order()?.is_some() {
                good.push(rat_row(&a));
            } else if bad.is_none() {
                bad = Some(a);
            }
        }
        let space = QSubspace::from_vectors(d, &good);
        if bad.is_none() || local.precision_bits * 2 > local.max_precision_bits {
            return Ok(BlockRelations {
                space,
                upper_bound: upper,
                offending: bad,
            });
        }
        local.precision_bits *= 2;
    }
}

/// log U = Σ_{k≥1} (−1)^{k+1} (U − I)^k / k for unipotent U.
fn unipotent_log(u: &QMatrix) -> QMatrix {
    let m = u.rows();
    let n = u - &QMatrix::identity(m);
    let mut acc = QMatrix::zeros(m, m);
    let mut pow = n.clone();
    for k in 1..m.max(1) + 1 {
        if pow.is_zero() {
            break;
        }
        let c = Rat::new(
            if k % 2 == 1 { 1.into() } else { (-1).into() },
            (k as i64).into(),
        );
        acc = &acc + &pow.scale(&c);
        pow = &pow * &n;
    }
    acc
}

/// Saturation W ∩ ℤ^d of a rational subspace, in Hermite form.
fn saturate(w: &QSubspace) -> Result<Vec<Vec<i64>>> {
    let d = w.ambient();
    let rows: Result<Vec<Vec<i64>>> = w
        .annihilator()
        .basis()
        .iter()
        .map(|r| primitive_integer(r))
        .collect();
    Ok(integer_kernel(&rows?, d))
}

/// Decides whether some finite-index subgroup of ℤ^d acts through the
/// powers of a single element.
///
/// The relation lattice is the set of a with α^a of finite order: ζ^a must
/// be torsion in every flag quotient and Σ a_j log U_j must vanish for the
/// unipotent parts U_j. The verdict is rank ≤ 1.
pub fn virtually_cyclic(action: &SolenoidAction, cfg: &Config) -> Result<CyclicityReport> {
    let d = action.d();
    let flag = invariant_flag(action, cfg.seed)?;
    let mut blocks = Vec::new();
    let mut space = QSubspace::full(d);
    let mut bound = d;
    let mut offending = None;
    for gens in &flag.quotient_blocks {
        let nf = diagonalize_block(gens, cfg.seed)?;
        let br = block_relations(&nf, cfg)?;
        space = space.intersect(&br.space);
        bound = bound.min(br.upper_bound);
        if offending.is_none() && !br.is_certified() {
            offending = br.offending.clone().or_else(|| Some(vec![0; d]));
        }
        blocks.push(nf);
    }
    let logs: Result<Vec<QMatrix>> = action
        .generators()
        .iter()
        .map(|a| Ok(unipotent_log(&jordan_chevalley(a)?.1)))
        .collect();
    let logs = logs?;
    if logs.iter().any(|l| !l.is_zero()) {
        let cols: Vec<Vec<Rat>> = logs.iter().map(|l| l.vectorize()).collect();
        let unip = QSubspace::kernel_of(&QMatrix::from_columns(action.m() * action.m(), &cols));
        bound = bound.min(unip.dim());
        space = space.intersect(&unip);
    }
    let basis = hnf(&saturate(&space)?);
    let mut orders = Vec::with_capacity(basis.len());
    for b in &basis {
        let mut r = 1u64;
        for nf in &blocks {
            let o = nf.zeta_n(b)?.root_of_unity_order()?.ok_or_else(|| {
                Error::Certification(alloc::format!(
                    "relation {:?} is not torsion in every block",
                    b
                ))
            })?;
            r = lcm_u64(r, o);
        }
        let scaled: Vec<i64> = b.iter().map(|&x| x * r as i64).collect();
        if !action.element(&scaled)?.is_identity() {
            return Err(Error::Certification(alloc::format!(
                "α^{:?} does not have order {}",
                b,
                r
            )));
        }
        orders.push(r);
    }
    let rank = d - basis.len();
    let verdict = if d <= 1 || rank <= 1 {
        Verdict::Yes
    } else if offending.is_none() || d - bound > 1 {
        Verdict::No
    } else {
        Verdict::Unknown
    };
    let offending = if verdict == Verdict::Unknown {
        offending
    } else {
        None
    };
    Ok(CyclicityReport {
        verdict,
        relations: RelationLattice {
            basis,
            orders,
            rank,
        },
        offending,
        relation_rank_bound: bound,
    })
}

/// Result of the virtually-cyclic-factor search over the socle of the dual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorReport {
    pub verdict: Verdict,
    /// Minimal invariant subspace of the transposed action (a factor of the
    /// solenoid) whose action is virtually cyclic.
    pub witness: Option<QSubspace>,
    pub families_checked: usize,
}

/// Searches the irreducible factors, i.e. the socle of the transposed
/// action, for one that is virtually cyclic.
pub fn has_virtually_cyclic_factor(action: &SolenoidAction, cfg: &Config) -> Result<FactorReport> {
    let families = socle_irreducibles(&action.transpose(), cfg.seed)?;
    let mut unknown = false;
    for fam in &families {
        let r = virtually_cyclic(&fam.block, cfg)?;
        match r.verdict {
            Verdict::Yes => {
                return Ok(FactorReport {
                    verdict: Verdict::Yes,
                    witness: Some(fam.representative.clone()),
                    families_checked: families.len(),
                })
            }
            Verdict::Unknown => unknown = true,
            Verdict::No => {}
        }
    }
    let verdict = if unknown {
        Verdict::Unknown
    } else {
        Verdict::No
    };
    Ok(FactorReport {
        verdict,
        witness: None,
        families_checked: families.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::tests::x2x3;

    fn action(rows: &[&[&[i64]]]) -> SolenoidAction {
        SolenoidAction::new(rows.iter().map(|r| QMatrix::from_i64(r)).collect(), None).unwrap()
    }

    #[test]
    fn golden_powers() {
        // θ and θ² on ℚ(θ), θ² = θ + 1.
        let a = action(&[&[&[0, 1], &[1, 1]], &[&[1, 1], &[1, 2]]]);
        let r = virtually_cyclic(&a, &Config::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Yes);
        assert_eq!(r.relations.basis, vec![vec![2, -1]]);
        assert_eq!(r.relations.orders, vec![1]);
        assert_eq!(r.relations.rank, 1);
    }

    #[test]
    fn x2x3_has_rank_two() {
        let r = virtually_cyclic(&x2x3(), &Config::default()).unwrap();
        assert_eq!(r.verdict, Verdict::No);
        assert!(r.relations.basis.is_empty());
        assert_eq!(r.relations.rank, 2);
    }

    #[test]
    fn gaussian_torsion() {
        let a = action(&[&[&[0, -1], &[1, 0]], &[&[2, 0], &[0, 2]]]);
        let r = virtually_cyclic(&a, &Config::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Yes);
        assert_eq!(r.relations.basis, vec![vec![1, 0]]);
        assert_eq!(r.relations.orders, vec![4]);
    }

    #[test]
    fn real_quadratic_units_independent() {
        let a = action(&[&[&[1, 2], &[1, 1]], &[&[3, 2], &[1, 3]]]);
        let r = virtually_cyclic(&a, &Config::default()).unwrap();
        assert_eq!(r.verdict, Verdict::No);
    }

    #[test]
    fn unipotent_parts_count() {
        // Eigenvalue relation (1, −1) holds, but A·B⁻¹ is a nontrivial
        // unipotent.
        let a = action(&[&[&[2, 1], &[0, 2]], &[&[2, 0], &[0, 2]]]);
        let r = virtually_cyclic(&a, &Config::default()).unwrap();
        assert_eq!(r.verdict, Verdict::No);
        let b = action(&[&[&[2, 1], &[0, 2]], &[&[4, 4], &[0, 4]]]);
        let r = virtually_cyclic(&b, &Config::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Yes);
        assert_eq!(r.relations.basis, vec![vec![2, -1]]);
    }

    #[test]
    fn cyclic_factors() {
        let cfg = Config::default();
        assert_eq!(
            has_virtually_cyclic_factor(&x2x3(), &cfg).unwrap().verdict,
            Verdict::No
        );
        let one = action(&[&[&[2, 1], &[1, 1]]]);
        assert_eq!(
            has_virtually_cyclic_factor(&one, &cfg).unwrap().verdict,
            Verdict::Yes
        );
        // ×2,×3 on one line and (i, 2) on a plane.
        let mixed = action(&[
            &[&[2, 0, 0], &[0, 0, -1], &[0, 1, 0]],
            &[&[3, 0, 0], &[0, 2, 0], &[0, 0, 2]],
        ]);
        let f = has_virtually_cyclic_factor(&mixed, &cfg).unwrap();
        assert_eq!(f.verdict, Verdict::Yes);
        assert_eq!(f.witness.unwrap().dim(), 2);
    }
}

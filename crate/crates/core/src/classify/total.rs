use alloc::vec;
use alloc::vec::Vec;

use crate::action::{invariant_flag, is_irreducible_seeded, SolenoidAction};
use crate::exact::{cyclotomic, euler_phi, interpolate, lcm_u64, resultant, Rat, RatPoly};
use crate::numberfield::{diagonalize_block, NumberFieldAction};
use crate::{Config, Result};

/// Outcome of the total-irreducibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalIrreducibility {
    pub irreducible: bool,
    pub totally_irreducible: bool,
    /// The M of Λ = M·ℤ^d: every root of unity of the form σ(ζ_j)/ζ_j has
    /// order dividing M.
    pub exponent: u64,
    /// Largest degree of a ratio polynomial searched for cyclotomic factors.
    pub degree_bound: usize,
    /// Steps of the tested sublattice, all equal to `exponent`.
    pub sublattice: Vec<u64>,
}

/// S(x) = Res_y(q(y), q(xy)), whose roots are the ratios of roots of q.
pub(crate) fn ratio_polynomial(q: &RatPoly) -> Result<RatPoly> {
    let k = q.deg();
    let n = k * k;
    let mut pts = Vec::with_capacity(n + 1);
    for x in 1..=(n as i64 + 1) {
        let xr = Rat::from_integer(x.into());
        let shifted = q.scale_var(&xr);
        pts.push((xr, resultant(q, &shifted)?));
    }
    Ok(interpolate(&pts))
}

/// Lcm of the orders of the roots of unity among the ratios of roots of q,
/// together with the degree of the ratio polynomial.
pub(crate) fn ratio_torsion_exponent(q: &RatPoly) -> Result<(u64, usize)> {
    if q.deg() <= 1 {
        return Ok((1, q.deg()));
    }
    let s = ratio_polynomial(q)?;
    let bound = s.deg() as u64;
    let mut m = 1u64;
    // φ(n) ≥ √(n/2), so φ(n) ≤ bound forces n ≤ 2·bound².
    for n in 2..=2 * bound * bound {
        if euler_phi(n) <= bound && s.rem(&cyclotomic(n)).is_zero() {
            m = lcm_u64(m, n);
        }
    }
    Ok((m, s.deg()))
}

/// Exponent M for one diagonalized block: ℚ(ζ^{M·ℤ^d}) is the smallest
/// field generated by any finite-index restriction.
pub fn torsion_exponent(nf: &NumberFieldAction) -> Result<(u64, usize)> {
    let mut m = 1;
    let mut deg = 0;
    for j in 0..nf.d() {
        let (mj, dj) = ratio_torsion_exponent(&nf.zeta(j).minpoly())?;
        m = lcm_u64(m, mj);
        deg = deg.max(dj);
    }
    Ok((m, deg))
}

/// Lcm of the block exponents over an invariant flag of the action.
pub fn action_torsion_exponent(action: &SolenoidAction, cfg: &Config) -> Result<(u64, usize)> {
    let flag = invariant_flag(action, cfg.seed)?;
    let mut m = 1;
    let mut deg = 0;
    for gens in &flag.quotient_blocks {
        let (mb, db) = torsion_exponent(&diagonalize_block(gens, cfg.seed)?)?;
        m = lcm_u64(m, mb);
        deg = deg.max(db);
    }
    Ok((m, deg))
}

/// Decides whether every finite-index restriction stays irreducible.
///
/// For an irreducible block K with multipliers ζ_j, the restriction to Λ is
/// irreducible iff ℚ(ζ^Λ) = K. An embedding σ ≠ id fixes every ζ_j^N iff
/// each σ(ζ_j)/ζ_j is a root of unity of order dividing N; those ratios are
/// roots of Res_y(q(y), q(xy)), so N = M works for every Λ at once.
pub fn total_irreducibility(action: &SolenoidAction, cfg: &Config) -> Result<TotalIrreducibility> {
    let d = action.d();
    if !is_irreducible_seeded(action, cfg.seed) {
        return Ok(TotalIrreducibility {
            irreducible: false,
            totally_irreducible: false,
            exponent: 1,
            degree_bound: 0,
            sublattice: vec![1; d],
        });
    }
    let nf = diagonalize_block(action.generators(), cfg.seed)?;
    let (exponent, degree_bound) = torsion_exponent(&nf)?;
    let steps = vec![exponent; d];
    let totally =
        exponent == 1 || is_irreducible_seeded(&action.restrict_lattice(&steps)?, cfg.seed);
    Ok(TotalIrreducibility {
        irreducible: true,
        totally_irreducible: totally,
        exponent,
        degree_bound,
        sublattice: steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::tests::x2x3;
    use crate::linalg::QMatrix;

    fn action(rows: &[&[&[i64]]]) -> SolenoidAction {
        SolenoidAction::new(rows.iter().map(|r| QMatrix::from_i64(r)).collect(), None).unwrap()
    }

    #[test]
    fn ratio_roots_of_x2_plus_1() {
        // Roots ±i: ratios 1, 1, −1, −1.
        let s = ratio_polynomial(&RatPoly::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(s.monic(), RatPoly::from_ints(&[1, 0, -2, 0, 1]).monic());
        assert_eq!(
            ratio_torsion_exponent(&RatPoly::from_ints(&[1, 0, 1]))
                .unwrap()
                .0,
            2
        );
    }

    #[test]
    fn x2x3_is_totally_irreducible() {
        let t = total_irreducibility(&x2x3(), &Config::default()).unwrap();
        assert!(t.irreducible && t.totally_irreducible);
        assert_eq!(t.exponent, 1);
    }

    #[test]
    fn gaussian_pair_is_not() {
        // ζ = (i, 2) on ℚ(i).
        let a = action(&[&[&[0, -1], &[1, 0]], &[&[2, 0], &[0, 2]]]);
        let t = total_irreducibility(&a, &Config::default()).unwrap();
        assert!(t.irreducible);
        assert!(!t.totally_irreducible);
        assert_eq!(t.exponent % 2, 0);
    }

    #[test]
    fn real_quadratic_units_are() {
        // ζ = (1+√2, 3+√2) in the basis 1, √2.
        let a = action(&[&[&[1, 2], &[1, 1]], &[&[3, 2], &[1, 3]]]);
        let t = total_irreducibility(&a, &Config::default()).unwrap();
        assert!(t.irreducible && t.totally_irreducible);
    }

    #[test]
    fn reducible_action() {
        let a = action(&[&[&[2, 0], &[0, 3]]]);
        let t = total_irreducibility(&a, &Config::default()).unwrap();
        assert!(!t.irreducible && !t.totally_irreducible);
    }
}

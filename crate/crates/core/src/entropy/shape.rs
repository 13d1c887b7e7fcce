use alloc::vec::Vec;

use num_traits::Zero;

use super::haar::{haar_entropy, EntropyReport};
use crate::action::{FlagDesignation, SolenoidAction};
use crate::exact::Rat;
use crate::interval::Interval;
use crate::linalg::QSubspace;
use crate::weights::{coarse_classes, LogValue, WeightSystem, WeightVector};
use crate::{Config, Error, Result};

/// Haar measure on a closed invariant subgroup G, given by the invariant
/// rational subspace that carries it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousMeasure {
    pub subgroup: QSubspace,
}

impl HomogeneousMeasure {
    /// Checks invariance under every generator exactly.
    pub fn new(action: &SolenoidAction, subgroup: QSubspace) -> Result<Self> {
        if subgroup.ambient() != action.m() || subgroup.is_zero() {
            return Err(Error::InvalidArgument(
                "subgroup must be a nonzero subspace of the ambient".into(),
            ));
        }
        if !action.generators().iter().all(|g| subgroup.is_invariant(g)) {
            return Err(Error::NotInvariant(
                "subgroup is not invariant under the action".into(),
            ));
        }
        Ok(HomogeneousMeasure { subgroup })
    }

    pub fn restricted(&self, action: &SolenoidAction) -> Result<SolenoidAction> {
        action.restrict(&self.subgroup)
    }
}

/// Entropy of α^n for the Haar measure on G: the Haar entropy of the
/// action restricted to G.
pub fn homogeneous_entropy(
    action: &SolenoidAction,
    g: &HomogeneousMeasure,
    n: &[i64],
    cfg: &Config,
) -> Result<EntropyReport> {
    let sys = WeightSystem::new(&g.restricted(action)?, cfg)?;
    haar_entropy(&sys, n)
}

/// Nonzero n ∈ ℤ^d with ‖n‖∞ ≤ bound, in lexicographic order.
pub fn sample_grid(d: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = alloc::vec![-bound; d];
    loop {
        if cur.iter().any(|&x| x != 0) {
            out.push(cur.clone());
        }
        let mut j = d;
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if cur[j] < bound {
                cur[j] += 1;
                break;
            }
            cur[j] = -bound;
        }
    }
}

/// One entry of the shape table: the class's contribution on G over its
/// contribution on the designated irreducible block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeRow {
    pub n: Vec<i64>,
    /// Index into the pooled class list of the report.
    pub class: usize,
    pub numerator: LogValue,
    pub denominator: LogValue,
    /// None when the denominator vanishes but the numerator does not.
    pub ratio: Option<Interval>,
    pub ratio_exact: Option<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeReport {
    pub designation: FlagDesignation,
    pub rows: Vec<ShapeRow>,
    /// Intersection of all ratios, when nonempty.
    pub kappa: Option<Interval>,
    pub kappa_exact: Option<Rat>,
    pub constant: bool,
}

fn exact_ratio(num: &LogValue, den: &LogValue) -> Option<Rat> {
    if !num.is_exact() || !den.is_exact() || den.is_zero() {
        return None;
    }
    if num.is_zero() {
        return Some(Rat::zero());
    }
    if num.exact.len() != den.exact.len() {
        return None;
    }
    let mut r: Option<Rat> = None;
    for (p, c) in &num.exact {
        let q = den.exact.get(p)?;
        let t = c / q;
        if r.as_ref().is_some_and(|x| *x != t) {
            return None;
        }
        r = Some(t);
    }
    r
}

/// Tabulates h_G(α^n, W^{[χ]})/h_λ(α^n_{Y_irred}, W^{[χ]}) over every
/// class and every n in the sample grid, where Y_irred is a quotient of the
/// action's flag; the identity holds when the table is constant.
///
/// Without a designation the first quotient with positive entropy on the
/// grid is used.
pub fn shape_identity_report(
    action: &SolenoidAction,
    g: &HomogeneousMeasure,
    designation: Option<FlagDesignation>,
    cfg: &Config,
) -> Result<ShapeReport> {
    let full = WeightSystem::new(action, cfg)?;
    let gsys = WeightSystem::new(&g.restricted(action)?, cfg)?;
    let grid = sample_grid(action.d(), cfg.sample_bound);
    let designation = match designation {
        Some(d) => full.flag().designate(d.posfact)?,
        None => {
            let mut found = None;
            'blocks: for b in 0..full.blocks().len() {
                for n in &grid {
                    if !super::haar::block_entropy(&full, b, n)?.is_zero() {
                        found = Some(FlagDesignation::block(b));
                        break 'blocks;
                    }
                }
            }
            found.ok_or(Error::NoPositiveEntropy)?
        }
    };
    let irred = designation.irred_block();
    // Pool G's weights with the designated block's so classes match up.
    let gw = gsys.weights().len();
    let block_ws: Vec<usize> = full.block_weights(irred).collect();
    let mut pooled: Vec<WeightVector> = gsys.weights().to_vec();
    pooled.extend(block_ws.iter().map(|&i| full.weights()[i].clone()));
    let part = coarse_classes(&pooled, cfg.precision_bits);
    let prec = cfg.precision_bits + 16;
    let stable = |sys: &WeightSystem, w: usize, n: &[i64]| -> Result<LogValue> {
        if sys.sign(w, n)? < 0 {
            Ok(sys.chi(w, n)?.neg().scale(
                &Rat::from_integer((sys.weights()[w].delta as i64).into()),
                prec,
            ))
        } else {
            Ok(LogValue::zero())
        }
    };
    let mut rows = Vec::new();
    let mut any_positive = false;
    for n in &grid {
        for (c, cl) in part.classes.iter().enumerate() {
            let mut num = LogValue::zero();
            let mut den = LogValue::zero();
            for &m in &cl.members {
                if m < gw {
                    num = num.add(&stable(&gsys, m, n)?);
                } else {
                    den = den.add(&stable(&full, block_ws[m - gw], n)?);
                }
            }
            if num.is_zero() && den.is_zero() {
                continue;
            }
            any_positive |= !den.is_zero();
            let ratio = if den.is_zero() {
                None
            } else {
                Some(num.to_interval(prec).div(&den.to_interval(prec), prec)?)
            };
            let ratio_exact = exact_ratio(&num, &den);
            let ratio = match (&ratio_exact, ratio) {
                (Some(e), _) => Some(Interval::from_rat(e, prec)),
                (None, r) => r,
            };
            rows.push(ShapeRow {
                n: n.clone(),
                class: c,
                numerator: num,
                denominator: den,
                ratio,
                ratio_exact,
            });
        }
    }
    if !any_positive {
        return Err(Error::NoPositiveEntropy);
    }
    let mut kappa: Option<Interval> = None;
    let mut constant = true;
    for r in &rows {
        match (&r.ratio, &kappa) {
            (None, _) => constant = false,
            (Some(i), None) => kappa = Some(i.clone()),
            (Some(i), Some(k)) => match k.intersect(i) {
                Some(x) => kappa = Some(x),
                None => constant = false,
            },
        }
    }
    let first = rows.first().and_then(|r| r.ratio_exact.clone());
    let kappa_exact = first.filter(|e| rows.iter().all(|r| r.ratio_exact.as_ref() == Some(e)));
    if !constant {
        kappa = None;
    }
    Ok(ShapeReport {
        designation,
        rows,
        kappa,
        kappa_exact,
        constant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::linalg::QMatrix;
    use alloc::vec;

    fn doubled() -> SolenoidAction {
        SolenoidAction::new(
            vec![QMatrix::scalar(2, rat(2)), QMatrix::scalar(2, rat(3))],
            None,
        )
        .unwrap()
    }

    #[test]
    fn grid_size() {
        assert_eq!(sample_grid(2, 3).len(), 48);
        assert_eq!(
            sample_grid(1, 2),
            vec![vec![-2], vec![-1], vec![1], vec![2]]
        );
    }

    #[test]
    fn diagonal_joining_has_ratio_one() {
        let a = doubled();
        let diag = QSubspace::from_vectors(2, &[vec![rat(1), rat(1)]]);
        let g = HomogeneousMeasure::new(&a, diag).unwrap();
        let r = shape_identity_report(&a, &g, None, &Config::default()).unwrap();
        assert!(r.constant);
        assert_eq!(r.kappa_exact, None);
        assert!((r.kappa.unwrap().to_f64() - 1.0).abs() < 1e-12);
        let h = homogeneous_entropy(&a, &g, &[1, 1], &Config::default()).unwrap();
        assert!((h.total.to_f64() - 6f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn full_product_doubles() {
        let a = doubled();
        let g = HomogeneousMeasure::new(&a, QSubspace::full(2)).unwrap();
        let r = shape_identity_report(&a, &g, None, &Config::default()).unwrap();
        assert!(r.constant);
        assert!((r.kappa.unwrap().to_f64() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn non_invariant_rejected() {
        let a = SolenoidAction::new(vec![QMatrix::diag(&[rat(2), rat(3)])], None).unwrap();
        let s = QSubspace::from_vectors(2, &[vec![rat(1), rat(1)]]);
        assert!(HomogeneousMeasure::new(&a, s).is_err());
    }
}

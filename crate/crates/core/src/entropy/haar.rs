use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::exact::Rat;
use crate::interval::Interval;
use crate::weights::{Entries, LogValue, WeightSystem};
use crate::{Error, Result};

/// Entropy of α^n under Haar measure, split by flag block and by class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntropyReport {
    pub n: Vec<i64>,
    /// One value per quotient of the flag.
    pub blocks: Vec<LogValue>,
    /// (class index, contribution) for every class with χ·n < 0.
    pub classes: Vec<(usize, LogValue)>,
    pub total: LogValue,
}

/// δ·(−χ·n) if χ·n < 0, else 0.
fn stable_part(sys: &WeightSystem, w: usize, n: &[i64]) -> Result<LogValue> {
    let prec = sys.config().precision_bits + 16;
    match sys.sign(w, n)? {
        -1 => Ok(sys.chi(w, n)?.neg().scale(
            &Rat::from_integer((sys.weights()[w].delta as i64).into()),
            prec,
        )),
        _ => Ok(LogValue::zero()),
    }
}

/// h_λ(α^n) = Σ_blocks Σ_σ δ_σ·max(0, −χ_σ·n).
pub fn haar_entropy(sys: &WeightSystem, n: &[i64]) -> Result<EntropyReport> {
    if n.len() != sys.action().d() {
        return Err(Error::Dimension(
            "exponent vector length differs from d".into(),
        ));
    }
    let nb = sys.blocks().len();
    let mut blocks = alloc::vec![LogValue::zero(); nb];
    let mut per_weight = Vec::with_capacity(sys.weights().len());
    for w in 0..sys.weights().len() {
        let v = stable_part(sys, w, n)?;
        let b = sys.weights()[w].block;
        blocks[b] = blocks[b].add(&v);
        per_weight.push(v);
    }
    let mut classes = Vec::new();
    for (c, cl) in sys.partition().classes.iter().enumerate() {
        if sys.class_sign(c, n)? < 0 {
            let v = cl
                .members
                .iter()
                .fold(LogValue::zero(), |acc, &m| acc.add(&per_weight[m]));
            classes.push((c, v));
        }
    }
    let total = blocks.iter().fold(LogValue::zero(), |acc, b| acc.add(b));
    Ok(EntropyReport {
        n: n.to_vec(),
        blocks,
        classes,
        total,
    })
}

/// Entropy of α^n on one flag quotient.
pub fn block_entropy(sys: &WeightSystem, block: usize, n: &[i64]) -> Result<LogValue> {
    sys.block_weights(block)
        .try_fold(LogValue::zero(), |acc, w| {
            Ok(acc.add(&stable_part(sys, w, n)?))
        })
}

/// h_λ(α^n, V) for a set V of classes, restricted to one block when
/// `block` is given. Classes that are not stable for n contribute nothing.
pub fn entropy_contribution(
    sys: &WeightSystem,
    n: &[i64],
    v: &[usize],
    block: Option<usize>,
) -> Result<LogValue> {
    let mut acc = LogValue::zero();
    for &c in v {
        for &m in &sys.partition().classes[c].members {
            if block.is_none_or(|b| sys.weights()[m].block == b) {
                acc = acc.add(&stable_part(sys, m, n)?);
            }
        }
    }
    Ok(acc)
}

/// κ = h_λ(α^n_irred, V)/h_λ(α^n_irred) on a designated block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kappa {
    pub value: Interval,
    /// V contains every stable class of the block: κ = 1 exactly.
    pub is_one: bool,
    /// Some stable place of the block is missing from V, so the omitted
    /// part is certified positive and κ < 1.
    pub below_one: bool,
}

pub fn kappa(sys: &WeightSystem, n: &[i64], v: &[usize], block: usize) -> Result<Kappa> {
    let prec = sys.config().precision_bits + 16;
    let den = block_entropy(sys, block, n)?;
    if den.is_zero() {
        return Err(Error::NoPositiveEntropy);
    }
    let vs: BTreeSet<usize> = v.iter().copied().collect();
    let mut num = LogValue::zero();
    let mut omitted = false;
    for w in sys.block_weights(block) {
        let part = stable_part(sys, w, n)?;
        if part.is_zero() {
            continue;
        }
        match sys.partition().class_of(w) {
            Some(c) if vs.contains(&c) => num = num.add(&part),
            _ => omitted = true,
        }
    }
    let value = if !omitted {
        Interval::one()
    } else if num.is_zero() {
        Interval::zero()
    } else {
        num.to_interval(prec).div(&den.to_interval(prec), prec)?
    };
    Ok(Kappa {
        value,
        is_one: !omitted,
        below_one: omitted,
    })
}

/// h(α^n, W^{[χ]}) = c·|χ·n| on the stable side, with c = Σ δ_σ t_σ where
/// χ_σ = t_σ·χ for the class representative χ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub class: usize,
    /// Index of the representative weight.
    pub representative: usize,
    pub c: Interval,
    /// c when every t_σ is rational (all members over one prime).
    pub c_exact: Option<Rat>,
    /// (n, h − c·|χ·n|) over the sample; each must contain 0.
    pub residuals: Vec<(Vec<i64>, Interval)>,
}

impl LinearForm {
    pub fn holds(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.contains_zero())
    }
}

pub fn entropy_linear_form(
    sys: &WeightSystem,
    class: usize,
    sample: &[Vec<i64>],
) -> Result<LinearForm> {
    let prec = sys.config().precision_bits + 16;
    let cl = &sys.partition().classes[class];
    let ws = sys.weights();
    let rep = cl.members[0];
    let d = sys.action().d();
    // Coordinate where the representative is largest, for the ratios t_σ.
    let j = (0..d)
        .filter(|&j| ws[rep].entry_sign(j) != 0)
        .max_by(|&a, &b| {
            ws[rep]
                .entry(a, prec)
                .abs()
                .hi()
                .cmp(ws[rep].entry(b, prec).abs().hi())
        })
        .expect("nonzero weight");
    let mut c = Interval::zero();
    let mut c_exact = Some(Rat::zero());
    for &m in &cl.members {
        let delta = Rat::from_integer((ws[m].delta as i64).into());
        let t = ws[m].entry(j, prec).div(&ws[rep].entry(j, prec), prec)?;
        c = (&c + &t.mul_rat(&delta, prec)).round(prec);
        c_exact = match (c_exact, &ws[m].entries, &ws[rep].entries) {
            (
                Some(acc),
                Entries::Padic {
                    prime: p,
                    coeffs: a,
                },
                Entries::Padic {
                    prime: q,
                    coeffs: b,
                },
            ) if p == q => Some(acc + delta * (&a[j] / &b[j])),
            _ => None,
        };
    }
    if let Some(e) = &c_exact {
        c = Interval::from_rat(e, prec);
    }
    let mut residuals = Vec::new();
    for n in sample {
        if sys.sign(rep, n)? >= 0 {
            continue;
        }
        let h = entropy_contribution(sys, n, &[class], None)?.to_interval(prec);
        let chi = sys.chi(rep, n)?.to_interval(prec).abs();
        let fit = match &c_exact {
            Some(e) => chi.mul_rat(e, prec),
            None => c.mul(&chi, prec),
        };
        residuals.push((n.clone(), &h - &fit));
    }
    Ok(LinearForm {
        class,
        representative: rep,
        c,
        c_exact,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::SolenoidAction;
    use crate::exact::rat;
    use crate::linalg::QMatrix;
    use crate::weights::Place;
    use crate::Config;
    use alloc::vec;

    fn sys() -> WeightSystem {
        let a = SolenoidAction::new(
            vec![QMatrix::from_i64(&[&[2]]), QMatrix::from_i64(&[&[3]])],
            None,
        )
        .unwrap();
        WeightSystem::new(&a, &Config::default()).unwrap()
    }

    fn class_at(s: &WeightSystem, p: Option<u64>) -> usize {
        let w = s
            .weights()
            .iter()
            .position(|w| w.place.prime() == p)
            .unwrap();
        s.partition().class_of(w).unwrap()
    }

    #[test]
    fn classical_values() {
        let s = sys();
        let h = haar_entropy(&s, &[1, 0]).unwrap();
        assert_eq!(h.total.exact_string(), "1·log 2");
        assert!(h.total.is_exact());
        let h = haar_entropy(&s, &[1, 1]).unwrap();
        assert_eq!(h.total.exact.get(&2), Some(&rat(1)));
        assert_eq!(h.total.exact.get(&3), Some(&rat(1)));
        assert!((h.total.to_f64() - 6f64.ln()).abs() < 1e-12);
        assert!(haar_entropy(&s, &[0, 0]).unwrap().total.is_zero());
        // Expanding direction: only ∞ is stable.
        let h = haar_entropy(&s, &[-1, -1]).unwrap();
        assert!(h.total.exact.is_empty());
        assert!((h.total.to_f64() - 6f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn contributions_and_kappa() {
        let s = sys();
        let c2 = class_at(&s, Some(2));
        let c3 = class_at(&s, Some(3));
        let h2 = entropy_contribution(&s, &[1, 1], &[c2], None).unwrap();
        assert_eq!(h2, LogValue::log_prime(2, rat(1)));
        let all = entropy_contribution(&s, &[1, 1], &[0, 1, 2], None).unwrap();
        assert_eq!(all, haar_entropy(&s, &[1, 1]).unwrap().total);
        assert!(entropy_contribution(&s, &[1, 1], &[], None)
            .unwrap()
            .is_zero());
        let k = kappa(&s, &[1, 1], &[c2], 0).unwrap();
        assert!(k.below_one && !k.is_one);
        assert!((k.value.to_f64() - 2f64.ln() / 6f64.ln()).abs() < 1e-12);
        assert!(k.value.width_below(40));
        let k = kappa(&s, &[1, 1], &[c2, c3], 0).unwrap();
        assert!(k.is_one);
        assert_eq!(k.value, Interval::one());
        let k = kappa(&s, &[1, 1], &[], 0).unwrap();
        assert!(k.value.is_exact_zero());
        assert_eq!(kappa(&s, &[0, 0], &[c2], 0), Err(Error::NoPositiveEntropy));
    }

    #[test]
    fn linear_forms() {
        let s = sys();
        let c2 = class_at(&s, Some(2));
        let lf = entropy_linear_form(&s, c2, &[vec![1, 0], vec![2, 0], vec![3, 1]]).unwrap();
        assert_eq!(lf.c_exact, Some(rat(1)));
        assert_eq!(lf.residuals.len(), 3);
        assert!(lf.holds());
        let ca = class_at(&s, None);
        let lf = entropy_linear_form(&s, ca, &[vec![-1, 0], vec![-1, -1], vec![1, -3]]).unwrap();
        assert!((lf.c.to_f64() - 1.0).abs() < 1e-12);
        assert!(lf.holds());
        assert!(matches!(
            s.weights()[lf.representative].place,
            Place::Real { .. }
        ));
        // Homogeneity on the exact part.
        let h1 = entropy_contribution(&s, &[1, 2], &[c2], None).unwrap();
        let h2 = entropy_contribution(&s, &[2, 4], &[c2], None).unwrap();
        assert_eq!(h1.scale(&rat(2), 64), h2);
    }
}

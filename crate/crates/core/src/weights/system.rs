use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::arch::{archimedean_weights, field_roots, log_abs_at};
use super::classes::{coarse_classes, ClassPartition};
use super::padic::{block_primes, padic_weights_seeded};
use super::{LogValue, Place, WeightVector};
use crate::action::{invariant_flag, InvariantFlag, SolenoidAction};
use crate::interval::RootSet;
use crate::numberfield::{diagonalize_block, NumberFieldAction};
use crate::{Config, Error, Result};

/// Field data of one irreducible quotient of the flag.
#[derive(Clone, Debug)]
pub struct BlockData {
    pub nf: NumberFieldAction,
    pub roots: RootSet,
    pub primes: Vec<u64>,
}

/// Every Lyapunov weight of an action, pooled over the quotients of an
/// invariant flag, with the coarse classes they form.
#[derive(Clone, Debug)]
pub struct WeightSystem {
    action: SolenoidAction,
    flag: InvariantFlag,
    blocks: Vec<BlockData>,
    weights: Vec<WeightVector>,
    partition: ClassPartition,
    config: Config,
}

/// Classes split by the sign of χ·n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Horospherical {
    pub stable: Vec<usize>,
    pub unstable: Vec<usize>,
    /// Classes with χ·n = 0 exactly.
    pub neutral: Vec<usize>,
    /// Σ δ over stable members.
    pub dimension: usize,
    /// Stable dimension by place type; `None` is ∞.
    pub per_prime: BTreeMap<Option<u64>, usize>,
}

impl WeightSystem {
    pub fn new(action: &SolenoidAction, config: &Config) -> Result<Self> {
        let flag = invariant_flag(action, config.seed)?;
        Self::with_flag(action, flag, config)
    }

    pub fn with_flag(
        action: &SolenoidAction,
        flag: InvariantFlag,
        config: &Config,
    ) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut weights = Vec::new();
        for (b, gens) in flag.quotient_blocks.iter().enumerate() {
            let nf = diagonalize_block(gens, config.seed)?;
            let roots = field_roots(&nf, config)?;
            let primes = block_primes(&nf)?;
            weights.extend(archimedean_weights(&nf, &roots, b, config)?);
            for &p in &primes {
                weights.extend(padic_weights_seeded(&nf, p, b, config.seed)?);
            }
            blocks.push(BlockData { nf, roots, primes });
        }
        let partition = coarse_classes(&weights, config.precision_bits);
        Ok(WeightSystem {
            action: action.clone(),
            flag,
            blocks,
            weights,
            partition,
            config: config.clone(),
        })
    }

    pub fn action(&self) -> &SolenoidAction {
        &self.action
    }

    pub fn flag(&self) -> &InvariantFlag {
        &self.flag
    }

    pub fn blocks(&self) -> &[BlockData] {
        &self.blocks
    }

    pub fn weights(&self) -> &[WeightVector] {
        &self.weights
    }

    pub fn partition(&self) -> &ClassPartition {
        &self.partition
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    /// Indices of the weights of one block.
    pub fn block_weights(&self, block: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.weights.len()).filter(move |&i| self.weights[i].block == block)
    }

    /// χ·n with a certified sign: exact for p-adic weights; for archimedean
    /// ones the interval excludes 0 unless |ζ_n|_σ = 1 exactly, in which
    /// case the value is an exact zero.
    pub fn chi(&self, w: usize, n: &[i64]) -> Result<LogValue> {
        let wt = &self.weights[w];
        if n.len() != wt.d() {
            return Err(Error::Dimension(
                "exponent vector length differs from d".into(),
            ));
        }
        let v = wt.dot(n, self.config.precision_bits + 16);
        if wt.is_exact() || v.arch.is_exact_zero() || !v.arch.contains_zero() {
            return Ok(v);
        }
        let root = match wt.place {
            Place::Real { root } | Place::Complex { root } => root,
            Place::Padic { .. } => unreachable!(),
        };
        let bd = &self.blocks[wt.block];
        let z = bd.nf.zeta_n(n)?;
        log_abs_at(&bd.roots, root, &z, &self.config)
            .map(LogValue::from_interval)
            .map_err(|e| match e {
                Error::Precision { .. } => Error::Certification(alloc::format!(
                    "sign of χ·n undecided at {} of block {}",
                    wt.place,
                    wt.block
                )),
                e => e,
            })
    }

    /// Certified sign of χ·n: −1, 0 or 1.
    pub fn sign(&self, w: usize, n: &[i64]) -> Result<i8> {
        let v = self.chi(w, n)?;
        if v.is_zero() {
            return Ok(0);
        }
        let i = v.to_interval(self.config.precision_bits + 16);
        if i.is_positive() {
            Ok(1)
        } else if i.is_negative() {
            Ok(-1)
        } else {
            // Exact p-adic parts of one prime never straddle zero.
            Err(Error::Certification(alloc::format!(
                "sign of χ·n undecided for weight {}",
                w
            )))
        }
    }

    /// Sign of a class; every member must agree.
    pub fn class_sign(&self, class: usize, n: &[i64]) -> Result<i8> {
        let members = &self.partition.classes[class].members;
        let s = self.sign(members[0], n)?;
        for &m in &members[1..] {
            if self.sign(m, n)? != s {
                return Err(Error::Certification(alloc::format!(
                    "members of class {} disagree in sign",
                    class
                )));
            }
        }
        Ok(s)
    }

    /// U⁻ for α^n: the classes with χ·n < 0.
    pub fn stable_horospherical(&self, n: &[i64]) -> Result<Horospherical> {
        let mut h = Horospherical {
            stable: Vec::new(),
            unstable: Vec::new(),
            neutral: Vec::new(),
            dimension: 0,
            per_prime: BTreeMap::new(),
        };
        for c in 0..self.partition.classes.len() {
            match self.class_sign(c, n)? {
                -1 => {
                    h.stable.push(c);
                    for &m in &self.partition.classes[c].members {
                        let w = &self.weights[m];
                        h.dimension += w.delta;
                        *h.per_prime.entry(w.place.prime()).or_insert(0) += w.delta;
                    }
                }
                1 => h.unstable.push(c),
                _ => h.neutral.push(c),
            }
        }
        Ok(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::QMatrix;
    use alloc::vec;

    fn x2x3() -> SolenoidAction {
        SolenoidAction::new(
            vec![QMatrix::from_i64(&[&[2]]), QMatrix::from_i64(&[&[3]])],
            None,
        )
        .unwrap()
    }

    #[test]
    fn horospherical_examples() {
        let s = WeightSystem::new(&x2x3(), &Config::default()).unwrap();
        assert_eq!(s.partition().classes.len(), 3);
        let h = s.stable_horospherical(&[1, 1]).unwrap();
        assert_eq!(h.stable.len(), 2);
        assert_eq!(h.dimension, 2);
        assert_eq!(h.per_prime.get(&Some(2)), Some(&1));
        assert_eq!(h.per_prime.get(&Some(3)), Some(&1));
        let h = s.stable_horospherical(&[-1, -1]).unwrap();
        assert_eq!(h.stable.len(), 1);
        assert_eq!(h.per_prime.get(&None), Some(&1));
        let h = s.stable_horospherical(&[0, 0]).unwrap();
        assert!(h.stable.is_empty());
        assert_eq!(h.neutral.len(), 3);
    }

    #[test]
    fn neutral_archimedean_direction() {
        // ζ = (2+i, 2−i)-style: a Gaussian block where ζ_1/ζ_2 has modulus 1.
        let k = crate::numberfield::NumberField::new(&crate::exact::RatPoly::from_ints(&[1, 0, 1]))
            .unwrap();
        let a = k.element(&crate::exact::RatPoly::from_ints(&[2, 1]));
        let b = k.element(&crate::exact::RatPoly::from_ints(&[2, -1]));
        let act = SolenoidAction::new(vec![a.mul_matrix(), b.mul_matrix()], None).unwrap();
        let s = WeightSystem::new(&act, &Config::default()).unwrap();
        let arch = s.weights().iter().position(|w| !w.is_exact()).unwrap();
        assert!(s.chi(arch, &[1, -1]).unwrap().is_zero());
        assert_eq!(s.sign(arch, &[1, 1]).unwrap(), 1);
    }
}

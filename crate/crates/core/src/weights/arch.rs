use alloc::vec::Vec;

use num_traits::Zero;

use super::padic::{block_primes, padic_clusters};
use super::{Entries, LogValue, Place, WeightVector};
use crate::exact::{valuation, Rat};
use crate::interval::{isolate_roots, CBox, Interval, RootSet};
use crate::numberfield::{FieldElement, NumberFieldAction};
use crate::{Config, Error, Result};

/// Roots of the field polynomial at the working precision of `cfg`.
pub(crate) fn field_roots(nf: &NumberFieldAction, cfg: &Config) -> Result<RootSet> {
    isolate_roots(
        nf.field().poly(),
        cfg.precision_bits + 16,
        cfg.max_precision_bits,
    )
}

fn image(
    roots: &RootSet,
    idx: usize,
    beta: &FieldElement,
    bits: u32,
    cfg: &Config,
) -> Result<CBox> {
    let rs = roots.refine(bits, cfg.max_precision_bits)?;
    let z = rs.roots()[idx].enclosure();
    Ok(CBox::eval_poly(beta.poly(), &z, bits + 32))
}

/// Decides |β(z)| = 1 exactly for the root z of index `idx`.
///
/// At a real root this means β = ±1. Otherwise |w| = 1 forces w̄ = 1/w, so
/// the minimal polynomial M of β is self-reciprocal and w̄, 1/w are the same
/// root of M; when |w| ≠ 1 they are distinct roots of M and separate once
/// M's roots are isolated finely enough.
pub fn is_unit_modulus(
    roots: &RootSet,
    idx: usize,
    beta: &FieldElement,
    cfg: &Config,
) -> Result<bool> {
    if beta.is_zero() {
        return Ok(false);
    }
    let one = beta.field().one();
    if beta == &one || beta == &one.neg() {
        return Ok(true);
    }
    if roots.roots()[idx].is_real {
        return Ok(false);
    }
    let m = beta.minpoly().monic();
    if m.reciprocal().monic() != m {
        return Ok(false);
    }
    let mut bits = cfg.precision_bits.max(32);
    let mut mroots = isolate_roots(&m, bits, cfg.max_precision_bits)?;
    while bits <= cfg.max_precision_bits {
        mroots = mroots.refine(bits, cfg.max_precision_bits)?;
        let w = image(roots, idx, beta, bits, cfg)?;
        if !w.contains_zero() {
            let wc = w.conj();
            let wi = w.recip(bits + 32)?;
            let hc: Vec<usize> = (0..mroots.roots().len())
                .filter(|&i| mroots.roots()[i].meets(&wc))
                .collect();
            let hi: Vec<usize> = (0..mroots.roots().len())
                .filter(|&i| mroots.roots()[i].meets(&wi))
                .collect();
            if hc.len() == 1 && hi.len() == 1 {
                return Ok(hc == hi);
            }
        }
        bits *= 2;
    }
    Err(Error::Precision {
        achieved_bits: bits as i64 / 2,
    })
}

/// Certified enclosure of log|β(z)| of width below 2^-precision_bits and
/// certified sign; exactly zero when |β(z)| = 1.
pub fn log_abs_at(
    roots: &RootSet,
    idx: usize,
    beta: &FieldElement,
    cfg: &Config,
) -> Result<Interval> {
    if beta.is_zero() {
        return Err(Error::ZeroRoot);
    }
    let target = cfg.precision_bits as i64;
    let mut bits = cfg.precision_bits + 16;
    let mut unit_checked = false;
    loop {
        let w = image(roots, idx, beta, bits, cfg)?;
        if !w.contains_zero() {
            let l = w.ln_abs(bits + 16)?;
            if l.width_below(target) && !l.contains_zero() {
                return Ok(l.round(cfg.precision_bits + 16));
            }
            if l.contains_zero() && !unit_checked {
                unit_checked = true;
                if is_unit_modulus(roots, idx, beta, cfg)? {
                    return Ok(Interval::zero());
                }
            }
        }
        bits *= 2;
        if bits > cfg.max_precision_bits {
            return Err(Error::Precision {
                achieved_bits: bits as i64 / 2,
            });
        }
    }
}

/// One weight per real root and per conjugate pair of the field
/// polynomial, with δ = 1 and 2 respectively.
pub fn archimedean_weights(
    nf: &NumberFieldAction,
    roots: &RootSet,
    block: usize,
    cfg: &Config,
) -> Result<Vec<WeightVector>> {
    let mut out = Vec::new();
    for idx in roots.places() {
        let real = roots.roots()[idx].is_real;
        let entries = (0..nf.d())
            .map(|j| log_abs_at(roots, idx, &nf.zeta(j), cfg))
            .collect::<Result<Vec<_>>>()?;
        out.push(WeightVector {
            block,
            place: if real {
                Place::Real { root: idx }
            } else {
                Place::Complex { root: idx }
            },
            delta: if real { 1 } else { 2 },
            entries: Entries::Arch(entries),
        });
    }
    Ok(out)
}

/// Σ_σ δ(σ)·log|ζ_n|_σ over all places of the block.
///
/// The p-adic part is read off the valuation clusters and must agree
/// exactly with −Σ_p v_p(N(ζ_n))·log p; the archimedean part comes from
/// the isolated roots. The returned residual must contain 0.
pub fn check_product_formula(nf: &NumberFieldAction, n: &[i64], cfg: &Config) -> Result<Interval> {
    let roots = field_roots(nf, cfg)?;
    let z = nf.zeta_n(n)?;
    let norm = z.norm();
    let mut padic = LogValue::zero();
    for p in block_primes(nf)? {
        let mut s = Rat::zero();
        for (v, delta) in padic_clusters(nf, p, cfg.seed)? {
            let dot: Rat = v
                .iter()
                .zip(n)
                .map(|(c, &k)| c * Rat::from_integer(k.into()))
                .sum();
            s += dot * Rat::from_integer((delta as i64).into());
        }
        if s != Rat::from_integer(valuation(&norm, p).into()) {
            return Err(Error::Certification(alloc::format!(
                "valuation clusters at {} disagree with the norm",
                p
            )));
        }
        padic.add_log(p, -s);
    }
    let mut arch = Interval::zero();
    for idx in roots.places() {
        let l = log_abs_at(&roots, idx, &z, cfg)?;
        let l = if roots.roots()[idx].is_real {
            l
        } else {
            &l + &l
        };
        arch = &arch + &l;
    }
    Ok(LogValue::from_interval(arch)
        .add(&padic)
        .to_interval(cfg.precision_bits + 16))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, RatPoly};
    use crate::linalg::QMatrix;
    use crate::numberfield::diagonalize_block;

    fn cfg() -> Config {
        Config::default()
    }

    fn close(i: &Interval, v: f64) -> bool {
        (i.to_f64() - v).abs() < 1e-12 && i.width_below(60)
    }

    #[test]
    fn rational_block() {
        let nf = diagonalize_block(&[QMatrix::from_i64(&[&[2]]), QMatrix::from_i64(&[&[3]])], 0)
            .unwrap();
        let r = field_roots(&nf, &cfg()).unwrap();
        let w = archimedean_weights(&nf, &r, 0, &cfg()).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].delta, 1);
        assert!(close(&w[0].entry(0, 100), 2f64.ln()));
        assert!(close(&w[0].entry(1, 100), 3f64.ln()));
    }

    #[test]
    fn golden_block() {
        let nf =
            diagonalize_block(&[QMatrix::companion(&RatPoly::from_ints(&[-1, -1, 1]))], 0).unwrap();
        let r = field_roots(&nf, &cfg()).unwrap();
        let w = archimedean_weights(&nf, &r, 0, &cfg()).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let mut v: Vec<f64> = w.iter().map(|x| x.entry(0, 100).to_f64()).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((v[0] + phi.ln()).abs() < 1e-12 && (v[1] - phi.ln()).abs() < 1e-12);
        assert!(w.iter().all(|x| x.delta == 1));
    }

    #[test]
    fn gaussian_block_has_one_complex_place() {
        let nf = diagonalize_block(
            &[
                QMatrix::from_i64(&[&[0, -2], &[2, 0]]),
                QMatrix::scalar(2, rat(3)),
            ],
            0,
        )
        .unwrap();
        let r = field_roots(&nf, &cfg()).unwrap();
        let w = archimedean_weights(&nf, &r, 0, &cfg()).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].delta, 2);
        assert!(close(&w[0].entry(0, 100), 2f64.ln()));
        assert!(close(&w[0].entry(1, 100), 3f64.ln()));
    }

    #[test]
    fn unit_modulus_is_exact() {
        // (3+4i)/5 has modulus one without being a root of unity.
        let nf =
            diagonalize_block(&[QMatrix::companion(&RatPoly::from_ints(&[1, 0, 1]))], 0).unwrap();
        let r = field_roots(&nf, &cfg()).unwrap();
        let idx = r.places()[0];
        let w = nf.field().element(&RatPoly::new(alloc::vec![
            crate::exact::frac(3, 5),
            crate::exact::frac(4, 5)
        ]));
        assert!(is_unit_modulus(&r, idx, &w, &cfg()).unwrap());
        assert!(log_abs_at(&r, idx, &w, &cfg()).unwrap().is_exact_zero());
        let v = nf.field().element(&RatPoly::from_ints(&[1, 1]));
        assert!(!is_unit_modulus(&r, idx, &v, &cfg()).unwrap());
        // In ℚ(√2), −1 is a unit at both real places, 1+√2 at neither.
        let q2 =
            diagonalize_block(&[QMatrix::companion(&RatPoly::from_ints(&[-2, 0, 1]))], 0).unwrap();
        let r2 = field_roots(&q2, &cfg()).unwrap();
        assert!(is_unit_modulus(&r2, 0, &q2.field().one().neg(), &cfg()).unwrap());
        assert!(!is_unit_modulus(
            &r2,
            1,
            &q2.field().element(&RatPoly::from_ints(&[1, 1])),
            &cfg()
        )
        .unwrap());
    }

    #[test]
    fn product_formula_small_cases() {
        let nf = diagonalize_block(&[QMatrix::from_i64(&[&[2]]), QMatrix::from_i64(&[&[3]])], 0)
            .unwrap();
        for n in [[1, 0], [1, 1], [-3, 2]] {
            let r = check_product_formula(&nf, &n, &cfg()).unwrap();
            assert!(r.contains_zero() && r.width_below(30));
        }
        let nf =
            diagonalize_block(&[QMatrix::companion(&RatPoly::from_ints(&[5, -5, 1]))], 0).unwrap();
        for n in [[1], [7], [-4]] {
            let r = check_product_formula(&nf, &n, &cfg()).unwrap();
            assert!(r.contains_zero() && r.width_below(30));
        }
    }
}

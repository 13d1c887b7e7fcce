use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::integer::is_prime;
use super::modp::{Fp, PolyP};
use super::poly::RatPoly;
use super::rat::Rat;
use crate::{Error, Result};

/// f = unit · ∏ factor^multiplicity, factors integer-primitive with positive
/// leading coefficient, sorted by degree and then by coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rat,
    pub factors: Vec<(RatPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> RatPoly {
        let mut acc = RatPoly::constant(self.unit.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e as u32);
        }
        acc
    }
}

pub fn factor_poly(f: &RatPoly) -> Result<Factorization> {
    factor_poly_seeded(f, 0)
}

/// Complete factorization over ℚ. The seed drives the equal-degree
/// splitting; the result does not depend on it.
pub fn factor_poly_seeded(f: &RatPoly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (a, e) in f.squarefree_decomposition() {
        let (_, prim) = a.primitive_part();
        for g in factor_squarefree_primitive(&prim, &mut rng) {
            factors.push((RatPoly::from_bigints(&g), e));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut prod = RatPoly::one();
    for (g, e) in &factors {
        prod = &prod * &g.pow(*e as u32);
    }
    let unit = f.lc() / prod.lc();
    Ok(Factorization { unit, factors })
}

pub fn is_irreducible(f: &RatPoly) -> bool {
    if f.degree() < 1 {
        return false;
    }
    match factor_poly(f) {
        Ok(fz) => fz.factors.len() == 1 && fz.factors[0].1 == 1,
        Err(_) => false,
    }
}

fn content_int(f: &[BigInt]) -> BigInt {
    f.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    v
}

/// Exact division in ℤ[x], None if not divisible.
fn int_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if a.len() < b.len() {
        return None;
    }
    let lb = b.last().unwrap();
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    r.iter().take(db).all(|c| c.is_zero()).then_some(q)
}

fn sym_mod(v: &BigInt, m: &BigInt) -> BigInt {
    let r = v.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn to_ints(p: &[u64]) -> Vec<BigInt> {
    p.iter().map(|&c| BigInt::from(c)).collect()
}

fn mod_poly(p: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = p.iter().map(|c| c.mod_floor(m)).collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn int_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect()
}

fn int_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut v: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn scale_int(a: &[BigInt], s: &BigInt) -> Vec<BigInt> {
    a.iter().map(|c| c * s).collect()
}

/// Lifts f ≡ g·h (mod p) to mod p^k, with g monic and lc(h) = lc(f).
fn hensel_two(f: &[BigInt], g0: &PolyP, h0: &PolyP, fp: Fp, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let p = BigInt::from(fp.p);
    let lc = f.last().unwrap().clone();
    let (_, s, t) = fp.ext_gcd(g0, h0);
    let mut g = to_ints(g0);
    let mut h = to_ints(h0);
    // Force lc(h) = lc(f) exactly so f − g·h drops in degree.
    *h.last_mut().unwrap() = lc;
    let mut m = p.clone();
    for _ in 1..k {
        let diff = int_sub(f, &int_mul(&g, &h));
        let e: Vec<BigInt> = diff.iter().map(|c| c / &m).collect();
        let e = fp.from_ints(&e);
        if !e.is_empty() {
            let (q, tau) = fp.div_rem(&fp.mul(&t, &e), g0);
            let sigma = fp.add(&fp.mul(&s, &e), &fp.mul(&q, h0));
            g = int_add(&g, &scale_int(&to_ints(&tau), &m));
            h = int_add(&h, &scale_int(&to_ints(&sigma), &m));
        }
        m *= &p;
        g = mod_poly(&g, &m);
        // Keep the exact leading coefficient of h.
        let hl = h.len();
        let lead = h[hl - 1].clone();
        h = mod_poly(&h, &m);
        h.resize(hl, BigInt::zero());
        h[hl - 1] = lead;
    }
    (g, h)
}

/// Lifts a factorization lc(f)·∏ fs_i of f mod p to monic factors mod p^k.
fn hensel_multi(f: &[BigInt], fs: &[PolyP], fp: Fp, k: u32) -> Vec<Vec<BigInt>> {
    let pk = BigInt::from(fp.p).pow(k);
    if fs.len() == 1 {
        let lc = f.last().unwrap();
        let inv = lc.modinv(&pk).expect("lc invertible mod p");
        return vec![mod_poly(&scale_int(f, &inv), &pk)];
    }
    let mid = fs.len() / 2;
    let prod = |s: &[PolyP]| s.iter().fold(vec![1u64], |acc, g| fp.mul(&acc, g));
    let g0 = prod(&fs[..mid]);
    let lcp = fp.reduce_int(f.last().unwrap());
    let h0 = fp.scale(&prod(&fs[mid..]), lcp);
    let (g, h) = hensel_two(f, &g0, &h0, fp, k);
    let mut out = hensel_multi(&g, &fs[..mid], fp, k);
    out.extend(hensel_multi(&h, &fs[mid..], fp, k));
    out
}

fn is_good_prime(f: &[BigInt], p: u64) -> Option<PolyP> {
    let fp = Fp { p };
    let lc = f.last().unwrap();
    if (lc % BigInt::from(p)).is_zero() {
        return None;
    }
    let fm = fp.from_ints(f);
    let g = fp.gcd(&fm, &fp.derivative(&fm));
    (g.len() == 1).then(|| fp.monic(&fm))
}

/// Factors a squarefree primitive integer polynomial with positive
/// leading coefficient into primitive irreducibles.
fn factor_squarefree_primitive(f: &[BigInt], rng: &mut ChaCha8Rng) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // Strip a root at zero first; it never survives as a modular factor issue.
    if f[0].is_zero() {
        let rest: Vec<BigInt> = f[1..].to_vec();
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        out.extend(factor_squarefree_primitive(&rest, rng));
        return out;
    }
    // Pick the good prime with the fewest modular factors among a few.
    let mut best: Option<(u64, Vec<PolyP>)> = None;
    let mut tried = 0;
    let mut p = 3u64;
    while tried < 5 {
        if is_prime(p) {
            if let Some(fm) = is_good_prime(f, p) {
                let fs = Fp { p }.factor_squarefree(&fm, rng);
                tried += 1;
                if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
                    best = Some((p, fs));
                }
                if best.as_ref().unwrap().1.len() == 1 {
                    break;
                }
            }
        }
        p += 2;
    }
    let (p, fs) = best.unwrap();
    if fs.len() == 1 {
        return vec![f.to_vec()];
    }
    // Mignotte-style bound: every coefficient of a factor of f, times lc(f),
    // is below 2^n · ‖f‖₂ · |lc|; the modulus must exceed twice that.
    let norm2: BigUint = f
        .iter()
        .map(|c| (c * c).magnitude().clone())
        .sum::<BigUint>()
        .sqrt()
        + 1u32;
    let lc = f.last().unwrap().clone();
    let bound = BigInt::from(norm2) * (BigInt::one() << n) * lc.abs() * 2;
    let mut k = 1u32;
    let pb = BigInt::from(p);
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    let lifted = hensel_multi(f, &fs, Fp { p }, k);
    zassenhaus(f.to_vec(), lifted, &pk)
}

fn zassenhaus(mut f: Vec<BigInt>, mut lifted: Vec<Vec<BigInt>>, pk: &BigInt) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let lc = f.last().unwrap().clone();
            let mut cand = vec![lc];
            for &i in &idx {
                cand = int_mul(&cand, &lifted[i]);
                cand = cand.iter().map(|c| sym_mod(c, pk)).collect();
            }
            let c = content_int(&cand);
            let cand: Vec<BigInt> = cand.iter().map(|v| v / &c).collect();
            if let Some(q) = int_div_exact(&f, &cand) {
                let mut cand = cand;
                if cand.last().unwrap().is_negative() {
                    cand = cand.iter().map(|v| -v).collect();
                }
                out.push(cand);
                let qc = content_int(&q);
                f = q.iter().map(|v| v / &qc).collect();
                if f.last().unwrap().is_negative() {
                    f = f.iter().map(|v| -v).collect();
                }
                for &i in idx.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
            // Next s-subset in lexicographic order.
            let mut i = s;
            loop {
                if i == 0 {
                    s += 1;
                    continue 'outer;
                }
                i -= 1;
                if idx[i] < r - s + i {
                    idx[i] += 1;
                    for j in i + 1..s {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    if f.len() > 1 {
        out.push(f);
    }
    out
}

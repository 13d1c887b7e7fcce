//! Dense polynomials over F_p (p < 2^31), ascending coefficients.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

pub(crate) type PolyP = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn inv(self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    pub fn pow(self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        acc
    }

    pub fn reduce_int(self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    pub fn from_ints(self, c: &[BigInt]) -> PolyP {
        let mut v: PolyP = c.iter().map(|x| self.reduce_int(x)).collect();
        trim(&mut v);
        v
    }

    pub fn add(self, a: &[u64], b: &[u64]) -> PolyP {
        let n = a.len().max(b.len());
        let mut v: PolyP = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        trim(&mut v);
        v
    }

    pub fn sub(self, a: &[u64], b: &[u64]) -> PolyP {
        let n = a.len().max(b.len());
        let mut v: PolyP = (0..n)
            .map(|i| {
                (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0)) % self.p
            })
            .collect();
        trim(&mut v);
        v
    }

    pub fn mul(self, a: &[u64], b: &[u64]) -> PolyP {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut v = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                v[i + j] = (v[i + j] + x * y) % self.p;
            }
        }
        trim(&mut v);
        v
    }

    pub fn scale(self, a: &[u64], s: u64) -> PolyP {
        let mut v: PolyP = a.iter().map(|&x| x * s % self.p).collect();
        trim(&mut v);
        v
    }

    pub fn monic(self, a: &[u64]) -> PolyP {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.scale(a, self.inv(l)),
        }
    }

    pub fn div_rem(self, a: &[u64], b: &[u64]) -> (PolyP, PolyP) {
        assert!(!b.is_empty());
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let li = self.inv(*b.last().unwrap());
        let db = b.len() - 1;
        let mut r = a.to_vec();
        let mut q = vec![0u64; a.len() - db];
        for i in (0..q.len()).rev() {
            let c = r[i + db] * li % self.p;
            if c == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + self.p - c * bj % self.p) % self.p;
            }
            q[i] = c;
        }
        r.truncate(db);
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    pub fn rem(self, a: &[u64], b: &[u64]) -> PolyP {
        self.div_rem(a, b).1
    }

    pub fn gcd(self, a: &[u64], b: &[u64]) -> PolyP {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// (g, s, t) with s·a + t·b = g monic.
    pub fn ext_gcd(self, a: &[u64], b: &[u64]) -> (PolyP, PolyP, PolyP) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1): (PolyP, PolyP) = (vec![1], Vec::new());
        let (mut t0, mut t1): (PolyP, PolyP) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            r0 = core::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = core::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = core::mem::replace(&mut t1, t);
        }
        let li = self.inv(*r0.last().unwrap());
        (
            self.scale(&r0, li),
            self.scale(&s0, li),
            self.scale(&t0, li),
        )
    }

    pub fn derivative(self, a: &[u64]) -> PolyP {
        let mut v: PolyP = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % self.p) * c % self.p)
            .collect();
        trim(&mut v);
        v
    }

    pub fn powmod(self, base: &[u64], e: &BigUint, m: &[u64]) -> PolyP {
        let mut acc: PolyP = self.rem(&[1], m);
        let mut b = self.rem(base, m);
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &b), m);
            }
            b = self.rem(&self.mul(&b, &b), m);
        }
        acc
    }

    /// Distinct-degree factorization of a monic squarefree f:
    /// pairs (product of all irreducible factors of degree d, d).
    pub fn ddf(self, f: &[u64]) -> Vec<(PolyP, usize)> {
        let mut out = Vec::new();
        let mut f = f.to_vec();
        let x: PolyP = vec![0, 1];
        let mut h = x.clone();
        let mut d = 0;
        let pb = BigUint::from(self.p);
        while f.len() > 1 {
            d += 1;
            if 2 * d > f.len() - 1 {
                let deg = f.len() - 1;
                out.push((f, deg));
                break;
            }
            h = self.powmod(&h, &pb, &f);
            let g = self.gcd(&f, &self.sub(&h, &x));
            if g.len() > 1 {
                f = self.div_rem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
        }
        out
    }

    /// Cantor–Zassenhaus equal-degree splitting of a monic squarefree f
    /// whose irreducible factors all have degree d (p odd).
    pub fn edf<R: Rng>(self, f: &[u64], d: usize, rng: &mut R) -> Vec<PolyP> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        let e = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: PolyP = {
                let mut v: PolyP = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
                trim(&mut v);
                v
            };
            if a.len() <= 1 {
                continue;
            }
            let b = self.sub(&self.powmod(&a, &e, f), &[1]);
            let g = self.gcd(f, &b);
            if g.len() > 1 && g.len() < f.len() {
                let h = self.div_rem(f, &g).0;
                let mut out = self.edf(&g, d, rng);
                out.extend(self.edf(&self.monic(&h), d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a monic squarefree polynomial.
    pub fn factor_squarefree<R: Rng>(self, f: &[u64], rng: &mut R) -> Vec<PolyP> {
        let mut out = Vec::new();
        for (g, d) in self.ddf(f) {
            out.extend(self.edf(&g, d, rng));
        }
        out.sort();
        out
    }
}

pub(crate) fn trim(v: &mut PolyP) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn factors_mod_p() {
        let fp = Fp { p: 7 };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // x^4 - 1 = (x-1)(x+1)(x^2+1) mod 7
        let f = vec![6, 0, 0, 0, 1];
        let fs = fp.factor_squarefree(&f, &mut rng);
        assert_eq!(fs, vec![vec![1, 0, 1], vec![1, 1], vec![6, 1]]);
        let prod = fs.iter().fold(vec![1], |acc, g| fp.mul(&acc, g));
        assert_eq!(prod, f);
    }

    #[test]
    fn bezout_mod_p() {
        let fp = Fp { p: 11 };
        let a = vec![3, 1, 4, 1];
        let b = vec![5, 9, 2];
        let (g, s, t) = fp.ext_gcd(&a, &b);
        assert_eq!(fp.add(&fp.mul(&s, &a), &fp.mul(&t, &b)), g);
    }
}

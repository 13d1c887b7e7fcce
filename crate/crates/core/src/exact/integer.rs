use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::RatPoly;
use crate::{Error, Result};

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL_PRIMES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn big_probable_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime(v);
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for &a in &SMALL_PRIMES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let (mut x, mut y) = (BigUint::from(2u32), BigUint::from(2u32));
        loop {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            let g = diff.gcd(n);
            if g == *n {
                break;
            }
            if g != one {
                return g;
            }
        }
        c += 1u32;
    }
}

/// Prime factorization of a positive integer, primes ascending.
/// Fails if some prime factor does not fit in 64 bits.
pub fn factor_integer(n: &BigUint) -> Result<Vec<(u64, u32)>> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    if n.is_zero() {
        return Err(Error::InvalidArgument("factor of zero".into()));
    }
    let mut n = n.clone();
    let mut p = 2u64;
    while p < 10_000 && !n.is_one() {
        let bp = BigUint::from(p);
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = Vec::new();
    if !n.is_one() {
        stack.push(n);
    }
    let mut big: Vec<u64> = Vec::new();
    while let Some(m) = stack.pop() {
        if big_probable_prime(&m) {
            big.push(m.to_u64().ok_or(Error::PrimeTooLarge)?);
        } else {
            let d = pollard_rho(&m);
            stack.push(&m / &d);
            stack.push(d);
        }
    }
    big.sort_unstable();
    for q in big {
        match out.last_mut() {
            Some((r, e)) if *r == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    Ok(out)
}

pub fn euler_phi(n: u64) -> u64 {
    let mut n0 = n;
    let mut r = n;
    let mut p = 2;
    while p * p <= n0 {
        if n0.is_multiple_of(p) {
            while n0.is_multiple_of(p) {
                n0 /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n0 > 1 {
        r -= r / n0;
    }
    r
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

/// The n-th cyclotomic polynomial Φ_n (n ≥ 1).
pub fn cyclotomic(n: u64) -> RatPoly {
    assert!(n >= 1);
    let mut f = RatPoly::from_ints(&[-1, 1]);
    if n == 1 {
        return f;
    }
    // x^n − 1 divided by Φ_d for every proper divisor d.
    f = RatPoly::monomial(num_traits::One::one(), n as usize) - RatPoly::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            f = f.exact_div(&cyclotomic(d)).expect("cyclotomic divisor");
        }
    }
    f
}

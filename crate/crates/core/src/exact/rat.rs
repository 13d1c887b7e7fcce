use alloc::format;
use core::str::FromStr;

pub use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational: always reduced with a positive denominator.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"n"`, with optional sign and surrounding whitespace.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational: {:?}", s));
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rat::new(num, den))
}

/// v_p of a nonzero rational.
pub fn valuation(r: &Rat, p: u64) -> i64 {
    debug_assert!(!r.is_zero());
    int_valuation(r.numer(), p) as i64 - int_valuation(r.denom(), p) as i64
}

pub(crate) fn int_valuation(n: &BigInt, p: u64) -> u64 {
    if n.is_zero() {
        return u64::MAX;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Least common multiple of the denominators.
pub(crate) fn denom_lcm<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Simplest rational in the closed interval [lo, hi] (Stern–Brocot descent).
pub(crate) fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
    debug_assert!(lo <= hi);
    if lo.is_positive() {
        simplest_pos(lo, hi)
    } else if hi.is_negative() {
        -simplest_pos(&-hi, &-lo)
    } else {
        Rat::zero()
    }
}

fn simplest_pos(lo: &Rat, hi: &Rat) -> Rat {
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    if fl.clone() + Rat::one() <= *hi {
        return fl + Rat::one();
    }
    // Same integer part: recurse on reciprocals of the fractional parts.
    let a = lo - &fl;
    let b = hi - &fl;
    let inner = simplest_pos(&b.recip(), &a.recip());
    fl + inner.recip()
}

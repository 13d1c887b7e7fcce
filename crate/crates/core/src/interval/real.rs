use alloc::format;
use alloc::string::String;
use core::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use super::dyadic::Dyadic;
use crate::exact::Rat;
use crate::{Error, Result};

/// Closed interval [lo, hi] with dyadic endpoints. Every operation rounds
/// outward, so the true value is always enclosed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    pub fn point(d: Dyadic) -> Self {
        Interval {
            lo: d.clone(),
            hi: d,
        }
    }

    pub fn zero() -> Self {
        Self::point(Dyadic::zero())
    }

    pub fn one() -> Self {
        Self::point(Dyadic::from_i64(1))
    }

    pub fn from_i64(v: i64) -> Self {
        Self::point(Dyadic::from_i64(v))
    }

    pub fn from_rat(r: &Rat, prec: u32) -> Self {
        if r.denom().is_one() {
            return Self::point(Dyadic::from_bigint(r.numer().clone()));
        }
        Interval {
            lo: Dyadic::from_rat(r, prec, false),
            hi: Dyadic::from_rat(r, prec, true),
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    /// Is the width at most 2^-bits?
    pub fn width_below(&self, bits: i64) -> bool {
        let w = self.width();
        w.is_zero() || w.ilog2() < -bits
    }

    pub fn mid(&self) -> Dyadic {
        (&self.lo + &self.hi).shl(-1)
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, d: &Dyadic) -> bool {
        &self.lo <= d && d <= &self.hi
    }

    pub fn contains_rat(&self, r: &Rat) -> bool {
        &self.lo.to_rat() <= r && r <= &self.hi.to_rat()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }

    pub fn overlaps(&self, o: &Self) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn intersect(&self, o: &Self) -> Option<Self> {
        let lo = core::cmp::max(&self.lo, &o.lo).clone();
        let hi = core::cmp::min(&self.hi, &o.hi).clone();
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, o: &Self) -> Self {
        Interval {
            lo: core::cmp::min(&self.lo, &o.lo).clone(),
            hi: core::cmp::max(&self.hi, &o.hi).clone(),
        }
    }

    /// Is every point of self strictly below every point of o?
    pub fn lt(&self, o: &Self) -> bool {
        self.hi < o.lo
    }

    pub fn round(&self, prec: u32) -> Self {
        Interval {
            lo: self.lo.round(prec, false),
            hi: self.hi.round(prec, true),
        }
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().round(prec, false);
        let hi = c.iter().max().unwrap().round(prec, true);
        Interval { lo, hi }
    }

    pub fn sqr(&self, prec: u32) -> Self {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        let hi = core::cmp::max(&a, &b).round(prec, true);
        let lo = if self.contains_zero() {
            Dyadic::zero()
        } else {
            core::cmp::min(&a, &b).round(prec, false)
        };
        Interval { lo, hi }
    }

    pub fn mul_rat(&self, r: &Rat, prec: u32) -> Self {
        self.mul(&Self::from_rat(r, prec), prec)
    }

    pub fn recip(&self, prec: u32) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        let one = Dyadic::from_i64(1);
        Ok(Interval {
            lo: Dyadic::div(&one, &self.hi, prec, false),
            hi: Dyadic::div(&one, &self.lo, prec, true),
        })
    }

    pub fn div(&self, o: &Self, prec: u32) -> Result<Self> {
        Ok(self.mul(&o.recip(prec)?, prec))
    }

    pub fn abs(&self) -> Self {
        if self.lo.is_negative() && self.hi.is_positive() {
            Interval {
                lo: Dyadic::zero(),
                hi: core::cmp::max(-&self.lo, self.hi.clone()),
            }
        } else if self.hi.is_negative() || self.hi.is_zero() {
            -self
        } else {
            self.clone()
        }
    }

    /// max(0, x).
    pub fn max0(&self) -> Self {
        let z = Dyadic::zero();
        Interval {
            lo: core::cmp::max(&self.lo, &z).clone(),
            hi: core::cmp::max(&self.hi, &z).clone(),
        }
    }

    pub fn sqrt(&self, prec: u32) -> Result<Self> {
        if self.hi.is_negative() {
            return Err(Error::InvalidArgument("sqrt of negative interval".into()));
        }
        let lo = if self.lo.is_positive() {
            self.lo.sqrt(prec, false)
        } else {
            Dyadic::zero()
        };
        Ok(Interval {
            lo,
            hi: self.hi.sqrt(prec, true),
        })
    }

    /// Natural logarithm; requires a strictly positive interval.
    pub fn ln(&self, prec: u32) -> Result<Self> {
        if !self.is_positive() {
            return Err(Error::InvalidArgument("log of nonpositive interval".into()));
        }
        let l2 = ln2(prec + 8);
        let a = ln_point(&self.lo, prec + 8, &l2);
        let b = if self.hi == self.lo {
            a.clone()
        } else {
            ln_point(&self.hi, prec + 8, &l2)
        };
        Ok(Interval {
            lo: a.lo.round(prec, false),
            hi: b.hi.round(prec, true),
        })
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    /// "[lo, hi]" with outward-rounded decimals.
    pub fn to_decimal(&self, digits: usize) -> String {
        format!(
            "[{}, {}]",
            self.lo.to_decimal(digits, false),
            self.hi.to_decimal(digits, true)
        )
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

/// 2·atanh(t) for 0 ≤ t ≤ 1/3 given as an interval, with a tail bound.
fn two_atanh(t: &Interval, prec: u32) -> Interval {
    let t2 = t.sqr(prec);
    let mut term = t.clone();
    let mut sum = Interval::zero();
    let mut k = 0i64;
    loop {
        let d = Interval::from_i64(2 * k + 1);
        let piece = term.div(&d, prec).unwrap();
        sum = (&sum + &piece).round(prec);
        term = term.mul(&t2, prec);
        k += 1;
        // Remainder ≤ t^{2k+1} / ((2k+1)(1 − t²)) ≤ term_hi · 9/8 / (2k+1) for t ≤ 1/3.
        let bound = Dyadic::div(&term.hi().shl(1), &Dyadic::from_i64(2 * k + 1), 32, true);
        if bound.is_zero() || bound.ilog2() < -(prec as i64) - 4 {
            let tail = Interval::new(Dyadic::zero(), bound);
            return (&sum + &tail).round(prec).scale2(1);
        }
    }
}

impl Interval {
    fn scale2(&self, k: i64) -> Self {
        Interval {
            lo: self.lo.shl(k),
            hi: self.hi.shl(k),
        }
    }
}

/// ln 2 = 2·atanh(1/3), enclosed to `prec` bits.
pub fn ln2(prec: u32) -> Interval {
    let third = Interval::from_rat(&Rat::new(1.into(), 3.into()), prec + 8);
    two_atanh(&third, prec + 8).round(prec)
}

/// Enclosure of ln x for a positive dyadic x.
fn ln_point(x: &Dyadic, prec: u32, l2: &Interval) -> Interval {
    // x = 2^k · z with z ∈ [1, 2); ln z = 2 atanh((z − 1)/(z + 1)).
    let k = x.ilog2();
    let z = x.shl(-k);
    let one = Dyadic::from_i64(1);
    let num = &z - &one;
    let den = &z + &one;
    let t = if num.is_zero() {
        Interval::zero()
    } else {
        Interval::new(
            Dyadic::div(&num, &den, prec, false),
            Dyadic::div(&num, &den, prec, true),
        )
    };
    let lz = if t.is_exact_zero() {
        Interval::zero()
    } else {
        two_atanh(&t, prec)
    };
    let kl = l2.mul(&Interval::from_i64(k), prec);
    (&kl + &lz).round(prec)
}

impl Zero for Interval {
    fn zero() -> Self {
        Interval::zero()
    }
    fn is_zero(&self) -> bool {
        self.is_exact_zero()
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        &self + &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat};

    fn close(i: &Interval, v: f64, tol: f64) -> bool {
        (i.to_f64() - v).abs() < tol && i.width().to_f64() < tol
    }

    #[test]
    fn ln_values() {
        let p = 128;
        assert!(close(&ln2(p), core::f64::consts::LN_2, 1e-15));
        assert!(ln2(p).width_below(120));
        let l6 = Interval::from_i64(6).ln(p).unwrap();
        assert!(close(&l6, 6f64.ln(), 1e-15));
        let l = Interval::from_rat(&frac(1, 10), p).ln(p).unwrap();
        assert!(close(&l, 0.1f64.ln(), 1e-15));
        assert!(Interval::one().ln(p).unwrap().is_exact_zero());
        assert!(Interval::zero().ln(p).is_err());
    }

    #[test]
    fn ln_additivity_encloses() {
        let p = 200;
        let a = Interval::from_i64(2).ln(p).unwrap();
        let b = Interval::from_i64(3).ln(p).unwrap();
        let c = Interval::from_i64(6).ln(p).unwrap();
        assert!((&(&a + &b) - &c).contains_zero());
        assert!((&(&a + &b) - &c).width_below(190));
    }

    #[test]
    fn arithmetic_encloses() {
        let p = 64;
        let x = Interval::from_rat(&frac(1, 3), p);
        let y = Interval::from_rat(&frac(-2, 7), p);
        assert!(x.mul(&y, p).contains_rat(&frac(-2, 21)));
        assert!(x.div(&y, p).unwrap().contains_rat(&frac(-7, 6)));
        assert!((&x - &y).contains_rat(&frac(13, 21)));
        assert!(Interval::from_i64(2)
            .sqrt(p)
            .unwrap()
            .sqr(p)
            .contains_rat(&rat(2)));
        assert_eq!(y.abs().lo(), &Dyadic::from_rat(&frac(2, 7), p, false));
    }

    #[test]
    fn decimal_rendering() {
        let x = Interval::from_rat(&frac(1, 3), 64);
        assert_eq!(x.to_decimal(5), "[0.33333, 0.33334]");
    }
}

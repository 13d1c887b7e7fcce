use alloc::format;
use alloc::string::String;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::Rat;

/// m · 2^e with m odd (or zero with e = 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    m: BigInt,
    e: i64,
}

impl Dyadic {
    pub fn new(m: BigInt, e: i64) -> Self {
        if m.is_zero() {
            return Dyadic { m, e: 0 };
        }
        let tz = m.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Dyadic { m, e }
        } else {
            Dyadic {
                m: m >> tz,
                e: e + tz as i64,
            }
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            m: BigInt::zero(),
            e: 0,
        }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Self::new(v, 0)
    }

    /// 2^k.
    pub fn pow2(k: i64) -> Self {
        Dyadic {
            m: BigInt::one(),
            e: k,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.m
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.m.is_positive()
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            m: self.m.abs(),
            e: self.e,
        }
    }

    pub fn shl(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            m: self.m.clone(),
            e: self.e + k,
        }
    }

    /// Bit length of the mantissa.
    pub fn bits(&self) -> u64 {
        self.m.bits()
    }

    /// floor(log2 |x|) for x ≠ 0.
    pub fn ilog2(&self) -> i64 {
        self.m.bits() as i64 - 1 + self.e
    }

    /// Rounds to at most `prec` significant bits, toward +∞ if `up`,
    /// otherwise toward −∞.
    pub fn round(&self, prec: u32, up: bool) -> Self {
        let b = self.m.bits();
        if b <= prec as u64 {
            return self.clone();
        }
        let s = b - prec as u64;
        let m = shr_dir(&self.m, s, up);
        Self::new(m, self.e + s as i64)
    }

    pub fn from_rat(r: &Rat, prec: u32, up: bool) -> Self {
        Self::div(
            &Self::from_bigint(r.numer().clone()),
            &Self::from_bigint(r.denom().clone()),
            prec,
            up,
        )
    }

    pub fn to_rat(&self) -> Rat {
        if self.e >= 0 {
            Rat::from_integer(&self.m << self.e as usize)
        } else {
            Rat::new(self.m.clone(), BigInt::one() << (-self.e) as usize)
        }
    }

    /// a / b rounded to `prec` bits in the given direction. Panics on b = 0.
    pub fn div(a: &Self, b: &Self, prec: u32, up: bool) -> Self {
        assert!(!b.is_zero(), "dyadic division by zero");
        if a.is_zero() {
            return Self::zero();
        }
        let s = (prec as i64 + b.m.bits() as i64 - a.m.bits() as i64 + 2).max(0);
        let num = &a.m << s as usize;
        let q = if up {
            num.div_ceil(&b.m)
        } else {
            num.div_floor(&b.m)
        };
        Self::new(q, a.e - b.e - s).round(prec, up)
    }

    /// Square root of a nonnegative value, directed rounding.
    pub fn sqrt(&self, prec: u32, up: bool) -> Self {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return Self::zero();
        }
        let mut s = (2 * prec as i64 + 4 - self.m.bits() as i64).max(0);
        if (self.e - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let n = (&self.m << s as usize).magnitude().clone();
        let mut r = n.sqrt();
        if up && &r * &r != n {
            r += 1u32;
        }
        Self::new(BigInt::from_biguint(Sign::Plus, r), (self.e - s) / 2).round(prec, up)
    }

    pub fn to_f64(&self) -> f64 {
        // Good enough for diagnostics and initial guesses.
        let b = self.m.bits() as i64;
        let shift = (b - 60).max(0);
        let top = (&self.m >> shift as usize).to_f64().unwrap_or(0.0);
        let mut v = top;
        let mut k = self.e + shift;
        while k > 0 {
            let step = k.min(60);
            v *= (1u64 << step) as f64;
            k -= step;
        }
        while k < 0 {
            let step = (-k).min(60);
            v /= (1u64 << step) as f64;
            k += step;
        }
        v
    }

    /// Decimal string with `digits` fractional digits, rounded in the given
    /// direction.
    pub fn to_decimal(&self, digits: usize, up: bool) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let n = if self.e >= 0 {
            (&self.m << self.e as usize) * &scale
        } else {
            let num = &self.m * &scale;
            let den = BigInt::one() << (-self.e) as usize;
            if up {
                num.div_ceil(&den)
            } else {
                num.div_floor(&den)
            }
        };
        let neg = n.is_negative();
        let mut s = n.abs().to_str_radix(10);
        if digits > 0 {
            while s.len() <= digits {
                s.insert(0, '0');
            }
            s.insert(s.len() - digits, '.');
        }
        if neg {
            format!("-{}", s)
        } else {
            s
        }
    }
}

fn shr_dir(m: &BigInt, s: u64, up: bool) -> BigInt {
    // BigInt's >> rounds toward −∞.
    if up {
        -((-m) >> s as usize)
    } else {
        m >> s as usize
    }
}

impl Ord for Dyadic {
    fn cmp(&self, o: &Self) -> Ordering {
        let (sa, sb) = (self.m.sign(), o.m.sign());
        if sa != sb || self.is_zero() {
            return sign_rank(sa).cmp(&sign_rank(sb));
        }
        if self.e >= o.e {
            (&self.m << (self.e - o.e) as usize).cmp(&o.m)
        } else {
            self.m.cmp(&(&o.m << (o.e - self.e) as usize))
        }
    }
}

fn sign_rank(s: Sign) -> i8 {
    match s {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.e.min(o.e);
        let a = &self.m << (self.e - e) as usize;
        let b = &o.m << (o.e - e) as usize;
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, o: &Dyadic) -> Dyadic {
        self + &(-o)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, o: &Dyadic) -> Dyadic {
        if self.is_zero() || o.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            m: &self.m * &o.m,
            e: self.e + o.e,
        }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            m: -&self.m,
            e: self.e,
        }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            m: -self.m,
            e: self.e,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    #[test]
    fn rounding_directions() {
        let x = Dyadic::from_i64(0b1011011);
        assert_eq!(x.round(3, false), Dyadic::from_i64(0b1010000));
        assert_eq!(x.round(3, true), Dyadic::from_i64(0b1100000));
        let y = -&x;
        assert_eq!(y.round(3, false), Dyadic::from_i64(-0b1100000));
        assert_eq!(y.round(3, true), Dyadic::from_i64(-0b1010000));
    }

    #[test]
    fn division_brackets() {
        let third = frac(1, 3);
        let lo = Dyadic::from_rat(&third, 64, false);
        let hi = Dyadic::from_rat(&third, 64, true);
        assert!(lo.to_rat() < third && third < hi.to_rat());
        assert!(hi.to_rat() - lo.to_rat() < frac(1, 1 << 62));
    }

    #[test]
    fn sqrt_brackets() {
        let two = Dyadic::from_i64(2);
        let lo = two.sqrt(80, false);
        let hi = two.sqrt(80, true);
        assert!((&lo * &lo) < two && two < (&hi * &hi));
    }

    #[test]
    fn decimals() {
        let x = Dyadic::new(BigInt::from(-5), -2); // −1.25
        assert_eq!(x.to_decimal(1, false), "-1.3");
        assert_eq!(x.to_decimal(1, true), "-1.2");
        assert_eq!(Dyadic::from_i64(3).to_decimal(2, false), "3.00");
        assert_eq!(
            Dyadic::new(BigInt::from(1), -3).to_decimal(4, false),
            "0.1250"
        );
    }

    #[test]
    fn ordering() {
        let a = Dyadic::new(BigInt::from(3), -5);
        let b = Dyadic::new(BigInt::from(1), -3);
        assert!(a < b);
        assert!(-&a > -&b);
        assert!(Dyadic::zero() < a);
        assert_eq!((a.to_f64() * 32.0).round(), 3.0);
    }
}

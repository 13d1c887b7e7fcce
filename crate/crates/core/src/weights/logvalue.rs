use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::exact::Rat;
use crate::interval::Interval;

/// A real number Σ c_p·log p + a, with exact rational c_p and an interval a.
///
/// p-adic contributions stay exact; only archimedean terms are intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogValue {
    pub exact: BTreeMap<u64, Rat>,
    pub arch: Interval,
}

impl LogValue {
    pub fn zero() -> Self {
        LogValue {
            exact: BTreeMap::new(),
            arch: Interval::zero(),
        }
    }

    /// c·log p.
    pub fn log_prime(p: u64, c: Rat) -> Self {
        let mut v = Self::zero();
        v.add_log(p, c);
        v
    }

    pub fn from_interval(arch: Interval) -> Self {
        LogValue {
            exact: BTreeMap::new(),
            arch,
        }
    }

    pub fn add_log(&mut self, p: u64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.exact.entry(p).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.exact.remove(&p);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (p, c) in &o.exact {
            r.add_log(*p, c.clone());
        }
        r.arch = &r.arch + &o.arch;
        r
    }

    pub fn neg(&self) -> Self {
        LogValue {
            exact: self.exact.iter().map(|(p, c)| (*p, -c)).collect(),
            arch: -&self.arch,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, r: &Rat, prec: u32) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        let arch = if r.is_one() {
            self.arch.clone()
        } else {
            self.arch.mul_rat(r, prec)
        };
        LogValue {
            exact: self.exact.iter().map(|(p, c)| (*p, c * r)).collect(),
            arch,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.arch.is_exact_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.exact.is_empty() && self.arch.is_exact_zero()
    }

    /// Enclosure of the real value.
    pub fn to_interval(&self, prec: u32) -> Interval {
        let mut acc = self.arch.clone();
        for (p, c) in &self.exact {
            let lp = Interval::from_i64(*p as i64).ln(prec + 8).expect("p > 1");
            acc = (&acc + &lp.mul_rat(c, prec + 8)).round(prec);
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        self.to_interval(64).to_f64()
    }

    /// Human-readable exact part, e.g. "1·log 2 + (1/2)·log 3".
    pub fn exact_string(&self) -> String {
        let parts: Vec<String> = self
            .exact
            .iter()
            .map(|(p, c)| {
                if c.is_integer() {
                    alloc::format!("{}·log {}", c, p)
                } else {
                    alloc::format!("({})·log {}", c, p)
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.exact.is_empty(), self.arch.is_exact_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.exact_string()),
            (true, false) => write!(f, "{}", self.arch.to_decimal(12)),
            (false, false) => write!(f, "{} + {}", self.exact_string(), self.arch.to_decimal(12)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn exact_parts_cancel() {
        let a = LogValue::log_prime(2, rat(1));
        let b = LogValue::log_prime(2, rat(-1)).add(&LogValue::log_prime(3, rat(2)));
        let s = a.add(&b);
        assert_eq!(s.exact.len(), 1);
        assert_eq!(s.exact[&3], rat(2));
        assert!(a.sub(&a).is_zero());
        let v = LogValue::log_prime(2, rat(1))
            .add(&LogValue::log_prime(3, rat(1)))
            .to_interval(80);
        assert!((v.to_f64() - 6f64.ln()).abs() < 1e-15);
        assert_eq!(s.exact_string(), "2·log 3");
    }
}

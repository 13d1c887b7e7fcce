use super::dyadic::Dyadic;
use super::real::Interval;
use crate::exact::{Rat, RatPoly};
use crate::Result;

/// Rectangular complex enclosure re × im.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CBox {
    pub re: Interval,
    pub im: Interval,
}

impl CBox {
    pub fn new(re: Interval, im: Interval) -> Self {
        CBox { re, im }
    }

    pub fn real(re: Interval) -> Self {
        CBox {
            re,
            im: Interval::zero(),
        }
    }

    pub fn from_rat(r: &Rat, prec: u32) -> Self {
        Self::real(Interval::from_rat(r, prec))
    }

    /// Square box of half-width `rad` around the point (re, im).
    pub fn around(re: &Dyadic, im: &Dyadic, rad: &Dyadic) -> Self {
        CBox {
            re: Interval::new(re - rad, re + rad),
            im: if im.is_zero() && rad.is_zero() {
                Interval::zero()
            } else {
                Interval::new(im - rad, im + rad)
            },
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        CBox {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        CBox {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        let re = &self.re.mul(&o.re, prec) - &self.im.mul(&o.im, prec);
        let im = &self.re.mul(&o.im, prec) + &self.im.mul(&o.re, prec);
        CBox {
            re: re.round(prec),
            im: im.round(prec),
        }
    }

    pub fn conj(&self) -> Self {
        CBox {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm_sq(&self, prec: u32) -> Interval {
        (&self.re.sqr(prec) + &self.im.sqr(prec)).round(prec)
    }

    pub fn recip(&self, prec: u32) -> Result<Self> {
        let n = self.norm_sq(prec);
        let inv = n.recip(prec)?;
        Ok(CBox {
            re: self.re.mul(&inv, prec),
            im: (-&self.im).mul(&inv, prec),
        })
    }

    pub fn div(&self, o: &Self, prec: u32) -> Result<Self> {
        Ok(self.mul(&o.recip(prec)?, prec))
    }

    pub fn intersects(&self, o: &Self) -> bool {
        self.re.overlaps(&o.re) && self.im.overlaps(&o.im)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    /// Horner evaluation of a rational polynomial.
    pub fn eval_poly(p: &RatPoly, z: &Self, prec: u32) -> Self {
        let mut acc = CBox::real(Interval::zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(z, prec).add(&CBox::from_rat(c, prec));
        }
        acc
    }

    /// Enclosure of log|z|; fails if the box may contain 0.
    pub fn ln_abs(&self, prec: u32) -> Result<Interval> {
        let n = self.norm_sq(prec + 4);
        let l = n.ln(prec + 4)?;
        Ok(Interval::new(l.lo().shl(-1), l.hi().shl(-1)).round(prec))
    }

    /// Largest endpoint width of the two coordinates.
    pub fn width(&self) -> Dyadic {
        core::cmp::max(self.re.width(), self.im.width())
    }
}

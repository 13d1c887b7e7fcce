use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::exact::{cyclotomic, euler_phi, is_irreducible, Rat, RatPoly};
use crate::linalg::{charpoly, minpoly, QMatrix};
use crate::{Error, Result};

/// ℚ(θ) = ℚ[x]/(f) with f monic irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    f: RatPoly,
}

impl NumberField {
    /// Normalizes f to be monic; rejects reducible input.
    pub fn new(f: &RatPoly) -> Result<Self> {
        if f.degree() < 1 {
            return Err(Error::InvalidArgument(
                "field polynomial must have degree at least 1".into(),
            ));
        }
        if !is_irreducible(f) {
            return Err(Error::NotIrreducible(alloc::format!(
                "{} is reducible over Q",
                f
            )));
        }
        Ok(NumberField { f: f.monic() })
    }

    /// Trusted constructor for polynomials known to be monic irreducible.
    pub(crate) fn from_irreducible(f: RatPoly) -> Self {
        debug_assert!(f.is_monic());
        NumberField { f }
    }

    pub fn rationals() -> Self {
        NumberField { f: RatPoly::x() }
    }

    pub fn poly(&self) -> &RatPoly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.deg()
    }

    pub fn element(&self, p: &RatPoly) -> FieldElement {
        FieldElement {
            field: self.clone(),
            poly: p.rem(&self.f),
        }
    }

    pub fn theta(&self) -> FieldElement {
        self.element(&RatPoly::x())
    }

    pub fn from_rat(&self, r: Rat) -> FieldElement {
        self.element(&RatPoly::constant(r))
    }

    pub fn one(&self) -> FieldElement {
        self.from_rat(Rat::one())
    }

    /// Matrix of multiplication by p(θ) in the power basis 1, θ, …, θ^{k−1}.
    pub fn mul_matrix(&self, p: &RatPoly) -> QMatrix {
        let k = self.degree();
        let mut cols = Vec::with_capacity(k);
        let mut cur = p.rem(&self.f);
        for _ in 0..k {
            cols.push((0..k).map(|i| cur.coeff(i)).collect());
            cur = (&cur * &RatPoly::x()).rem(&self.f);
        }
        QMatrix::from_columns(k, &cols)
    }
}

/// An element of a number field in the power basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: NumberField,
    poly: RatPoly,
}

impl FieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn poly(&self) -> &RatPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.poly.is_one()
    }

    fn same(&self, o: &Self) {
        assert_eq!(self.field, o.field, "elements of different fields");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same(o);
        FieldElement {
            field: self.field.clone(),
            poly: &self.poly + &o.poly,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same(o);
        FieldElement {
            field: self.field.clone(),
            poly: &self.poly - &o.poly,
        }
    }

    pub fn neg(&self) -> Self {
        FieldElement {
            field: self.field.clone(),
            poly: -&self.poly,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same(o);
        self.field.element(&(&self.poly * &o.poly))
    }

    pub fn scale(&self, r: &Rat) -> Self {
        FieldElement {
            field: self.field.clone(),
            poly: self.poly.scale(r),
        }
    }

    /// Inverse via s·p + t·f = 1.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = RatPoly::ext_gcd(&self.poly, &self.field.f);
        debug_assert!(g.is_one());
        Ok(self.field.element(&s))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = self.field.one();
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    pub fn mul_matrix(&self) -> QMatrix {
        self.field.mul_matrix(&self.poly)
    }

    /// Characteristic polynomial over ℚ of multiplication by this element.
    pub fn charpoly(&self) -> RatPoly {
        charpoly(&self.mul_matrix()).expect("square")
    }

    pub fn minpoly(&self) -> RatPoly {
        minpoly(&self.mul_matrix()).expect("square")
    }

    pub fn norm(&self) -> Rat {
        self.mul_matrix().det().expect("square")
    }

    pub fn trace(&self) -> Rat {
        self.mul_matrix().trace()
    }

    /// Multiplicative order if this is a root of unity.
    ///
    /// A root of unity is an algebraic integer whose minimal polynomial is
    /// some Φ_n; φ(n) = r forces n ≤ 2r², so the search is finite.
    pub fn root_of_unity_order(&self) -> Result<Option<u64>> {
        if self.is_zero() {
            return Err(Error::ZeroRoot);
        }
        let q = self.minpoly();
        if !q.is_integral() {
            return Ok(None);
        }
        let r = q.deg() as u64;
        let top = (2 * r * r).max(6);
        for n in 1..=top {
            if euler_phi(n) == r && cyclotomic(n) == q {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = alloc::format!("{}", self.poly);
        write!(f, "{}", s.replace('x', "θ"))
    }
}

/// Exact order of e as a root of unity, or None.
pub fn is_root_of_unity(e: &FieldElement) -> Result<Option<u64>> {
    e.root_of_unity_order()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn arithmetic_in_gaussian_field() {
        let k = NumberField::new(&RatPoly::from_ints(&[1, 0, 1])).unwrap();
        let i = k.theta();
        assert_eq!(i.pow(2).unwrap(), k.from_rat(rat(-1)));
        assert_eq!(i.pow(-1).unwrap(), i.neg());
        let z = k.element(&RatPoly::from_ints(&[1, 2]));
        assert_eq!(z.mul(&z.inv().unwrap()), k.one());
        assert_eq!(z.norm(), rat(5));
        assert_eq!(z.trace(), rat(2));
    }

    #[test]
    fn roots_of_unity() {
        let k = NumberField::new(&RatPoly::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(k.theta().root_of_unity_order().unwrap(), Some(4));
        assert_eq!(k.from_rat(rat(-1)).root_of_unity_order().unwrap(), Some(2));
        assert_eq!(k.one().root_of_unity_order().unwrap(), Some(1));
        let q2 = NumberField::new(&RatPoly::from_ints(&[-2, 0, 1])).unwrap();
        let u = q2.element(&RatPoly::from_ints(&[1, 1]));
        assert_eq!(u.norm(), rat(-1));
        assert_eq!(u.root_of_unity_order().unwrap(), None);
        assert!(k.element(&RatPoly::zero()).root_of_unity_order().is_err());
        // (1+i)/√2 is not in ℚ(i); (3+4i)/5 has modulus 1 but is no root of unity.
        let w = k.element(&RatPoly::new(alloc::vec![
            crate::exact::frac(3, 5),
            crate::exact::frac(4, 5)
        ]));
        assert_eq!(w.root_of_unity_order().unwrap(), None);
    }

    #[test]
    fn primitive_twelfth_root() {
        let k = NumberField::new(&cyclotomic(12)).unwrap();
        assert_eq!(k.theta().root_of_unity_order().unwrap(), Some(12));
        assert_eq!(
            k.theta().pow(3).unwrap().root_of_unity_order().unwrap(),
            Some(4)
        );
        assert_eq!(k.theta().pow(12).unwrap(), k.one());
    }

    #[test]
    fn reducible_rejected() {
        assert!(NumberField::new(&RatPoly::from_ints(&[-4, 0, 1])).is_err());
    }
}

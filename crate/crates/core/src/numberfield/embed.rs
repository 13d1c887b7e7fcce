use alloc::vec::Vec;

use super::field::{FieldElement, NumberField};
use crate::exact::{factor_poly, interpolate, resultant, Rat, RatPoly};
use crate::{Error, Result};

/// Polynomials over K with coefficients stored as reduced RatPolys in θ.
#[derive(Clone)]
struct KPoly<'a> {
    k: &'a NumberField,
    c: Vec<RatPoly>,
}

impl<'a> KPoly<'a> {
    fn new(k: &'a NumberField, mut c: Vec<RatPoly>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        KPoly { k, c }
    }

    fn from_rational(k: &'a NumberField, f: &RatPoly) -> Self {
        Self::new(
            k,
            f.coeffs()
                .iter()
                .map(|r| RatPoly::constant(r.clone()))
                .collect(),
        )
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn el(&self, p: &RatPoly) -> FieldElement {
        self.k.element(p)
    }

    fn monic(self) -> Result<Self> {
        let inv = self.el(self.c.last().expect("nonzero")).inv()?;
        let c = self
            .c
            .iter()
            .map(|x| self.el(x).mul(&inv).poly().clone())
            .collect();
        Ok(Self::new(self.k, c))
    }

    fn rem(&self, d: &Self) -> Result<Self> {
        let inv = self.el(d.c.last().ok_or(Error::DivisionByZero)?).inv()?;
        let mut r = self.c.clone();
        while r.len() >= d.c.len() && !r.is_empty() {
            let shift = r.len() - d.c.len();
            let q = self.el(r.last().expect("nonempty")).mul(&inv);
            for (i, dc) in d.c.iter().enumerate() {
                let t = q.mul(&self.el(dc));
                r[shift + i] = (&r[shift + i] - t.poly()).rem(self.k.poly());
            }
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        Ok(Self::new(self.k, r))
    }

    fn gcd(a: Self, b: Self) -> Result<Self> {
        let (mut a, mut b) = (a, b);
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// N(x) = Res_y(f2(y), f1(x − s·y)), the norm of f1(x − sθ₂) down to ℚ.
fn shifted_norm(f1: &RatPoly, f2: &RatPoly, s: &Rat) -> Result<RatPoly> {
    let n = f1.deg() * f2.deg();
    let mut pts = Vec::with_capacity(n + 1);
    for i in 0..=n as i64 {
        let x0 = Rat::from_integer(i.into());
        let h = f1.compose(&RatPoly::new(alloc::vec![x0.clone(), -s.clone()]));
        pts.push((x0, resultant(f2, &h)?));
    }
    Ok(interpolate(&pts))
}

/// All images of θ₁ in ℚ[x]/(f2), i.e. the roots of f1 in the field of f2,
/// in canonical order.
pub fn embeddings_between(f1: &RatPoly, f2: &RatPoly) -> Result<Vec<FieldElement>> {
    let k1 = NumberField::new(f1)?;
    let k2 = NumberField::new(f2)?;
    let (f1, f2) = (k1.poly(), k2.poly());
    if f2.deg() % f1.deg() != 0 {
        return Ok(Vec::new());
    }
    // Shifts 1, −1, 2, −2, …; all but finitely many give a squarefree norm.
    let bound = (f1.deg() * f2.deg()) as i64 + 2;
    let mut shift = None;
    for t in 1..=bound {
        for s in [t, -t] {
            let s = Rat::from_integer(s.into());
            let n = shifted_norm(f1, f2, &s)?;
            if n.is_squarefree() {
                shift = Some((s, n));
                break;
            }
        }
        if shift.is_some() {
            break;
        }
    }
    let (s, norm) = shift.ok_or_else(|| Error::Certification("no squarefree norm shift".into()))?;
    let lin = KPoly::new(
        &k2,
        alloc::vec![k2.theta().scale(&s).poly().clone(), RatPoly::one()],
    );
    let f1k = KPoly::from_rational(&k2, f1);
    let mut out = Vec::new();
    for (q, _) in factor_poly(&norm)?.factors {
        if q.deg() != f2.deg() {
            continue;
        }
        // q(x + sθ) via Horner over K.
        let mut acc: Vec<RatPoly> = Vec::new();
        for c in q.coeffs().iter().rev() {
            let mut next = alloc::vec![RatPoly::zero(); acc.len() + 1];
            for (i, a) in acc.iter().enumerate() {
                next[i] = &next[i] + &k2.element(&(a * &lin.c[0])).poly().clone();
                next[i + 1] = &next[i + 1] + a;
            }
            next[0] = &next[0] + &RatPoly::constant(c.clone());
            acc = next;
        }
        let g = KPoly::gcd(f1k.clone(), KPoly::new(&k2, acc))?;
        if g.deg() == 1 {
            let root = k2.element(&g.c[0]).neg();
            out.push(root);
        }
    }
    for r in &out {
        if !eval_in(f1, r).is_zero() {
            return Err(Error::Certification("embedding failed verification".into()));
        }
    }
    out.sort_by(|a, b| a.poly().canonical_cmp(b.poly()));
    out.dedup();
    Ok(out)
}

/// f(a) for rational f and a field element a.
pub fn eval_in(f: &RatPoly, a: &FieldElement) -> FieldElement {
    let k = a.field();
    let mut acc = k.element(&RatPoly::zero());
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(a).add(&k.from_rat(c.clone()));
    }
    acc
}

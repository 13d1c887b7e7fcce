use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::matrix::QMatrix;
use crate::exact::{Rat, RatPoly};
use crate::{Error, Result};

/// det(x·I − M), by Berkowitz's division-free recurrence.
pub fn charpoly(m: &QMatrix) -> Result<RatPoly> {
    if !m.is_square() {
        return Err(Error::Dimension("charpoly of a non-square matrix".into()));
    }
    let n = m.rows();
    // v holds coefficients in descending order for the leading r×r block.
    let mut v: Vec<Rat> = vec![Rat::one()];
    for r in 0..n {
        let a = m.get(r, r).clone();
        let row: Vec<Rat> = (0..r).map(|j| m.get(r, j).clone()).collect();
        let mut x: Vec<Rat> = (0..r).map(|i| m.get(i, r).clone()).collect();
        let lead = m.submatrix(0, r, 0, r);
        let mut t = Vec::with_capacity(r + 2);
        t.push(Rat::one());
        t.push(-a);
        for _ in 2..r + 2 {
            let dot: Rat = row.iter().zip(&x).map(|(p, q)| p * q).sum();
            t.push(-dot);
            x = lead.apply(&x);
        }
        let mut nv = vec![Rat::zero(); r + 2];
        for (i, slot) in nv.iter_mut().enumerate() {
            for j in 0..=i.min(r) {
                if !v[j].is_zero() && !t[i - j].is_zero() {
                    *slot += &t[i - j] * &v[j];
                }
            }
        }
        v = nv;
    }
    v.reverse();
    Ok(RatPoly::new(v))
}

/// Monic minimal polynomial: first linear dependence among I, M, M², ….
pub fn minpoly(m: &QMatrix) -> Result<RatPoly> {
    if !m.is_square() {
        return Err(Error::Dimension("minpoly of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut powers: Vec<Vec<Rat>> = vec![QMatrix::identity(n).vectorize()];
    let mut cur = QMatrix::identity(n);
    loop {
        cur = &cur * m;
        let target = cur.vectorize();
        let a = QMatrix::from_columns(n * n, &powers);
        if let Some(c) = a.solve(&target) {
            let mut coeffs: Vec<Rat> = c.into_iter().map(|v| -v).collect();
            coeffs.push(Rat::one());
            return Ok(RatPoly::new(coeffs));
        }
        powers.push(target);
    }
}

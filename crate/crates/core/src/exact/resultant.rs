use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::poly::RatPoly;
use super::rat::Rat;
use crate::{Error, Result};

/// Res(f, g) = lc(f)^{deg g} ∏ g(θ_i) over the roots θ_i of f.
pub fn resultant(f: &RatPoly, g: &RatPoly) -> Result<Rat> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(res_rec(f, g))
}

fn res_rec(f: &RatPoly, g: &RatPoly) -> Rat {
    let (m, n) = (f.deg(), g.deg());
    if m == 0 {
        return f.lc().pow(n as i32);
    }
    if n == 0 {
        return g.lc().pow(m as i32);
    }
    if m < n {
        // Res(f, g) = (−1)^{mn} Res(g, f)
        let r = res_rec(g, f);
        return if (m * n) % 2 == 1 { -r } else { r };
    }
    // m ≥ n: Res(f, g) = (−1)^{mn} lc(g)^{m − deg r} Res(g, r), r = f mod g.
    let r = f.rem(g);
    if r.is_zero() {
        return Rat::zero();
    }
    let k = r.deg();
    let v = g.lc().pow((m - k) as i32) * res_rec(g, &r);
    if (m * n) % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Newton interpolation through distinct abscissae.
pub fn interpolate(points: &[(Rat, Rat)]) -> RatPoly {
    let n = points.len();
    let mut coef: Vec<Rat> = points.iter().map(|(_, y)| y.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &coef[i] - &coef[i - 1];
            let den = &points[i].0 - &points[i - j].0;
            coef[i] = num / den;
        }
    }
    let mut acc = RatPoly::zero();
    for i in (0..n).rev() {
        let lin = RatPoly::new(alloc::vec![-points[i].0.clone(), Rat::one()]);
        acc = &(&acc * &lin) + &RatPoly::constant(coef[i].clone());
    }
    acc
}

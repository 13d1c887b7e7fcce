use alloc::vec::Vec;

use num_traits::Zero;

use super::poly::RatPoly;
use super::rat::{valuation, Rat};
use crate::{Error, Result};

/// Lower convex hull of (i, v_p(a_i)); segments carry (slope, length) with
/// strictly increasing slopes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub prime: u64,
    pub segments: Vec<(Rat, usize)>,
}

impl NewtonPolygon {
    /// p-adic valuations of the roots with multiplicity, ascending.
    pub fn root_valuations(&self) -> Vec<Rat> {
        let mut v = Vec::new();
        for (s, l) in self.segments.iter().rev() {
            for _ in 0..*l {
                v.push(-s);
            }
        }
        v
    }
}

pub fn newton_polygon(f: &RatPoly, p: u64) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.coeff(0).is_zero() {
        return Err(Error::ZeroRoot);
    }
    let pts: Vec<(i64, i64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64, valuation(c, p)))
        .collect();
    // Andrew's monotone chain, lower part; points are already sorted by x.
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &q in &pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (q.1 - a.1) - (b.1 - a.1) * (q.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(q);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let len = w[1].0 - w[0].0;
            (Rat::new((w[1].1 - w[0].1).into(), len.into()), len as usize)
        })
        .collect();
    Ok(NewtonPolygon { prime: p, segments })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat};
    use alloc::vec;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_ints(c)
    }

    #[test]
    fn examples() {
        let np = newton_polygon(&p(&[6, -5, 1]), 2).unwrap();
        assert_eq!(np.segments, vec![(rat(-1), 1), (rat(0), 1)]);
        assert_eq!(np.root_valuations(), vec![rat(0), rat(1)]);
        let np = newton_polygon(&p(&[-2, 0, 1]), 2).unwrap();
        assert_eq!(np.segments, vec![(frac(-1, 2), 2)]);
        let np = newton_polygon(&p(&[4, 2, 0, 1]), 2).unwrap();
        assert_eq!(np.root_valuations(), vec![frac(1, 2), frac(1, 2), rat(1)]);
        assert_eq!(newton_polygon(&p(&[0, 1]), 2), Err(Error::ZeroRoot));
    }

    #[test]
    fn rational_coefficients() {
        // (x - 1/4)(x - 6): valuations −2 and 1 at p = 2
        let f = RatPoly::new(vec![frac(3, 2), frac(-25, 4), rat(1)]);
        assert_eq!(
            newton_polygon(&f, 2).unwrap().root_valuations(),
            vec![rat(-2), rat(1)]
        );
    }
}

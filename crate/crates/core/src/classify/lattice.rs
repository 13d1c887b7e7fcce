//! Small integer-lattice helpers.

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::exact::{BigInt, Rat};
use crate::{Error, Result};

/// Row Hermite normal form: nonzero rows, upper triangular, positive
/// pivots, entries above each pivot reduced into [0, pivot).
pub fn hnf(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let Some(d) = rows.first().map(|r| r.len()) else {
        return Vec::new();
    };
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut out: Vec<Vec<i128>> = Vec::new();
    for c in 0..d {
        loop {
            let mut nz: Vec<usize> = (0..m.len()).filter(|&i| m[i][c] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&i| m[i][c].abs());
            let p = nz[0];
            for &i in &nz[1..] {
                let q = m[i][c].div_euclid(m[p][c]);
                let pr = m[p].clone();
                for (x, y) in m[i].iter_mut().zip(&pr) {
                    *x -= q * y;
                }
            }
        }
        if let Some(i) = (0..m.len()).find(|&i| m[i][c] != 0) {
            let mut r = m.remove(i);
            if r[c] < 0 {
                r.iter_mut().for_each(|x| *x = -*x);
            }
            out.push(r);
        }
    }
    for k in 0..out.len() {
        let c = (0..d).find(|&c| out[k][c] != 0).unwrap();
        let piv = out[k].clone();
        for row in out.iter_mut().take(k) {
            let q = row[c].div_euclid(piv[c]);
            for (x, y) in row.iter_mut().zip(&piv) {
                *x -= q * y;
            }
        }
    }
    out.into_iter()
        .map(|r| r.into_iter().map(|x| x as i64).collect())
        .collect()
}

/// Basis (in Hermite form) of {a ∈ ℤ^d : Σ e_j a_j ≡ 0 mod n}.
pub fn kernel_mod(e: &[i64], n: i64) -> Vec<Vec<i64>> {
    let d = e.len();
    let mut r: Vec<i128> = e.iter().map(|&x| x as i128).chain([n as i128]).collect();
    let mut u: Vec<Vec<i128>> = (0..=d)
        .map(|i| (0..=d).map(|j| (i == j) as i128).collect())
        .collect();
    // Column operations on r, mirrored on the columns of u.
    loop {
        let nz: Vec<usize> = (0..=d).filter(|&i| r[i] != 0).collect();
        if nz.len() <= 1 {
            break;
        }
        let p = *nz.iter().min_by_key(|&&i| r[i].abs()).unwrap();
        for &k in &nz {
            if k != p {
                let q = r[k].div_euclid(r[p]);
                r[k] -= q * r[p];
                for row in u.iter_mut() {
                    row[k] -= q * row[p];
                }
            }
        }
    }
    let pivot = (0..=d).find(|&i| r[i] != 0).unwrap_or(d);
    let gens: Vec<Vec<i64>> = (0..=d)
        .filter(|&k| k != pivot)
        .map(|k| (0..d).map(|i| u[i][k] as i64).collect())
        .collect();
    hnf(&gens)
}

/// Basis (in Hermite form) of {a ∈ ℤ^d : r·a = 0 for every row r}.
pub fn integer_kernel(rows: &[Vec<i64>], d: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..d)
        .map(|i| (0..d).map(|j| (i == j) as i128).collect())
        .collect();
    // Column echelon form by unimodular column operations, mirrored in u.
    let mut done = 0;
    for row in 0..m.len() {
        loop {
            let nz: Vec<usize> = (done..d).filter(|&k| m[row][k] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&k) = nz.first() {
                    for r in m.iter_mut() {
                        r.swap(k, done);
                    }
                    for r in u.iter_mut() {
                        r.swap(k, done);
                    }
                    done += 1;
                }
                break;
            }
            let p = *nz.iter().min_by_key(|&&k| m[row][k].abs()).unwrap();
            for &k in &nz {
                if k != p {
                    let q = m[row][k].div_euclid(m[row][p]);
                    for r in m.iter_mut() {
                        r[k] -= q * r[p];
                    }
                    for r in u.iter_mut() {
                        r[k] -= q * r[p];
                    }
                }
            }
        }
    }
    let gens: Vec<Vec<i64>> = (done..d)
        .map(|k| (0..d).map(|i| u[i][k] as i64).collect())
        .collect();
    hnf(&gens)
}

/// |det| of a square integer basis: the index of the lattice in ℤ^d.
pub fn index(basis: &[Vec<i64>]) -> u64 {
    let rows: Vec<Vec<Rat>> = basis
        .iter()
        .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
        .collect();
    let m = crate::linalg::QMatrix::from_rows(rows).expect("rectangular");
    m.det()
        .expect("square")
        .abs()
        .to_integer()
        .to_u64()
        .expect("index fits")
}

/// Primitive integer multiple of a rational vector.
pub fn primitive_integer(v: &[Rat]) -> Result<Vec<i64>> {
    let den = crate::exact::denom_lcm(v);
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rat::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
    let g = if g.is_zero() { BigInt::from(1) } else { g };
    let first_sign = ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    ints.iter()
        .map(|x| {
            let y = x / &g;
            let y = if first_sign { -y } else { y };
            y.to_i64()
                .ok_or_else(|| Error::InvalidArgument("relation vector too large".into()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn congruence_lattices() {
        assert_eq!(kernel_mod(&[1, 0], 4), vec![vec![4, 0], vec![0, 1]]);
        assert_eq!(index(&kernel_mod(&[1, 0], 4)), 4);
        let l = kernel_mod(&[1, 1], 4);
        assert_eq!(index(&l), 4);
        assert_eq!(l, vec![vec![1, 3], vec![0, 4]]);
        assert_eq!(index(&kernel_mod(&[2, 0, 3], 6)), 6);
        assert_eq!(kernel_mod(&[0, 0], 5), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn integer_kernels() {
        assert_eq!(integer_kernel(&[vec![1, -2]], 2), vec![vec![2, 1]]);
        assert_eq!(integer_kernel(&[vec![2, 4, 6]], 3).len(), 2);
        assert_eq!(integer_kernel(&[], 2), vec![vec![1, 0], vec![0, 1]]);
        assert!(integer_kernel(&[vec![1, 0], vec![0, 1]], 2).is_empty());
    }

    #[test]
    fn hermite_form() {
        assert_eq!(hnf(&[vec![4, 6], vec![2, 2]]), vec![vec![2, 0], vec![0, 2]]);
        assert_eq!(
            primitive_integer(&[crate::exact::frac(-1, 2), crate::exact::rat(1)]).unwrap(),
            vec![1, -2]
        );
    }
}

use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use super::matrix::QMatrix;
use super::polys::minpoly;
use super::subspace::QSubspace;
use crate::{Error, Result};

/// Semisimple part S of M (M − S nilpotent, S a polynomial in M), by Newton
/// iteration S ← S − q(S)·q'(S)⁻¹ on the squarefree part q of minpoly(M).
pub fn semisimple_part(m: &QMatrix) -> Result<QMatrix> {
    let q = minpoly(m)?.squarefree_part();
    let dq = q.derivative();
    let mut s = m.clone();
    loop {
        let qs = s.eval_poly(&q);
        if qs.is_zero() {
            return Ok(s);
        }
        let d = s.eval_poly(&dq).inverse()?;
        s = &s - &(&qs * &d);
    }
}

/// Multiplicative Jordan–Chevalley decomposition M = D·U = U·D with D
/// semisimple and U unipotent, both rational.
pub fn jordan_chevalley(m: &QMatrix) -> Result<(QMatrix, QMatrix)> {
    if !m.is_square() {
        return Err(Error::Dimension(
            "Jordan–Chevalley of a non-square matrix".into(),
        ));
    }
    if m.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let d = semisimple_part(m)?;
    let u = &d.inverse()? * m;
    Ok((d, u))
}

/// Basis of {B : B·A_j = A_j·B for all j}, echelonized over the m²
/// coordinates (row-major).
pub fn commutant(generators: &[QMatrix]) -> Result<Vec<QMatrix>> {
    let Some(first) = generators.first() else {
        return Err(Error::InvalidArgument("no generators".into()));
    };
    let m = first.rows();
    if generators.iter().any(|g| g.rows() != m || g.cols() != m) {
        return Err(Error::Dimension(format!(
            "generators must all be {}x{}",
            m, m
        )));
    }
    let n = m * m;
    // Row (j, r, c) of the system: (B·A − A·B)[r][c] = 0.
    let mut rows = Vec::with_capacity(n * generators.len());
    for a in generators {
        for r in 0..m {
            for c in 0..m {
                let mut row = alloc::vec![crate::exact::Rat::zero(); n];
                for k in 0..m {
                    // (B·A)[r][c] = Σ_k B[r][k] A[k][c]
                    row[r * m + k] += a.get(k, c);
                    // (A·B)[r][c] = Σ_k A[r][k] B[k][c]
                    row[k * m + c] -= a.get(r, k);
                }
                rows.push(row);
            }
        }
    }
    let sys = QMatrix::from_rows(rows)?;
    let space = QSubspace::kernel_of(&sys);
    Ok(space
        .basis()
        .iter()
        .map(|v| QMatrix::new(m, m, v.clone()).unwrap())
        .collect())
}

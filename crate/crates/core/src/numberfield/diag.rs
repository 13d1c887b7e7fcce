use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{FieldElement, NumberField};
use crate::action::algebra_basis;
use crate::exact::{is_irreducible, Rat, RatPoly};
use crate::linalg::{minpoly, QMatrix};
use crate::{Error, Result};

/// An irreducible block written as multiplication by ζ_1, …, ζ_d on a number
/// field K = ℚ(θ).
///
/// `basis_map` P sends power-basis coordinates to block coordinates, so
/// A_j·P = P·M_j with M_j the multiplication matrix of ζ_j = g_j(θ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberFieldAction {
    field: NumberField,
    multipliers: Vec<RatPoly>,
    basis_map: QMatrix,
}

impl NumberFieldAction {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn d(&self) -> usize {
        self.multipliers.len()
    }

    pub fn multipliers(&self) -> &[RatPoly] {
        &self.multipliers
    }

    pub fn basis_map(&self) -> &QMatrix {
        &self.basis_map
    }

    pub fn zeta(&self, j: usize) -> FieldElement {
        self.field.element(&self.multipliers[j])
    }

    /// ζ_n = ζ_1^{n_1} ⋯ ζ_d^{n_d}.
    pub fn zeta_n(&self, n: &[i64]) -> Result<FieldElement> {
        if n.len() != self.d() {
            return Err(Error::Dimension(
                "exponent vector length differs from d".into(),
            ));
        }
        let mut acc = self.field.one();
        for (j, &e) in n.iter().enumerate() {
            if e != 0 {
                acc = acc.mul(&self.zeta(j).pow(e)?);
            }
        }
        Ok(acc)
    }

    /// Characteristic polynomial of multiplication by ζ_n on K.
    pub fn element_charpoly(&self, n: &[i64]) -> Result<RatPoly> {
        Ok(self.zeta_n(n)?.charpoly())
    }

    /// Re-checks P⁻¹·A_j·P = M_j for the given block.
    pub fn verify(&self, block: &[QMatrix]) -> bool {
        let Ok(pinv) = self.basis_map.inverse() else {
            return false;
        };
        block.len() == self.d()
            && block
                .iter()
                .zip(&self.multipliers)
                .all(|(a, g)| &(&pinv * a) * &self.basis_map == self.field.mul_matrix(g))
    }
}

/// Characteristic polynomial of ζ_n for a diagonalized block.
pub fn element_charpoly(nf: &NumberFieldAction, n: &[i64]) -> Result<RatPoly> {
    nf.element_charpoly(n)
}

fn combo(gens: &[QMatrix], c: &[i64]) -> QMatrix {
    let m = gens[0].rows();
    let mut g = QMatrix::zeros(m, m);
    for (a, &ci) in gens.iter().zip(c) {
        if ci != 0 {
            g = &g + &a.scale(&Rat::from_integer(ci.into()));
        }
    }
    g
}

/// Finds g in the algebra with irreducible minpoly of degree m.
fn primitive(gens: &[QMatrix], seed: u64) -> Result<(QMatrix, RatPoly)> {
    let m = gens[0].rows();
    let good = |g: &QMatrix| -> Result<Option<RatPoly>> {
        let q = minpoly(g)?;
        Ok((q.deg() == m && is_irreducible(&q)).then_some(q))
    };
    for g in gens {
        if let Some(q) = good(g)? {
            return Ok((g.clone(), q));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for round in 0..96u32 {
        let bound = 8i64 << (round / 32);
        let c: Vec<i64> = (0..gens.len())
            .map(|_| rng.gen_range(-bound..=bound))
            .collect();
        let g = combo(gens, &c);
        if let Some(q) = good(&g)? {
            return Ok((g, q));
        }
    }
    // Ladder over a basis of the algebra; if the algebra is a field of
    // degree m, all but finitely many rungs give a primitive element.
    let basis = algebra_basis(gens);
    let a = basis.len();
    if a == m {
        for c in 1..=(a * a * a + 1) as i64 {
            let coeffs: Vec<i64> = (0..a as u32).map(|i| c.pow(i)).collect();
            let g = combo(&basis, &coeffs);
            if let Some(q) = good(&g)? {
                return Ok((g, q));
            }
        }
    }
    Err(Error::NotIrreducible(
        "block has no primitive element of full degree".into(),
    ))
}

/// Writes an irreducible block of commuting matrices as a number-field
/// action; the primitive element θ is a small combination of the
/// generators and e₁ ↦ 1.
pub fn diagonalize_block(block: &[QMatrix], seed: u64) -> Result<NumberFieldAction> {
    if block.is_empty() {
        return Err(Error::InvalidArgument("empty block".into()));
    }
    let m = block[0].rows();
    let (g, f) = primitive(block, seed)?;
    let mut cols = Vec::with_capacity(m);
    let mut v = crate::linalg::unit(m, 0);
    for _ in 0..m {
        cols.push(v.clone());
        v = g.apply(&v);
    }
    let p = QMatrix::from_columns(m, &cols);
    let pinv = p.inverse()?;
    let e1 = crate::linalg::unit(m, 0);
    let multipliers: Vec<RatPoly> = block
        .iter()
        .map(|a| RatPoly::new(pinv.apply(&a.apply(&e1))))
        .collect();
    let nf = NumberFieldAction {
        field: NumberField::from_irreducible(f),
        multipliers,
        basis_map: p,
    };
    if !nf.verify(block) {
        return Err(Error::NotIrreducible(
            "block generators are not multiplications in the field".into(),
        ));
    }
    if nf.multipliers.iter().any(|g| g.is_zero()) {
        return Err(Error::Singular);
    }
    Ok(nf)
}

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Zero};

use super::matrix::QMatrix;
use crate::exact::Rat;

/// Subspace of ℚ^m stored by its reduced row-echelon basis, which makes the
/// representation canonical: equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QSubspace {
    ambient: usize,
    basis: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl QSubspace {
    pub fn from_vectors(ambient: usize, vectors: &[Vec<Rat>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let (r, piv) = QMatrix::from_rows(vectors.to_vec())
            .expect("equal lengths")
            .rref();
        let basis = (0..piv.len()).map(|i| r.row(i)).collect();
        QSubspace {
            ambient,
            basis,
            pivots: piv,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        QSubspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit(ambient, i)).collect();
        QSubspace {
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    /// Column space of a matrix.
    pub fn image(m: &QMatrix) -> Self {
        Self::from_vectors(
            m.rows(),
            &(0..m.cols()).map(|j| m.col(j)).collect::<Vec<_>>(),
        )
    }

    pub fn kernel_of(m: &QMatrix) -> Self {
        Self::from_vectors(m.cols(), &m.kernel())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// m × dim matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> QMatrix {
        QMatrix::from_columns(self.ambient, &self.basis)
    }

    /// v minus its projection along the echelon basis; zero iff v ∈ self.
    fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut w = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let c = w[p].clone();
            for (x, y) in w.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of v ∈ self in the echelon basis.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        self.contains(v)
            .then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, o: &Self) -> bool {
        self.basis.iter().all(|b| o.contains(b))
    }

    pub fn is_invariant(&self, m: &QMatrix) -> bool {
        self.basis.iter().all(|b| self.contains(&m.apply(b)))
    }

    pub fn sum(&self, o: &Self) -> Self {
        let mut v = self.basis.clone();
        v.extend(o.basis.iter().cloned());
        Self::from_vectors(self.ambient, &v)
    }

    pub fn intersect(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.ambient);
        }
        let a = self.basis_matrix();
        let b = o.basis_matrix().scale(&-Rat::one());
        let k = a.hconcat(&b).kernel();
        let vs: Vec<Vec<Rat>> = k.iter().map(|x| a.apply(&x[..self.dim()])).collect();
        Self::from_vectors(self.ambient, &vs)
    }

    /// Image under a linear map.
    pub fn map(&self, m: &QMatrix) -> Self {
        Self::from_vectors(
            m.rows(),
            &self.basis.iter().map(|b| m.apply(b)).collect::<Vec<_>>(),
        )
    }

    /// Matrix of m restricted to self, in the echelon basis (m·B = B·R).
    pub fn restrict(&self, m: &QMatrix) -> Option<QMatrix> {
        let cols: Option<Vec<Vec<Rat>>> = self
            .basis
            .iter()
            .map(|b| self.coordinates(&m.apply(b)))
            .collect();
        Some(QMatrix::from_columns(self.dim(), &cols?))
    }

    /// {u : u·w = 0 for all w ∈ self}.
    pub fn annihilator(&self) -> Self {
        if self.is_zero() {
            return Self::full(self.ambient);
        }
        Self::from_vectors(
            self.ambient,
            &QMatrix::from_rows(self.basis.clone()).unwrap().kernel(),
        )
    }

    /// Coordinates (v_j for j not a pivot) of the projection along self.
    /// This is the quotient map ℚ^m → ℚ^m/self in the echelon-lift basis.
    pub fn quotient_coords(&self, v: &[Rat]) -> Vec<Rat> {
        let w = self.reduce(v);
        self.free_columns()
            .into_iter()
            .map(|j| w[j].clone())
            .collect()
    }

    /// Non-pivot columns: the standard vectors spanning the echelon
    /// complement.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|j| !self.pivots.contains(j))
            .collect()
    }

    /// The quotient map as a (m − dim) × m matrix.
    pub fn quotient_matrix(&self) -> QMatrix {
        let cols: Vec<Vec<Rat>> = (0..self.ambient)
            .map(|j| self.quotient_coords(&unit(self.ambient, j)))
            .collect();
        QMatrix::from_columns(self.ambient - self.dim(), &cols)
    }

    /// Matrix induced by m on ℚ^m/self in the echelon-lift basis.
    pub fn quotient_action(&self, m: &QMatrix) -> QMatrix {
        let cols: Vec<Vec<Rat>> = self
            .free_columns()
            .into_iter()
            .map(|j| self.quotient_coords(&m.col(j)))
            .collect();
        QMatrix::from_columns(self.ambient - self.dim(), &cols)
    }
}

impl PartialOrd for QSubspace {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for QSubspace {
    /// Smaller dimension first, then lexicographic echelon basis.
    fn cmp(&self, o: &Self) -> Ordering {
        self.ambient
            .cmp(&o.ambient)
            .then(self.dim().cmp(&o.dim()))
            .then_with(|| self.basis.cmp(&o.basis))
    }
}

pub(crate) fn unit(m: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); m];
    v[i] = Rat::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn v(c: &[i64]) -> Vec<Rat> {
        c.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn canonical_basis() {
        let a = QSubspace::from_vectors(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = QSubspace::from_vectors(3, &[v(&[1, 2, 1]), v(&[1, 0, -1]), v(&[2, 2, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&v(&[3, 5, 2])));
        assert!(!a.contains(&v(&[1, 0, 0])));
    }

    #[test]
    fn intersections_and_annihilators() {
        let a = QSubspace::from_vectors(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = QSubspace::from_vectors(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(
            a.intersect(&b),
            QSubspace::from_vectors(3, &[v(&[0, 1, 0])])
        );
        assert_eq!(a.sum(&b), QSubspace::full(3));
        assert_eq!(
            a.annihilator(),
            QSubspace::from_vectors(3, &[v(&[0, 0, 1])])
        );
    }

    #[test]
    fn restriction_and_quotient() {
        let m = QMatrix::from_i64(&[&[2, 1], &[0, 3]]);
        let w = QSubspace::from_vectors(2, &[v(&[1, 0])]);
        assert!(w.is_invariant(&m));
        assert_eq!(w.restrict(&m).unwrap(), QMatrix::from_i64(&[&[2]]));
        assert_eq!(w.quotient_action(&m), QMatrix::from_i64(&[&[3]]));
        assert_eq!(w.quotient_matrix(), QMatrix::from_i64(&[&[0, 1]]));
    }
}

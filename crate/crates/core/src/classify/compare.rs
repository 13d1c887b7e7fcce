use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::cyclic::has_virtually_cyclic_factor;
use super::lattice::{hnf, index, kernel_mod};
use super::total::action_torsion_exponent;
use super::Verdict;
use crate::action::{socle_irreducibles, SolenoidAction};
use crate::exact::{factor_integer, lcm_u64, BigUint, Rat, RatPoly};
use crate::linalg::{QMatrix, QSubspace};
use crate::numberfield::{
    diagonalize_block, embeddings_between, eval_in, FieldElement, NumberFieldAction,
};
use crate::{Config, Error, Result};

/// An irreducible factor of an action: an equivariant surjection Φ from
/// ℚ^m onto a number field on which α^{e_j} acts as multiplication by ζ_j.
#[derive(Clone, Debug)]
pub struct Piece {
    /// Minimal invariant subspace of the transposed action.
    pub representative: QSubspace,
    pub nf: NumberFieldAction,
    /// Φ = P⁻¹·Eᵀ, a k × m matrix with Φ·A_j = M(ζ_j)·Φ.
    pub map: QMatrix,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.nf.degree()
    }
}

/// Irreducible factors of the action, one per isomorphism type.
pub fn irreducible_factors(action: &SolenoidAction, cfg: &Config) -> Result<Vec<Piece>> {
    let mut out = Vec::new();
    for fam in socle_irreducibles(&action.transpose(), cfg.seed)? {
        let e = fam.representative.basis_matrix();
        let gens: Vec<QMatrix> = fam
            .block
            .generators()
            .iter()
            .map(|g| g.transpose())
            .collect();
        let nf = diagonalize_block(&gens, cfg.seed)?;
        let map = &nf.basis_map().inverse()? * &e.transpose();
        out.push(Piece {
            representative: fam.representative,
            nf,
            map,
        });
    }
    Ok(out)
}

/// A field embedding θ₁ ↦ image between the fields of two pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub source: RatPoly,
    pub target: RatPoly,
    /// Image of the source generator in the target power basis.
    pub image: RatPoly,
}

impl Embedding {
    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.image == RatPoly::x().rem(&self.target)
    }
}

/// A common irreducible factor of the restrictions to Λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonFactor {
    /// Indices into the factor lists of the restricted actions.
    pub piece1: usize,
    pub piece2: usize,
    pub dim: usize,
    pub embedding: Embedding,
    /// The restriction M·ℤ^d on which the pieces were matched.
    pub restriction: u64,
    /// Orders of the twists ζ′_j/φ(ζ_j) on that restriction.
    pub twist_orders: Vec<u64>,
    /// Hermite basis of Λ, the stabilizer of the joining witness.
    pub lambda: Vec<Vec<i64>>,
    pub index: u64,
    /// False when the coset search was cut off by the index bound, so Λ
    /// may be larger than reported.
    pub stabilizer_complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakIsomorphism {
    pub lambda: Vec<Vec<i64>>,
    pub embedding: Embedding,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub weakly_isomorphic: Option<WeakIsomorphism>,
    /// Yes means mutually disjoint.
    pub disjoint: Verdict,
    pub common_factor: Option<CommonFactor>,
    /// Subspace of ℚ^{m1+m2} invariant under the product restricted to Λ
    /// and projecting onto both factors.
    pub joining_witness: Option<QSubspace>,
    /// Largest restriction exponent examined.
    pub restriction: u64,
    pub degree_bound: usize,
    pub notes: Vec<String>,
}

/// Basis of {c ∈ ℤ^d : ∏ ω_j^{c_j} = 1} for roots of unity ω_j of the
/// given orders, all in one field.
pub fn torsion_kernel(omegas: &[FieldElement], orders: &[u64]) -> Result<Vec<Vec<i64>>> {
    let d = omegas.len();
    let n = orders.iter().fold(1, |a, &b| lcm_u64(a, b));
    if n == 1 {
        return Ok((0..d)
            .map(|i| (0..d).map(|j| (i == j) as i64).collect())
            .collect());
    }
    // μ is cyclic: a generator of ⟨ω⟩ from one element per prime power.
    let mut xi = omegas[0].field().one();
    for (p, e) in factor_integer(&BigUint::from(n))? {
        let q = p.pow(e);
        let c = orders
            .iter()
            .position(|&o| o % q == 0)
            .expect("prime power divides some order");
        xi = xi.mul(&omegas[c].pow((orders[c] / q) as i64)?);
    }
    let mut powers = Vec::with_capacity(n as usize);
    let mut acc = xi.field().one();
    for _ in 0..n {
        powers.push(acc.clone());
        acc = acc.mul(&xi);
    }
    if !acc.is_one() {
        return Err(Error::Certification(
            "twist generator has the wrong order".into(),
        ));
    }
    let mut exps = Vec::with_capacity(d);
    for w in omegas {
        let e = powers
            .iter()
            .position(|p| p == w)
            .ok_or_else(|| Error::Certification("twist outside the cyclic group".into()))?;
        exps.push(e as i64);
    }
    Ok(kernel_mod(&exps, n as i64))
}

/// Stabilizer of w in ℤ^d, given a sublattice λ0 already known to fix it.
/// Cosets of λ0 are enumerated when its index is at most `bound`.
fn stabilizer(
    product: &SolenoidAction,
    w: &QSubspace,
    lambda0: &[Vec<i64>],
    bound: u64,
) -> Result<(Vec<Vec<i64>>, bool)> {
    let h = hnf(lambda0);
    let idx = index(&h);
    if idx > bound {
        return Ok((h, false));
    }
    let d = h.len();
    let diag: Vec<i64> = (0..d).map(|i| h[i][i]).collect();
    let mut gens = h.clone();
    let mut b = vec![0i64; d];
    loop {
        let mut i = 0;
        while i < d {
            b[i] += 1;
            if b[i] < diag[i] {
                break;
            }
            b[i] = 0;
            i += 1;
        }
        if i == d {
            break;
        }
        if w.is_invariant(&product.element(&b)?) {
            gens.push(b.clone());
        }
    }
    Ok((hnf(&gens), true))
}

/// Exact re-check of a joining witness.
pub fn verify_joining(
    product: &SolenoidAction,
    w: &QSubspace,
    lambda: &[Vec<i64>],
    m1: usize,
) -> Result<bool> {
    let m = product.m();
    if w.is_zero() || w.is_full() || lambda.is_empty() {
        return Ok(false);
    }
    let restricted = product.restrict_sublattice(lambda)?;
    if !restricted.generators().iter().all(|g| w.is_invariant(g)) {
        return Ok(false);
    }
    let proj = |lo: usize, hi: usize| {
        let vs: Vec<Vec<Rat>> = w.basis().iter().map(|v| v[lo..hi].to_vec()).collect();
        QSubspace::from_vectors(hi - lo, &vs).dim() == hi - lo
    };
    Ok(proj(0, m1) && proj(m1, m))
}

struct Candidate {
    factor: CommonFactor,
    witness: QSubspace,
}

/// Matrix of σ: K_x → K_y on power bases.
fn embedding_matrix(s: &FieldElement, k: usize) -> Result<QMatrix> {
    let mut cols = Vec::with_capacity(k);
    let mut acc = s.field().one();
    for _ in 0..k {
        let mut c = acc.poly().coeffs().to_vec();
        c.resize(k, Rat::zero());
        cols.push(c);
        acc = acc.mul(s);
    }
    Ok(QMatrix::from_columns(k, &cols))
}

fn match_pieces(
    x: &Piece,
    y: &Piece,
    indices: (usize, usize),
    product: &SolenoidAction,
    m1: usize,
    restriction: u64,
    cfg: &Config,
) -> Result<Vec<Candidate>> {
    let k = x.dim();
    let d = x.nf.d();
    let (fx, fy) = (x.nf.field().poly(), y.nf.field().poly());
    let mut out = Vec::new();
    for s in embeddings_between(fx, fy)? {
        let mut omegas = Vec::with_capacity(d);
        let mut orders = Vec::with_capacity(d);
        for j in 0..d {
            let w =
                y.nf.zeta(j)
                    .mul(&eval_in(&x.nf.multipliers()[j], &s).inv()?);
            match w.root_of_unity_order()? {
                Some(o) => orders.push(o),
                None => break,
            }
            omegas.push(w);
        }
        if orders.len() < d {
            continue;
        }
        let lc = torsion_kernel(&omegas, &orders)?;
        let lambda0: Vec<Vec<i64>> = lc
            .iter()
            .map(|v| v.iter().map(|&c| c * restriction as i64).collect())
            .collect();
        let sm = embedding_matrix(&s, k)?;
        let big = (&sm * &x.map).hconcat(&y.map.scale(&-Rat::from_integer(1.into())));
        let w = QSubspace::kernel_of(&big);
        let (lambda, complete) = stabilizer(product, &w, &lambda0, cfg.index_bound)?;
        if !verify_joining(product, &w, &lambda, m1)? {
            return Err(Error::Certification(
                "joining witness failed re-verification".into(),
            ));
        }
        let embedding = Embedding {
            source: fx.clone(),
            target: fy.clone(),
            image: s.poly().clone(),
        };
        out.push(Candidate {
            factor: CommonFactor {
                piece1: indices.0,
                piece2: indices.1,
                dim: k,
                embedding,
                restriction,
                twist_orders: orders,
                index: index(&lambda),
                lambda,
                stabilizer_complete: complete,
            },
            witness: w,
        });
    }
    Ok(out)
}

/// Searches for a common algebraic factor of finite-index restrictions.
///
/// Irreducible factors are matched first at full index and then on M·ℤ^d,
/// where M kills every twist σ(ζ)/ζ in both actions, so that all factors
/// there are totally irreducible. A match is a field isomorphism φ with
/// every ζ′_j/φ(ζ_j) a root of unity; Λ is then the exact stabilizer of the
/// graph-type witness {(x, y) : φΦ₁(x) = Φ₂(y)}.
pub fn compare(a1: &SolenoidAction, a2: &SolenoidAction, cfg: &Config) -> Result<ComparisonReport> {
    if a1.d() != a2.d() {
        return Err(Error::Dimension(format!(
            "actions of rank {} and {}",
            a1.d(),
            a2.d()
        )));
    }
    let d = a1.d();
    let (e1, b1) = action_torsion_exponent(a1, cfg)?;
    let (e2, b2) = action_torsion_exponent(a2, cfg)?;
    let big_m = lcm_u64(e1, e2);
    let product = a1.product(a2)?;
    let mut notes = Vec::new();
    let mut best: Option<Candidate> = None;
    let mut levels = vec![1u64];
    if big_m > 1 {
        levels.push(big_m);
    }
    for &lvl in &levels {
        let (r1, r2) = if lvl == 1 {
            (a1.clone(), a2.clone())
        } else {
            (
                a1.restrict_lattice(&vec![lvl; d])?,
                a2.restrict_lattice(&vec![lvl; d])?,
            )
        };
        let p1 = irreducible_factors(&r1, cfg)?;
        let p2 = irreducible_factors(&r2, cfg)?;
        for (i, x) in p1.iter().enumerate() {
            for (j, y) in p2.iter().enumerate() {
                if x.dim() != y.dim() {
                    if lvl == 1 {
                        notes.push(format!(
                            "block dimensions {} vs {}: no common irreducible factor at full index",
                            x.dim(),
                            y.dim()
                        ));
                    }
                    continue;
                }
                for c in match_pieces(x, y, (i, j), &product, a1.m(), lvl, cfg)? {
                    let better = match &best {
                        None => true,
                        Some(b) => {
                            c.factor.index < b.factor.index
                                || (c.factor.index == b.factor.index
                                    && c.factor.embedding.is_identity()
                                    && !b.factor.embedding.is_identity())
                        }
                    };
                    if better {
                        best = Some(c);
                    }
                }
            }
        }
        if lvl == 1 && best.as_ref().is_some_and(|b| b.factor.index == 1) {
            break;
        }
    }
    let mut report = ComparisonReport {
        weakly_isomorphic: None,
        disjoint: Verdict::Unknown,
        common_factor: None,
        joining_witness: None,
        restriction: big_m,
        degree_bound: b1.max(b2),
        notes,
    };
    match best {
        Some(c) => {
            if !c.factor.stabilizer_complete {
                report.notes.push(format!(
                    "coset search skipped: index {} exceeds the bound {}; Λ may be larger",
                    c.factor.index, cfg.index_bound
                ));
            }
            if c.factor.dim == a1.m() && c.factor.dim == a2.m() {
                report.weakly_isomorphic = Some(WeakIsomorphism {
                    lambda: c.factor.lambda.clone(),
                    embedding: c.factor.embedding.clone(),
                });
            }
            report.disjoint = Verdict::No;
            report.joining_witness = Some(c.witness);
            report.common_factor = Some(c.factor);
        }
        None => {
            let f1 = has_virtually_cyclic_factor(a1, cfg)?.verdict;
            let f2 = has_virtually_cyclic_factor(a2, cfg)?.verdict;
            if f1 == Verdict::No && f2 == Verdict::No {
                report.disjoint = Verdict::Yes;
            } else {
                report.notes.push(String::from(
                    "a virtually cyclic factor may be present; absence of a witness does not imply disjointness",
                ));
            }
        }
    }
    Ok(report)
}

use num_traits::Zero;
use proptest::prelude::*;
use solenoid_core::exact::{
    cyclotomic, factor_poly, frac, newton_polygon, rat, resultant, valuation, Rat, RatPoly,
};
use solenoid_core::linalg::QMatrix;

fn poly_strategy(max_deg: usize, c: i64) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(-c..=c, 1..=max_deg + 1)
        .prop_map(|v| RatPoly::from_ints(&v))
        .prop_filter("nonzero of positive degree", |p| p.degree() >= 1)
}

/// Sylvester matrix determinant, built directly from the coefficient lists.
fn sylvester(f: &RatPoly, g: &RatPoly) -> Rat {
    let (m, n) = (f.deg(), g.deg());
    let size = m + n;
    let mut rows = vec![vec![Rat::zero(); size]; size];
    for i in 0..n {
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            rows[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            rows[n + i][i + k] = c.clone();
        }
    }
    QMatrix::from_rows(rows).unwrap().det().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_expands_back(f in poly_strategy(7, 6)) {
        let fac = factor_poly(&f).unwrap();
        prop_assert_eq!(fac.expand(), f.clone());
        for (q, _) in &fac.factors {
            prop_assert!(q.degree() >= 1);
            prop_assert!(q.is_integral() && q.lc() > Rat::zero());
        }
    }

    #[test]
    fn resultant_matches_sylvester(f in poly_strategy(4, 5), g in poly_strategy(4, 5)) {
        prop_assert_eq!(resultant(&f, &g).unwrap(), sylvester(&f, &g));
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(f in poly_strategy(4, 4), g in poly_strategy(4, 4)) {
        let r = resultant(&f, &g).unwrap();
        prop_assert_eq!(r.is_zero(), RatPoly::gcd(&f, &g).degree() >= 1);
    }

    #[test]
    fn gcd_divides_and_bezout(f in poly_strategy(5, 5), g in poly_strategy(5, 5), h in poly_strategy(2, 3)) {
        let (a, b) = (&f * &h, &g * &h);
        let (d, s, t) = RatPoly::ext_gcd(&a, &b);
        prop_assert!(a.rem(&d).is_zero() && b.rem(&d).is_zero());
        prop_assert_eq!(&(&s * &a) + &(&t * &b), d.clone());
        prop_assert!(d.rem(&h.monic()).is_zero());
    }

    #[test]
    fn newton_valuations_sum_to_constant_term(f in poly_strategy(6, 30), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        prop_assume!(!f.coeff(0).is_zero());
        let np = newton_polygon(&f, p).unwrap();
        let vals = np.root_valuations();
        prop_assert_eq!(vals.len(), f.deg());
        let sum: Rat = vals.iter().cloned().sum();
        let expect = Rat::from_integer((valuation(&f.coeff(0), p) - valuation(&f.lc(), p)).into());
        prop_assert_eq!(sum, expect);
    }

    #[test]
    fn squarefree_decomposition_reassembles(f in poly_strategy(3, 4), g in poly_strategy(2, 4)) {
        let h = &(&f * &g) * &g;
        let mut acc = RatPoly::constant(h.lc());
        for (q, e) in h.squarefree_decomposition() {
            prop_assert!(q.is_squarefree());
            acc = &acc * &q.pow(e as u32);
        }
        prop_assert_eq!(acc, h);
    }
}

#[test]
fn cyclotomic_product_is_x_n_minus_1() {
    for n in 1..=30u64 {
        let mut acc = RatPoly::one();
        for k in 1..=n {
            if n % k == 0 {
                acc = &acc * &cyclotomic(k);
            }
        }
        let mut v = vec![0i64; n as usize + 1];
        v[0] = -1;
        v[n as usize] = 1;
        assert_eq!(acc, RatPoly::from_ints(&v), "n = {}", n);
    }
}

#[test]
fn factor_known_polynomials() {
    // x⁴ + 4 = (x² − 2x + 2)(x² + 2x + 2).
    let f = RatPoly::from_ints(&[4, 0, 0, 0, 1]);
    let fac = factor_poly(&f).unwrap();
    assert_eq!(fac.factors.len(), 2);
    // x⁴ + 1 is irreducible over ℚ but reducible mod every prime.
    let g = RatPoly::from_ints(&[1, 0, 0, 0, 1]);
    assert_eq!(factor_poly(&g).unwrap().factors.len(), 1);
    // (2x − 1)³ (x² + 3) with content.
    let h =
        (&RatPoly::from_ints(&[-1, 2]).pow(3) * &RatPoly::from_ints(&[3, 0, 1])).scale(&frac(5, 3));
    let fac = factor_poly(&h).unwrap();
    assert_eq!(fac.expand(), h);
    assert!(fac
        .factors
        .iter()
        .any(|(q, e)| *q == RatPoly::from_ints(&[-1, 2]) && *e == 3));
}

#[test]
fn newton_polygon_of_eisenstein() {
    // Eisenstein at 2: all roots have valuation 1/3.
    let f = RatPoly::from_ints(&[2, 4, 6, 1]);
    let v = newton_polygon(&f, 2).unwrap().root_valuations();
    assert_eq!(v, vec![frac(1, 3); 3]);
    // x² − 12 at 2: both roots have valuation 1.
    let g = RatPoly::from_ints(&[-12, 0, 1]);
    assert_eq!(
        newton_polygon(&g, 2).unwrap().root_valuations(),
        vec![rat(1), rat(1)]
    );
}

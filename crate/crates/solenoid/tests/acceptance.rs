//! End-to-end acceptance suite. Runs without the libtest harness so that
//! every criterion prints its PASS/FAIL line even when an earlier one fails.

use std::time::{Duration, Instant};

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use solenoid_core::action::{invariant_flag, random_action, SolenoidAction};
use solenoid_core::classify::{
    commutant_torsion, compare, has_virtually_cyclic_factor, total_irreducibility, verify_joining,
    virtually_cyclic, Verdict,
};
use solenoid_core::entropy::{
    block_entropy, entropy_contribution, haar_entropy, kappa, shape_identity_report,
    HomogeneousMeasure, LogValue,
};
use solenoid_core::exact::{BigInt, Rat, RatPoly};
use solenoid_core::interval::Interval;
use solenoid_core::linalg::{jordan_chevalley, minpoly, QMatrix, QSubspace};
use solenoid_core::numberfield::{diagonalize_block, FieldElement, NumberFieldAction};
use solenoid_core::weights::{
    block_primes, check_product_formula, padic_weights, Entries, WeightSystem,
};
use solenoid_core::Config;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: solenoid_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn x2x3() -> SolenoidAction {
    SolenoidAction::new(
        vec![QMatrix::from_i64(&[&[2]]), QMatrix::from_i64(&[&[3]])],
        None,
    )
    .unwrap()
}

fn twisted() -> SolenoidAction {
    SolenoidAction::new(
        vec![
            QMatrix::from_i64(&[&[0, -2], &[2, 0]]),
            QMatrix::from_i64(&[&[3, 0], &[0, 3]]),
        ],
        None,
    )
    .unwrap()
}

fn width(i: &Interval) -> f64 {
    i.width().to_f64()
}

fn blocks_of(a: &SolenoidAction, seed: u64) -> Result<Vec<NumberFieldAction>, String> {
    let flag = lib(invariant_flag(a, seed))?;
    flag.quotient_blocks
        .iter()
        .map(|g| lib(diagonalize_block(g, seed)))
        .collect()
}

fn random_n(rng: &mut ChaCha8Rng, d: usize, r: i64) -> Vec<i64> {
    loop {
        let n: Vec<i64> = (0..d).map(|_| rng.gen_range(-r..=r)).collect();
        if n.iter().any(|&x| x != 0) {
            return n;
        }
    }
}

fn product_formula() -> Outcome {
    let cfg = Config::default();
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut count, mut worst, mut max_deg) = (0, 0f64, 0);
    while count < 200 {
        let (m, d) = (rng.gen_range(1..=6), rng.gen_range(1..=3));
        let a = random_action(&mut rng, m, d, 20);
        for nf in blocks_of(&a, 0)? {
            let n = random_n(&mut rng, d, 4);
            let r = lib(check_product_formula(&nf, &n, &cfg))?;
            ensure(r.contains_zero() && width(&r) < 1e-9, || {
                format!(
                    "degree {} n {:?}: residual {}",
                    nf.degree(),
                    n,
                    r.to_decimal(12)
                )
            })?;
            worst = worst.max(width(&r));
            max_deg = max_deg.max(nf.degree());
            count += 1;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), || format!("took {:.1?}", t))?;
    Ok(format!(
        "{} elements, degrees ≤ {}, widest residual {:.1e}, {:.1?}",
        count, max_deg, worst, t
    ))
}

fn classical_entropy() -> Outcome {
    let sys = lib(WeightSystem::new(&x2x3(), &Config::default()))?;
    let h10 = lib(haar_entropy(&sys, &[1, 0]))?.total;
    let h11 = lib(haar_entropy(&sys, &[1, 1]))?.total;
    ensure((h10.to_f64() - 2f64.ln()).abs() < 1e-9, || {
        format!("h(1,0) = {}", h10)
    })?;
    ensure((h11.to_f64() - 6f64.ln()).abs() < 1e-9, || {
        format!("h(1,1) = {}", h11)
    })?;
    let exact = |v: &LogValue, want: &[(u64, i64)]| {
        v.arch.is_exact_zero()
            && v.exact.len() == want.len()
            && want.iter().all(|(p, c)| v.exact.get(p) == Some(&rat(*c)))
    };
    ensure(exact(&h10, &[(2, 1)]), || {
        format!("h(1,0) exact part {}", h10)
    })?;
    ensure(exact(&h11, &[(2, 1), (3, 1)]), || {
        format!("h(1,1) exact part {}", h11)
    })?;
    Ok(format!(
        "h(1,0) = {}, h(1,1) = {}",
        h10.exact_string(),
        h11.exact_string()
    ))
}

/// Classes of `block` that carry positive entropy for α^n.
fn stable_classes(sys: &WeightSystem, n: &[i64], block: usize) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for w in sys.block_weights(block) {
        if lib(sys.sign(w, n))? < 0 {
            if let Some(c) = sys.partition().class_of(w) {
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

fn kappa_ratio() -> Outcome {
    let sys = lib(WeightSystem::new(&x2x3(), &Config::default()))?;
    let n = [1, 1];
    let two = (0..sys.partition().classes.len())
        .find(|&c| {
            sys.partition().classes[c]
                .members
                .iter()
                .any(|&w| sys.weights()[w].place.prime() == Some(2))
        })
        .ok_or("no 2-adic class")?;
    let k = lib(kappa(&sys, &n, &[two], 0))?;
    let target = 2f64.ln() / 6f64.ln();
    ensure(
        k.value.lo().to_f64() <= target && target <= k.value.hi().to_f64(),
        || format!("κ = {}", k.value.to_decimal(15)),
    )?;
    ensure(width(&k.value) < 1e-9, || {
        format!("κ width {:.1e}", width(&k.value))
    })?;
    let full = stable_classes(&sys, &n, 0)?;
    let one = lib(kappa(&sys, &n, &full, 0))?;
    ensure(one.is_one && one.value == Interval::one(), || {
        "κ for the full stable set is not exactly 1".into()
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut cases, mut subsets) = (0, 0);
    while cases < 50 {
        let (m, d) = (rng.gen_range(1..=4), rng.gen_range(1..=3));
        let a = random_action(&mut rng, m, d, 20);
        let sys = lib(WeightSystem::new(&a, &Config::default()))?;
        let n = random_n(&mut rng, d, 3);
        let Some(b) = (0..sys.blocks().len())
            .find(|&b| block_entropy(&sys, b, &n).is_ok_and(|h| !h.is_zero()))
        else {
            continue;
        };
        let s = stable_classes(&sys, &n, b)?;
        let all = lib(kappa(&sys, &n, &s, b))?;
        ensure(all.is_one, || {
            format!("case {}: full stable set gives κ ≠ 1", cases)
        })?;
        for mask in 0..(1u32 << s.len()) - 1 {
            let v: Vec<usize> = (0..s.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| s[i])
                .collect();
            let k = lib(kappa(&sys, &n, &v, b))?;
            ensure(k.below_one && k.value.lt(&Interval::one()), || {
                format!(
                    "case {}: κ({:?}) = {} not below 1",
                    cases,
                    v,
                    k.value.to_decimal(12)
                )
            })?;
            subsets += 1;
        }
        cases += 1;
    }
    Ok(format!(
        "κ(2-adic) = {}, {} proper subsets over {} random cases",
        k.value.to_decimal(12),
        subsets,
        cases
    ))
}

fn twisted_example() -> Outcome {
    let cfg = Config::default();
    let (a1, a2) = (x2x3(), twisted());
    ensure(
        lib(a2.element(&[4, 0]))? == QMatrix::scalar(2, rat(16)),
        || "α₂^(4,0) is not 16·Id".into(),
    )?;
    let r = lib(compare(&a1, &a2, &cfg))?;
    ensure(r.disjoint == Verdict::No, || {
        format!("disjoint = {}", r.disjoint)
    })?;
    let c = r.common_factor.as_ref().ok_or("no common factor")?;
    ensure(c.lambda == vec![vec![4, 0], vec![0, 1]], || {
        format!("Λ = {:?}", c.lambda)
    })?;
    let w = r.joining_witness.as_ref().ok_or("no joining witness")?;
    ensure(
        lib(verify_joining(&lib(a1.product(&a2))?, w, &c.lambda, 1))?,
        || "joining witness fails verification".into(),
    )?;
    ensure(r.weakly_isomorphic.is_none(), || {
        "unexpected weak isomorphism".into()
    })?;
    let note = r
        .notes
        .iter()
        .find(|n| n.contains("block dimensions 1 vs 2"))
        .ok_or("dimension note missing")?;
    let j = QMatrix::from_i64(&[&[0, -1], &[1, 0]]);
    let t = lib(commutant_torsion(&a2, &cfg))?;
    ensure(
        t.elements().contains(&j) && &j * &j == QMatrix::scalar(2, rat(-1)),
        || "rotation J missing from the symmetry group".into(),
    )?;
    Ok(format!(
        "Λ = {:?}, witness dim {}, note: {}",
        c.lambda,
        w.dim(),
        note
    ))
}

// ---- p-adic oracle: Hensel lifting in ℤ/p^40 ----

const LIFT: u32 = 40;

struct Zp {
    p: BigInt,
    pk: BigInt,
    phi: BigInt,
}

impl Zp {
    fn new(p: u64) -> Self {
        let pb = BigInt::from(p);
        let pk = num_traits::pow(pb.clone(), LIFT as usize);
        let phi = &pk - &pk / &pb;
        Zp { p: pb, pk, phi }
    }

    fn norm(&self, x: &BigInt) -> BigInt {
        let r = x % &self.pk;
        if r.is_negative() {
            r + &self.pk
        } else {
            r
        }
    }

    fn inv(&self, x: &BigInt) -> BigInt {
        self.norm(x).modpow(&(&self.phi - 1), &self.pk)
    }

    /// Image of a p-integral rational.
    fn of(&self, r: &Rat) -> Option<BigInt> {
        (r.denom() % &self.p != BigInt::zero())
            .then(|| self.norm(&(r.numer() * self.inv(r.denom()))))
    }

    fn eval(&self, c: &[BigInt], x: &BigInt) -> BigInt {
        c.iter()
            .rev()
            .fold(BigInt::zero(), |acc, a| self.norm(&(acc * x + a)))
    }

    fn val(&self, x: &BigInt) -> Option<u32> {
        let mut x = self.norm(x);
        if x.is_zero() {
            return None;
        }
        let mut v = 0;
        while (&x % &self.p).is_zero() {
            x /= &self.p;
            v += 1;
        }
        Some(v)
    }

    /// All roots of h in ℤ_p to precision p^40, if h is p-integral and splits
    /// into distinct linear factors mod p.
    fn split_roots(&self, h: &RatPoly) -> Option<Vec<BigInt>> {
        let c: Vec<BigInt> = h
            .monic()
            .coeffs()
            .iter()
            .map(|r| self.of(r))
            .collect::<Option<_>>()?;
        let dc: Vec<BigInt> = c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| self.norm(&(a * BigInt::from(i))))
            .collect();
        let p = self.p.to_u64()?;
        let mut roots = Vec::new();
        for r in 0..p {
            let x = BigInt::from(r);
            if (self.eval(&c, &x) % &self.p).is_zero() {
                if (self.eval(&dc, &x) % &self.p).is_zero() {
                    return None;
                }
                roots.push(x);
            }
        }
        if roots.len() != h.deg() {
            return None;
        }
        for r in roots.iter_mut() {
            for _ in 0..7 {
                let step = self.eval(&c, r) * self.inv(&self.eval(&dc, r));
                *r = self.norm(&(&*r - step));
            }
            debug_assert!(self.eval(&c, r).is_zero());
        }
        Some(roots)
    }

    /// v_p(q(r)) for rational q.
    fn val_at(&self, q: &RatPoly, r: &BigInt) -> Option<i64> {
        let den = q
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer_lcm(&acc, c.denom()));
        let ints: Vec<BigInt> = q
            .coeffs()
            .iter()
            .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
            .collect();
        let v = self.val(&self.eval(&ints, r))? as i64;
        let mut dv = 0;
        let mut dd = den;
        while (&dd % &self.p).is_zero() {
            dd /= &self.p;
            dv += 1;
        }
        Some(v - dv)
    }
}

fn num_integer_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut x, mut y) = (a.abs(), b.abs());
    while !y.is_zero() {
        let t = &x % &y;
        x = y;
        y = t;
    }
    a.abs() / &x * b.abs()
}

/// Coordinates of `z` in the power basis of `beta`.
fn in_basis_of(beta: &FieldElement, z: &FieldElement, k: usize) -> Option<RatPoly> {
    let pad = |p: &RatPoly| (0..k).map(|i| p.coeff(i)).collect::<Vec<Rat>>();
    let cols: Vec<Vec<Rat>> = (0..k)
        .map(|i| pad(beta.pow(i as i64).unwrap().poly()))
        .collect();
    QMatrix::from_columns(k, &cols)
        .solve(&pad(z.poly()))
        .map(RatPoly::new)
}

/// Sorted −v_p(ζ) vectors, one per place over p, or None when no primitive
/// element splits mod p.
fn oracle(nf: &NumberFieldAction, p: u64) -> Option<Vec<Vec<Rat>>> {
    let zp = Zp::new(p);
    let k = nf.degree();
    let mut candidates = vec![nf.field().theta()];
    for j in 0..nf.d() {
        candidates.push(nf.zeta(j));
        candidates.push(nf.zeta(j).inv().ok()?);
    }
    for beta in candidates {
        let h = beta.charpoly();
        if !h.is_squarefree() {
            continue;
        }
        let Some(roots) = zp.split_roots(&h) else {
            continue;
        };
        let qs: Vec<RatPoly> = (0..nf.d())
            .map(|j| in_basis_of(&beta, &nf.zeta(j), k))
            .collect::<Option<_>>()?;
        let mut out: Vec<Vec<Rat>> = roots
            .iter()
            .map(|r| {
                qs.iter()
                    .map(|q| zp.val_at(q, r).map(|v| rat(-v)))
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<_>>()?;
        out.sort();
        return Some(out);
    }
    None
}

fn library_weights(nf: &NumberFieldAction, p: u64) -> Result<Vec<Vec<Rat>>, String> {
    let mut out = Vec::new();
    for w in lib(padic_weights(nf, p))? {
        if let Entries::Padic { coeffs, .. } = &w.entries {
            for _ in 0..w.delta {
                out.push(coeffs.clone());
            }
        }
    }
    out.sort();
    Ok(out)
}

fn padic_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut blocks, mut pairs, mut nontrivial) = (0, 0, 0);
    while blocks < 50 {
        let (m, d) = (rng.gen_range(1..=4), rng.gen_range(1..=3));
        let a = random_action(&mut rng, m, d, 20);
        for nf in blocks_of(&a, 0)? {
            let mut primes = lib(block_primes(&nf))?;
            primes.extend([2, 3, 5, 7, 11, 13]);
            primes.sort();
            primes.dedup();
            let mut tested = false;
            for p in primes {
                let Some(expect) = oracle(&nf, p) else {
                    continue;
                };
                let got = library_weights(&nf, p)?;
                ensure(got == expect, || {
                    format!(
                        "degree {} at p = {}: library {:?}, oracle {:?}",
                        nf.degree(),
                        p,
                        got,
                        expect
                    )
                })?;
                tested = true;
                pairs += 1;
                nontrivial += usize::from(expect.iter().flatten().any(|x| !x.is_zero()));
            }
            if tested {
                blocks += 1;
            }
        }
    }
    let t = start.elapsed();
    ensure(nontrivial > 0, || "no block had a nonzero valuation".into())?;
    ensure(t < Duration::from_secs(60), || format!("took {:.1?}", t))?;
    Ok(format!(
        "{} blocks, {} (block, prime) pairs, {} with nonzero valuations, {:.1?}",
        blocks, pairs, nontrivial, t
    ))
}

fn encloses_zero(v: &LogValue) -> bool {
    v.to_interval(120).contains_zero()
}

fn entropy_properties() -> Outcome {
    let cfg = Config::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checks = 0;
    for case in 0..100 {
        let (m, d) = (rng.gen_range(1..=6), rng.gen_range(1..=3));
        let a = random_action(&mut rng, m, d, 20);
        let sys = lib(WeightSystem::new(&a, &cfg))?;
        let classes: Vec<usize> = (0..sys.partition().classes.len()).collect();
        for _ in 0..3 {
            let n = random_n(&mut rng, d, 3);
            let h = lib(haar_entropy(&sys, &n))?.total;
            let mut blocks = LogValue::zero();
            for b in 0..sys.blocks().len() {
                blocks = blocks.add(&lib(block_entropy(&sys, b, &n))?);
            }
            let fail =
                |what: &str| format!("case {} (m = {}, d = {}) n {:?}: {}", case, m, d, n, what);
            ensure(encloses_zero(&blocks.sub(&h)), || fail("flag additivity"))?;
            let by_class = lib(entropy_contribution(&sys, &n, &classes, None))?;
            ensure(encloses_zero(&by_class.sub(&h)), || {
                fail("class additivity")
            })?;
            let neg: Vec<i64> = n.iter().map(|x| -x).collect();
            ensure(
                encloses_zero(&lib(haar_entropy(&sys, &neg))?.total.sub(&h)),
                || fail("symmetry"),
            )?;
            for k in 2..=5 {
                let kn: Vec<i64> = n.iter().map(|x| k * x).collect();
                let hk = lib(haar_entropy(&sys, &kn))?.total;
                ensure(encloses_zero(&hk.sub(&h.scale(&rat(k), 120))), || {
                    fail(&format!("homogeneity k = {}", k))
                })?;
            }
            checks += 7;
        }
    }
    Ok(format!("100 actions, {} identities, no failures", checks))
}

fn action(rows: &[&[&[i64]]]) -> SolenoidAction {
    SolenoidAction::new(rows.iter().map(|m| QMatrix::from_i64(m)).collect(), None).unwrap()
}

fn truth_table() -> Outcome {
    let cfg = Config::default();
    let golden = action(&[&[&[0, 1], &[1, 1]], &[&[1, 1], &[1, 2]]]);
    let gaussian = action(&[&[&[0, -1], &[1, 0]], &[&[2, 0], &[0, 2]]]);
    let sqrt2 = action(&[&[&[1, 2], &[1, 1]], &[&[3, 2], &[1, 3]]]);
    let cat = action(&[&[&[2, 1], &[1, 1]]]);
    let vc = |a: &SolenoidAction| lib(virtually_cyclic(a, &cfg)).map(|r| r.verdict);
    let ti = |a: &SolenoidAction| lib(total_irreducibility(a, &cfg)).map(|r| r.totally_irreducible);
    ensure(vc(&golden)? == Verdict::Yes, || {
        "golden pair not virtually cyclic".into()
    })?;
    ensure(vc(&x2x3())? == Verdict::No, || {
        "x2x3 virtually cyclic".into()
    })?;
    ensure(vc(&gaussian)? == Verdict::Yes, || {
        "(i, 2) not virtually cyclic".into()
    })?;
    ensure(!ti(&gaussian)?, || "(i, 2) totally irreducible".into())?;
    ensure(ti(&sqrt2)?, || {
        "(1+√2, 3+√2) not totally irreducible".into()
    })?;
    ensure(vc(&sqrt2)? == Verdict::No, || {
        "(1+√2, 3+√2) virtually cyclic".into()
    })?;
    ensure(
        lib(has_virtually_cyclic_factor(&cat, &cfg))?.verdict == Verdict::Yes,
        || "d = 1 action lacks a cyclic factor".into(),
    )?;
    Ok("7 verdicts exact".into())
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rat {
    Rat::new(
        rng.gen_range(-6i64..=6).into(),
        rng.gen_range(1i64..=3).into(),
    )
}

/// Invertible matrices, most of them with a nontrivial unipotent part.
fn jc_matrix(rng: &mut ChaCha8Rng, m: usize) -> QMatrix {
    loop {
        let a = if rng.gen_bool(0.25) {
            QMatrix::new(m, m, (0..m * m).map(|_| random_rational(rng)).collect()).unwrap()
        } else {
            let mut blocks = Vec::new();
            let mut left = m;
            while left > 0 {
                let deg = rng.gen_range(1..=left.min(3));
                let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-3..=3)).collect();
                if c[0] == 0 {
                    c[0] = 1;
                }
                c.push(1);
                let comp = QMatrix::companion(&RatPoly::from_ints(&c));
                if 2 * deg <= left && rng.gen_bool(0.6) {
                    let mut j = QMatrix::block_diag(&[&comp, &comp]);
                    for i in 0..deg {
                        j.set(i, deg + i, rat(1));
                    }
                    blocks.push(j);
                    left -= 2 * deg;
                } else {
                    blocks.push(comp);
                    left -= deg;
                }
            }
            let refs: Vec<&QMatrix> = blocks.iter().collect();
            let j = QMatrix::block_diag(&refs);
            let p = QMatrix::new(
                m,
                m,
                (0..m * m)
                    .map(|_| Rat::from_integer(rng.gen_range(-2i64..=2).into()))
                    .collect(),
            )
            .unwrap();
            match p.inverse() {
                Ok(pi) => &(&p * &j) * &pi,
                Err(_) => continue,
            }
        };
        if a.det().is_ok_and(|d| !d.is_zero()) {
            return a;
        }
    }
}

fn jordan_chevalley_check() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut nontrivial = 0;
    for case in 0..100 {
        let m = 1 + case % 6;
        let a = jc_matrix(&mut rng, m);
        let (d, u) = lib(jordan_chevalley(&a))?;
        let id = QMatrix::identity(m);
        ensure(&d * &u == a, || format!("case {}: D·U ≠ A", case))?;
        ensure(lib(minpoly(&d))?.is_squarefree(), || {
            format!("case {}: D not semisimple", case)
        })?;
        ensure(lib((&u - &id).pow(m as i64))?.is_zero(), || {
            format!("case {}: U not unipotent", case)
        })?;
        nontrivial += usize::from(u != id);
    }
    Ok(format!("100 matrices, {} with U ≠ I", nontrivial))
}

fn shape_identity() -> Outcome {
    let cfg = Config::default();
    let a = lib(x2x3().product(&x2x3()))?;
    let diag = QSubspace::from_vectors(2, &[vec![rat(1), rat(1)]]);
    let mut summary = Vec::new();
    for (name, g, expect) in [
        ("diagonal", diag, 1.0),
        ("full product", QSubspace::full(2), 2.0),
    ] {
        let g = lib(HomogeneousMeasure::new(&a, g))?;
        let r = lib(shape_identity_report(&a, &g, None, &cfg))?;
        ensure(r.constant, || format!("{}: table not constant", name))?;
        let k = r.kappa.as_ref().ok_or("no common ratio")?;
        ensure(
            width(k) < 1e-9 && (k.to_f64() - expect).abs() < 1e-9,
            || format!("{}: ratio {}", name, k.to_decimal(12)),
        )?;
        for row in &r.rows {
            let ratio = row.ratio.as_ref().ok_or_else(|| {
                format!("{}: n {:?} class {} has no ratio", name, row.n, row.class)
            })?;
            ensure(width(ratio) < 1e-9 && ratio.overlaps(k), || {
                format!("{}: n {:?} class {}", name, row.n, row.class)
            })?;
        }
        ensure(
            r.rows.iter().all(|row| row.n.iter().all(|x| x.abs() <= 3)),
            || "sample outside the grid".into(),
        )?;
        summary.push(format!(
            "{} ratio {:.3} over {} rows",
            name,
            k.to_f64(),
            r.rows.len()
        ));
    }
    Ok(summary.join("; "))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("product formula", product_formula),
        ("classical entropy values", classical_entropy),
        ("kappa ratio", kappa_ratio),
        ("twisted rotation example", twisted_example),
        ("p-adic weight oracle", padic_oracle),
        ("entropy structure properties", entropy_properties),
        ("classification truth table", truth_table),
        ("Jordan–Chevalley", jordan_chevalley_check),
        ("shape identity", shape_identity),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(msg) => println!("PASS {}: {} [{:.2?}]", name, msg, start.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {}: {} [{:.2?}]", name, msg, start.elapsed());
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

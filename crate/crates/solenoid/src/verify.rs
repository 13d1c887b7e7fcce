//! Self-check suites run by `solenoid verify`.

use solenoid_core::action::SolenoidAction;
use solenoid_core::classify::{
    compare, total_irreducibility, verify_joining, virtually_cyclic, Verdict,
};
use solenoid_core::entropy::{
    block_entropy, entropy_contribution, haar_entropy, sample_grid, shape_identity_report,
    HomogeneousMeasure, LogValue,
};
use solenoid_core::exact::Rat;
use solenoid_core::linalg::{jordan_chevalley, minpoly, QMatrix, QSubspace};
use solenoid_core::weights::{check_product_formula, WeightSystem};
use solenoid_core::{Config, Result};

use crate::report::{Check, VerifyJson};

/// Largest interval width accepted for a residual that should vanish.
pub const TOLERANCE: f64 = 1e-9;

struct Tally {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, extra: &str) -> Check {
        let detail = match self.failures.first() {
            Some(f) => format!("{} failure(s), first: {}", self.failures.len(), f),
            None => extra.to_string(),
        };
        Check {
            name: self.name.into(),
            passed: self.failures.is_empty(),
            cases: self.cases,
            detail,
        }
    }
}

fn vanishes(v: &LogValue, prec: u32) -> bool {
    let i = v.to_interval(prec);
    i.contains_zero() && i.width().to_f64() < TOLERANCE
}

/// The diagonal and full subgroups of the self-product, as dual subspaces.
fn self_joinings(a: &SolenoidAction) -> Result<(SolenoidAction, QSubspace, QSubspace)> {
    let m = a.m();
    let product = a.product(a)?;
    let diag: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            (0..2 * m)
                .map(|j| {
                    if j == i || j == i + m {
                        Rat::from_integer(1.into())
                    } else {
                        Rat::from_integer(0.into())
                    }
                })
                .collect()
        })
        .collect();
    Ok((
        product,
        QSubspace::from_vectors(2 * m, &diag),
        QSubspace::full(2 * m),
    ))
}

/// Runs every suite on `a`, plus the comparison witness checks when a second
/// action is given.
pub fn verify(
    a: &SolenoidAction,
    other: Option<&SolenoidAction>,
    cfg: &Config,
) -> Result<VerifyJson> {
    let sys = WeightSystem::new(a, cfg)?;
    let grid = sample_grid(a.d(), cfg.sample_bound);
    let prec = cfg.precision_bits + 16;
    let mut checks = Vec::new();

    let mut t = Tally::new("product formula");
    for (b, block) in sys.blocks().iter().enumerate() {
        for n in &grid {
            let r = check_product_formula(&block.nf, n, cfg)?;
            t.record(r.contains_zero() && r.width().to_f64() < TOLERANCE, || {
                format!("block {} n {:?}: {}", b, n, r.to_decimal(12))
            });
        }
    }
    checks.push(t.finish(""));

    let reports: Vec<_> = grid
        .iter()
        .map(|n| haar_entropy(&sys, n))
        .collect::<Result<_>>()?;
    let all_classes: Vec<usize> = (0..sys.partition().classes.len()).collect();
    let mut flag_add = Tally::new("flag additivity");
    let mut class_add = Tally::new("class additivity");
    let mut sym = Tally::new("symmetry");
    let mut hom = Tally::new("homogeneity");
    for (n, r) in grid.iter().zip(&reports) {
        let mut blocks = LogValue::zero();
        for b in 0..sys.blocks().len() {
            blocks = blocks.add(&block_entropy(&sys, b, n)?);
        }
        flag_add.record(vanishes(&blocks.sub(&r.total), prec), || {
            format!("n {:?}", n)
        });
        let classes = entropy_contribution(&sys, n, &all_classes, None)?;
        class_add.record(vanishes(&classes.sub(&r.total), prec), || {
            format!("n {:?}", n)
        });
        let neg: Vec<i64> = n.iter().map(|x| -x).collect();
        let back = haar_entropy(&sys, &neg)?;
        sym.record(vanishes(&back.total.sub(&r.total), prec), || {
            format!("n {:?}", n)
        });
        for k in 2..=5i64 {
            let kn: Vec<i64> = n.iter().map(|x| k * x).collect();
            let hk = haar_entropy(&sys, &kn)?.total;
            let scaled = r.total.scale(&Rat::from_integer(k.into()), prec);
            hom.record(vanishes(&hk.sub(&scaled), prec), || {
                format!("n {:?}, k = {}", n, k)
            });
        }
    }
    checks.extend([
        flag_add.finish(""),
        class_add.finish(""),
        sym.finish(""),
        hom.finish("k = 2..5"),
    ]);

    let mut shape = Tally::new("shape identity");
    let note = if sys.blocks().len() == 1 && reports.iter().any(|r| !r.total.is_zero()) {
        let (product, diag, full) = self_joinings(a)?;
        for (name, g, expect) in [("diagonal", diag, 1.0), ("full product", full, 2.0)] {
            let g = HomogeneousMeasure::new(&product, g)?;
            let r = shape_identity_report(&product, &g, None, cfg)?;
            let ok = r.constant
                && r.kappa.as_ref().is_some_and(|k| {
                    k.width().to_f64() < TOLERANCE && (k.to_f64() - expect).abs() < TOLERANCE
                });
            shape.record(ok, || {
                format!("{} joining: ratio table not constant at {}", name, expect)
            });
        }
        "diagonal ratio 1, full product ratio 2"
    } else {
        "skipped: needs a single flag block with positive entropy"
    };
    checks.push(shape.finish(note));

    let mut jc = Tally::new("Jordan–Chevalley");
    for (j, g) in a.generators().iter().enumerate() {
        let (d, u) = jordan_chevalley(g)?;
        let nil = (&u - &QMatrix::identity(a.m())).pow(a.m() as i64)?;
        let ok =
            &d * &u == *g && d.commutes_with(&u) && minpoly(&d)?.is_squarefree() && nil.is_zero();
        jc.record(ok, || format!("generator {}", j + 1));
    }
    checks.push(jc.finish(""));

    let mut cls = Tally::new("classification certificates");
    let t = total_irreducibility(a, cfg)?;
    cls.record(!t.totally_irreducible || t.irreducible, || {
        "totally irreducible but reducible".into()
    });
    let vc = virtually_cyclic(a, cfg)?;
    for (b, &r) in vc.relations.basis.iter().zip(&vc.relations.orders) {
        let rb: Vec<i64> = b.iter().map(|x| x * r as i64).collect();
        cls.record(a.element(&rb)?.is_identity(), || {
            format!("relation {:?} does not have order {}", b, r)
        });
    }
    checks.push(cls.finish(""));

    if let Some(b) = other {
        let mut cmp = Tally::new("comparison witnesses");
        let ab = compare(a, b, cfg)?;
        let ba = compare(b, a, cfg)?;
        cmp.record(ab.disjoint == ba.disjoint, || {
            format!(
                "disjoint verdicts differ: {} vs {}",
                ab.disjoint, ba.disjoint
            )
        });
        cmp.record(
            ab.weakly_isomorphic.is_none() || ab.disjoint == Verdict::No,
            || "weak isomorphism without a joining".into(),
        );
        if let (Some(c), Some(w)) = (&ab.common_factor, &ab.joining_witness) {
            cmp.record(verify_joining(&a.product(b)?, w, &c.lambda, a.m())?, || {
                "joining witness failed".into()
            });
        }
        if let (Some(c), Some(w)) = (&ba.common_factor, &ba.joining_witness) {
            cmp.record(verify_joining(&b.product(a)?, w, &c.lambda, b.m())?, || {
                "reverse joining witness failed".into()
            });
        }
        checks.push(cmp.finish(""));
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyJson { checks, passed })
}

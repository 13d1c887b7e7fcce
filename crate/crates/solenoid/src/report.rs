//! Serializable reports and their text rendering.
//!
//! Every report is assembled from library results in a fixed order, so the
//! JSON for a given input, seed and precision is byte-identical across runs.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use solenoid_core::action::SolenoidAction;
use solenoid_core::classify::{
    commutant_torsion, compare, has_virtually_cyclic_factor, total_irreducibility, verify_joining,
    virtually_cyclic, ComparisonReport, Embedding, Verdict,
};
use solenoid_core::entropy::{haar_entropy, EntropyReport, LogValue};
use solenoid_core::interval::Interval;
use solenoid_core::linalg::QSubspace;
use solenoid_core::weights::{Certainty, Entries, WeightSystem};
use solenoid_core::{Config, Result};

use crate::format::{action_json, matrix_json, poly_json, rat_string};

/// Tool identity and every knob that influences the output.
#[derive(Clone, Debug, Serialize)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub precision_bits: u32,
    pub max_precision_bits: u32,
    pub index_bound: u64,
    pub sample_bound: i64,
    pub inputs: Vec<String>,
}

impl Header {
    pub fn new(command: &str, cfg: &Config, inputs: &[String]) -> Self {
        Header {
            tool: "solenoid",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            seed: cfg.seed,
            precision_bits: cfg.precision_bits,
            max_precision_bits: cfg.max_precision_bits,
            index_bound: cfg.index_bound,
            sample_bound: cfg.sample_bound,
            inputs: inputs.to_vec(),
        }
    }
}

/// Decimal digits that the configured precision supports.
pub fn digits(cfg: &Config) -> usize {
    ((cfg.precision_bits as f64 * std::f64::consts::LOG10_2) as usize).clamp(6, 40)
}

fn interval_string(i: &Interval, digits: usize) -> String {
    i.to_decimal(digits)
}

fn verdict_json(v: Verdict) -> Value {
    match v {
        Verdict::Yes => Value::Bool(true),
        Verdict::No => Value::Bool(false),
        Verdict::Unknown => Value::String("unknown".into()),
    }
}

fn subspace_json(s: &QSubspace) -> Vec<Vec<String>> {
    s.basis()
        .iter()
        .map(|v| v.iter().map(rat_string).collect())
        .collect()
}

/// A logarithmic quantity: exact "q × log p" parts plus an enclosure of
/// the whole value.
#[derive(Clone, Debug, Serialize)]
pub struct LogJson {
    pub exact: Vec<String>,
    pub exact_only: bool,
    pub interval: String,
    pub approx: f64,
}

impl LogJson {
    pub fn new(v: &LogValue, cfg: &Config) -> Self {
        LogJson {
            exact: v
                .exact
                .iter()
                .map(|(p, c)| format!("{} × log {}", rat_string(c), p))
                .collect(),
            exact_only: v.is_exact(),
            interval: interval_string(&v.to_interval(cfg.precision_bits + 8), digits(cfg)),
            approx: v.to_f64(),
        }
    }

    fn text(&self) -> String {
        match (self.exact.is_empty(), self.exact_only) {
            (true, true) => "0".into(),
            (false, true) => format!("{} = {}", self.exact.join(" + "), self.interval),
            _ if self.exact.is_empty() => self.interval.clone(),
            _ => format!("{} + … = {}", self.exact.join(" + "), self.interval),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FlagJson {
    pub block_dims: Vec<usize>,
    /// Columns adapted to the flag, as rows of the change of basis.
    pub basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockJson {
    pub index: usize,
    pub dim: usize,
    /// Minimal polynomial of the primitive element, ascending coefficients.
    pub field: Vec<String>,
    pub multipliers: Vec<Vec<String>>,
    pub basis_map: Vec<Vec<String>>,
    pub primes: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightJson {
    pub index: usize,
    pub block: usize,
    pub place: String,
    pub delta: usize,
    pub entries: Vec<String>,
    pub class: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassJson {
    pub index: usize,
    pub members: Vec<usize>,
    pub delta: usize,
    pub certainty: String,
    pub undecided: bool,
    pub direction: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightsJson {
    pub flag: FlagJson,
    pub blocks: Vec<BlockJson>,
    pub weights: Vec<WeightJson>,
    pub classes: Vec<ClassJson>,
    pub zero_weights: Vec<usize>,
}

impl WeightsJson {
    pub fn new(sys: &WeightSystem, cfg: &Config) -> Self {
        let flag = sys.flag();
        let ws = sys.weights();
        let part = sys.partition();
        let digits = digits(cfg);
        let blocks = sys
            .blocks()
            .iter()
            .enumerate()
            .map(|(i, b)| BlockJson {
                index: i,
                dim: b.nf.degree(),
                field: poly_json(b.nf.field().poly()),
                multipliers: b.nf.multipliers().iter().map(poly_json).collect(),
                basis_map: matrix_json(b.nf.basis_map()),
                primes: b.primes.clone(),
            })
            .collect();
        let weights = ws
            .iter()
            .enumerate()
            .map(|(i, w)| WeightJson {
                index: i,
                block: w.block,
                place: w.place.to_string(),
                delta: w.delta,
                entries: match &w.entries {
                    Entries::Padic { prime, coeffs } => coeffs
                        .iter()
                        .map(|c| format!("{} × log {}", rat_string(c), prime))
                        .collect(),
                    Entries::Arch(v) => v.iter().map(|x| interval_string(x, digits)).collect(),
                },
                class: part.class_of(i),
            })
            .collect();
        let classes = part
            .classes
            .iter()
            .enumerate()
            .map(|(i, c)| ClassJson {
                index: i,
                members: c.members.clone(),
                delta: c.delta(ws),
                certainty: match c.certainty {
                    Certainty::Exact => "exact".into(),
                    Certainty::Numeric { bits } => format!("numeric at {} bits", bits),
                },
                undecided: c.undecided,
                direction: c
                    .has_exact_direction(ws)
                    .then(|| c.direction(ws).iter().map(rat_string).collect()),
            })
            .collect();
        WeightsJson {
            flag: FlagJson {
                block_dims: flag.block_dims(),
                basis: matrix_json(&flag.basis),
            },
            blocks,
            weights,
            classes,
            zero_weights: part.zero.clone(),
        }
    }

    fn text(&self, out: &mut String) {
        let _ = writeln!(out, "flag: block dimensions {:?}", self.flag.block_dims);
        for b in &self.blocks {
            let _ = writeln!(
                out,
                "block {}: degree {}, field poly {:?}, bad primes {:?}",
                b.index, b.dim, b.field, b.primes
            );
            for (j, g) in b.multipliers.iter().enumerate() {
                let _ = writeln!(out, "  ζ_{} = {:?}", j + 1, g);
            }
        }
        let _ = writeln!(out, "weights:");
        for w in &self.weights {
            let class = w
                .class
                .map_or("zero".to_string(), |c| format!("class {}", c));
            let _ = writeln!(
                out,
                "  #{} block {} {} (δ = {}), {}: {}",
                w.index,
                w.block,
                w.place,
                w.delta,
                class,
                w.entries.join(", ")
            );
        }
        let _ = writeln!(out, "coarse classes: {}", self.classes.len());
        for c in &self.classes {
            let _ = writeln!(
                out,
                "  class {}: members {:?}, Σδ = {}, {}{}",
                c.index,
                c.members,
                c.delta,
                c.certainty,
                if c.undecided { ", undecided merge" } else { "" }
            );
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassEntropyJson {
    pub class: usize,
    pub value: LogJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntropyJson {
    pub n: Vec<i64>,
    pub units: &'static str,
    pub total: LogJson,
    pub blocks: Vec<LogJson>,
    pub classes: Vec<ClassEntropyJson>,
}

impl EntropyJson {
    pub fn new(r: &EntropyReport, cfg: &Config) -> Self {
        EntropyJson {
            n: r.n.clone(),
            units: "nats",
            total: LogJson::new(&r.total, cfg),
            blocks: r.blocks.iter().map(|b| LogJson::new(b, cfg)).collect(),
            classes: r
                .classes
                .iter()
                .map(|(c, v)| ClassEntropyJson {
                    class: *c,
                    value: LogJson::new(v, cfg),
                })
                .collect(),
        }
    }

    fn text(&self, out: &mut String) {
        let _ = writeln!(out, "h(α^{:?}) = {} nats", self.n, self.total.text());
        for (i, b) in self.blocks.iter().enumerate() {
            let _ = writeln!(out, "  block {}: {}", i, b.text());
        }
        for c in &self.classes {
            let _ = writeln!(out, "  class {}: {}", c.class, c.value.text());
        }
    }
}

pub fn entropies(sys: &WeightSystem, ns: &[Vec<i64>], cfg: &Config) -> Result<Vec<EntropyJson>> {
    ns.iter()
        .map(|n| Ok(EntropyJson::new(&haar_entropy(sys, n)?, cfg)))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationsJson {
    pub basis: Vec<Vec<i64>>,
    pub orders: Vec<u64>,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionElementJson {
    pub order: u64,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionJson {
    pub order: u64,
    pub complete: bool,
    pub commutant_dimension: usize,
    pub generators: Vec<TorsionElementJson>,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyJson {
    pub irreducible: bool,
    pub totally_irreducible: bool,
    /// Root-of-unity exponent M: the test restricts to M·ℤ^d.
    pub torsion_exponent: u64,
    pub degree_bound: usize,
    pub restriction: Vec<u64>,
    pub virtually_cyclic: Value,
    pub relations: RelationsJson,
    pub relation_rank_bound: usize,
    pub offending: Option<Vec<i64>>,
    pub has_virtually_cyclic_factor: Value,
    pub factor_witness: Option<Vec<Vec<String>>>,
    pub torsion: TorsionJson,
}

impl ClassifyJson {
    pub fn new(a: &SolenoidAction, cfg: &Config) -> Result<Self> {
        let t = total_irreducibility(a, cfg)?;
        let vc = virtually_cyclic(a, cfg)?;
        let f = has_virtually_cyclic_factor(a, cfg)?;
        let g = commutant_torsion(a, cfg)?;
        Ok(ClassifyJson {
            irreducible: t.irreducible,
            totally_irreducible: t.totally_irreducible,
            torsion_exponent: t.exponent,
            degree_bound: t.degree_bound,
            restriction: t.sublattice,
            virtually_cyclic: verdict_json(vc.verdict),
            relations: RelationsJson {
                basis: vc.relations.basis.clone(),
                orders: vc.relations.orders.clone(),
                rank: vc.relations.rank,
            },
            relation_rank_bound: vc.relation_rank_bound,
            offending: vc.offending,
            has_virtually_cyclic_factor: verdict_json(f.verdict),
            factor_witness: f.witness.as_ref().map(subspace_json),
            torsion: TorsionJson {
                order: g.order,
                complete: g.complete,
                commutant_dimension: g.dimension,
                generators: g
                    .generators
                    .iter()
                    .map(|(m, o)| TorsionElementJson {
                        order: *o,
                        matrix: matrix_json(m),
                    })
                    .collect(),
                note: g.note,
            },
        })
    }

    fn text(&self, out: &mut String) {
        let _ = writeln!(out, "irreducible: {}", self.irreducible);
        let _ = writeln!(
            out,
            "totally irreducible: {} (tested on M·ℤ^d with M = {}, degree bound {})",
            self.totally_irreducible, self.torsion_exponent, self.degree_bound
        );
        let _ = writeln!(
            out,
            "virtually cyclic: {}",
            value_text(&self.virtually_cyclic)
        );
        let _ = writeln!(
            out,
            "  relation lattice {:?} with orders {:?}; rank mod torsion {}",
            self.relations.basis, self.relations.orders, self.relations.rank
        );
        if let Some(v) = &self.offending {
            let _ = writeln!(out, "  undecided candidate relation {:?}", v);
        }
        let _ = writeln!(
            out,
            "has virtually cyclic factor: {}",
            value_text(&self.has_virtually_cyclic_factor)
        );
        if let Some(w) = &self.factor_witness {
            let _ = writeln!(out, "  witness subspace {:?}", w);
        }
        let _ = writeln!(
            out,
            "commutant torsion: order {}{}",
            self.torsion.order,
            if self.torsion.complete {
                ""
            } else {
                " (centre only)"
            }
        );
        for g in &self.torsion.generators {
            let _ = writeln!(out, "  order {}: {:?}", g.order, g.matrix);
        }
    }
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingJson {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub image: Vec<String>,
    pub identity: bool,
}

impl EmbeddingJson {
    fn new(e: &Embedding) -> Self {
        EmbeddingJson {
            source: poly_json(&e.source),
            target: poly_json(&e.target),
            image: poly_json(&e.image),
            identity: e.is_identity(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeakIsoJson {
    pub lambda: Vec<Vec<i64>>,
    pub embedding: EmbeddingJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommonFactorJson {
    pub piece1: usize,
    pub piece2: usize,
    pub dim: usize,
    pub embedding: EmbeddingJson,
    pub restriction: u64,
    pub twist_orders: Vec<u64>,
    pub lambda: Vec<Vec<i64>>,
    pub index: u64,
    pub stabilizer_complete: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareJson {
    pub disjoint: Value,
    pub weakly_isomorphic: Option<WeakIsoJson>,
    pub common_factor: Option<CommonFactorJson>,
    /// Dual subspace of ℚ^{m1+m2} carrying the joining.
    pub joining_witness: Option<Vec<Vec<String>>>,
    /// Result of re-running the exact witness checks.
    pub witness_verified: Option<bool>,
    pub restriction: u64,
    pub degree_bound: usize,
    pub notes: Vec<String>,
}

impl CompareJson {
    pub fn new(
        a: &SolenoidAction,
        b: &SolenoidAction,
        cfg: &Config,
    ) -> Result<(Self, ComparisonReport)> {
        let r = compare(a, b, cfg)?;
        let verified = match (&r.common_factor, &r.joining_witness) {
            (Some(c), Some(w)) => Some(verify_joining(&a.product(b)?, w, &c.lambda, a.m())?),
            _ => None,
        };
        let json = CompareJson {
            disjoint: verdict_json(r.disjoint),
            weakly_isomorphic: r.weakly_isomorphic.as_ref().map(|w| WeakIsoJson {
                lambda: w.lambda.clone(),
                embedding: EmbeddingJson::new(&w.embedding),
            }),
            common_factor: r.common_factor.as_ref().map(|c| CommonFactorJson {
                piece1: c.piece1,
                piece2: c.piece2,
                dim: c.dim,
                embedding: EmbeddingJson::new(&c.embedding),
                restriction: c.restriction,
                twist_orders: c.twist_orders.clone(),
                lambda: c.lambda.clone(),
                index: c.index,
                stabilizer_complete: c.stabilizer_complete,
            }),
            joining_witness: r.joining_witness.as_ref().map(subspace_json),
            witness_verified: verified,
            restriction: r.restriction,
            degree_bound: r.degree_bound,
            notes: r.notes.clone(),
        };
        Ok((json, r))
    }

    fn text(&self, out: &mut String) {
        let _ = writeln!(out, "disjoint: {}", value_text(&self.disjoint));
        match &self.weakly_isomorphic {
            Some(w) => {
                let _ = writeln!(out, "weakly isomorphic on Λ = {:?}", w.lambda);
            }
            None => {
                let _ = writeln!(out, "weakly isomorphic: no witness");
            }
        }
        if let Some(c) = &self.common_factor {
            let _ = writeln!(
                out,
                "common factor of dimension {} on Λ = {:?} (index {}{}), twist orders {:?}",
                c.dim,
                c.lambda,
                c.index,
                if c.stabilizer_complete {
                    ""
                } else {
                    ", search truncated"
                },
                c.twist_orders
            );
            let _ = writeln!(
                out,
                "  embedding θ ↦ {:?}{}",
                c.embedding.image,
                if c.embedding.identity {
                    " (identity)"
                } else {
                    ""
                }
            );
        }
        if let Some(w) = &self.joining_witness {
            let _ = writeln!(
                out,
                "joining witness {:?}: {}",
                w,
                match self.witness_verified {
                    Some(true) => "verified",
                    Some(false) => "FAILED verification",
                    None => "not checked",
                }
            );
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {}", n);
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeJson {
    pub action: Value,
    #[serde(flatten)]
    pub weights: WeightsJson,
    pub classification: ClassifyJson,
    pub entropy: Vec<EntropyJson>,
}

impl AnalyzeJson {
    pub fn new(a: &SolenoidAction, ns: &[Vec<i64>], cfg: &Config) -> Result<Self> {
        let sys = WeightSystem::new(a, cfg)?;
        Ok(AnalyzeJson {
            action: action_json(a),
            weights: WeightsJson::new(&sys, cfg),
            classification: ClassifyJson::new(a, cfg)?,
            entropy: entropies(&sys, ns, cfg)?,
        })
    }
}

/// One named verification with its outcome.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyJson {
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerifyJson {
    fn text(&self, out: &mut String) {
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{} {} ({} case{}){}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.cases,
                if c.cases == 1 { "" } else { "s" },
                detail(&c.detail)
            );
        }
        let _ = writeln!(
            out,
            "{}",
            if self.passed {
                "all checks passed"
            } else {
                "some checks failed"
            }
        );
    }
}

fn detail(s: &str) -> String {
    if s.is_empty() {
        String::new()
    } else {
        format!(": {}", s)
    }
}

/// The command-specific part of a report.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Body {
    Analyze(Box<AnalyzeJson>),
    Entropy { entropy: Vec<EntropyJson> },
    Weights(WeightsJson),
    Classify(Box<ClassifyJson>),
    Compare(Box<CompareJson>),
    Verify(VerifyJson),
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub header: Header,
    #[serde(flatten)]
    pub body: Body,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let h = &self.header;
        let mut out = format!(
            "{} {} {}: seed {}, precision {} bits (max {}), index bound {}, sample bound {}\n",
            h.tool,
            h.version,
            h.command,
            h.seed,
            h.precision_bits,
            h.max_precision_bits,
            h.index_bound,
            h.sample_bound
        );
        for i in &h.inputs {
            let _ = writeln!(out, "input: {}", i);
        }
        match &self.body {
            Body::Analyze(a) => {
                let _ = writeln!(
                    out,
                    "action: d = {}, m = {}{}",
                    a.action["d"],
                    a.action["m"],
                    a.action
                        .get("label")
                        .map_or(String::new(), |l| format!(", label {}", l))
                );
                a.weights.text(&mut out);
                a.classification.text(&mut out);
                for e in &a.entropy {
                    e.text(&mut out);
                }
            }
            Body::Entropy { entropy } => {
                for e in entropy {
                    e.text(&mut out);
                }
            }
            Body::Weights(w) => w.text(&mut out),
            Body::Classify(c) => c.text(&mut out),
            Body::Compare(c) => c.text(&mut out),
            Body::Verify(v) => v.text(&mut out),
        }
        out
    }
}

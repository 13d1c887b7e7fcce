//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{ArgAction, Parser, ValueEnum};
use solenoid_core::action::SolenoidAction;
use solenoid_core::weights::WeightSystem;
use solenoid_core::{Config, Error};

use crate::format::{parse_action, parse_vector, ParseError};
use crate::report::{
    entropies, AnalyzeJson, Body, ClassifyJson, CompareJson, Header, Report, WeightsJson,
};
use crate::verify::verify;

pub const EXIT_OK: i32 = 0;
/// A verification suite failed.
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CERTIFICATION: i32 = 3;
pub const EXIT_SEPARATION: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Flag, fields, weights, classes, verdicts and entropies.
    Analyze,
    /// Haar entropy for each requested n.
    Entropy,
    /// Lyapunov weights and coarse classes.
    Weights,
    /// Irreducibility, virtual cyclicity and symmetry verdicts.
    Classify,
    /// Disjointness and weak isomorphism of two actions.
    Compare,
    /// Product formula, additivity, homogeneity and shape-identity suites.
    Verify,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Entropy => "entropy",
            Command::Weights => "weights",
            Command::Classify => "classify",
            Command::Compare => "compare",
            Command::Verify => "verify",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "solenoid",
    version,
    about = "Structure, entropy and rigidity of commuting rational matrix actions"
)]
struct Args {
    command: Command,
    /// Input action files (JSON); compare takes two, verify optionally two.
    #[arg(required = true, num_args = 1..=2)]
    files: Vec<PathBuf>,
    /// Element n of ℤ^d as comma-separated integers; repeatable.
    #[arg(long = "n", value_parser = parse_vector, action = ArgAction::Append, allow_hyphen_values = true)]
    n: Vec<Vec<i64>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Target interval width 2^-BITS.
    #[arg(long, value_name = "BITS", default_value_t = 100)]
    precision: u32,
    /// Largest index of a sublattice searched by compare.
    #[arg(long, value_name = "B", default_value_t = 10_000)]
    index_bound: u64,
    /// Radius of the sample grid used by verify.
    #[arg(long, value_name = "R", default_value_t = 3)]
    sample_bound: i64,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

/// Everything one invocation needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub inputs: Vec<PathBuf>,
    pub ns: Vec<Vec<i64>>,
    pub config: Config,
    pub json: bool,
}

impl RunConfig {
    pub fn parse_from<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let a = Args::try_parse_from(args)?;
        let config = Config {
            seed: a.seed,
            precision_bits: a.precision,
            max_precision_bits: a.precision.max(Config::default().max_precision_bits),
            index_bound: a.index_bound,
            sample_bound: a.sample_bound,
        };
        Ok(RunConfig {
            command: a.command,
            inputs: a.files,
            ns: a.n,
            config,
            json: a.json,
        })
    }
}

/// Exit code plus the text destined for stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(code: i32, msg: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {}\n", msg),
        }
    }
}

enum Failure {
    Parse(ParseError),
    Usage(String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SeparationFailure(_) => EXIT_SEPARATION,
        Error::InvalidAction(_) | Error::InvalidArgument(_) | Error::Dimension(_) => EXIT_PARSE,
        _ => EXIT_CERTIFICATION,
    }
}

fn load(path: &PathBuf) -> Result<SolenoidAction, Failure> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| {
        Failure::Parse(ParseError {
            source: name.clone(),
            location: "file".into(),
            message: e.to_string(),
        })
    })?;
    parse_action(&text, &name).map_err(Failure::Parse)
}

fn unit_vectors(d: usize) -> Vec<Vec<i64>> {
    (0..d)
        .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn body(rc: &RunConfig, actions: &[SolenoidAction]) -> Result<Body, Failure> {
    let cfg = &rc.config;
    let a = &actions[0];
    let expected = match rc.command {
        Command::Compare => 2..=2,
        Command::Verify => 1..=2,
        _ => 1..=1,
    };
    if !expected.contains(&actions.len()) {
        return Err(Failure::Usage(format!(
            "{} takes {:?} input file(s), got {}",
            rc.command.name(),
            expected,
            actions.len()
        )));
    }
    if let Some(b) = actions.get(1) {
        if b.d() != a.d() {
            return Err(Failure::Usage(format!(
                "ranks differ: d = {} vs d = {}",
                a.d(),
                b.d()
            )));
        }
    }
    if let Some(n) = rc.ns.iter().find(|n| n.len() != a.d()) {
        return Err(Failure::Usage(format!(
            "--n {:?} has {} entries but the action has rank {}",
            n,
            n.len(),
            a.d()
        )));
    }
    let ns = if rc.ns.is_empty() {
        unit_vectors(a.d())
    } else {
        rc.ns.clone()
    };
    Ok(match rc.command {
        Command::Analyze => Body::Analyze(Box::new(AnalyzeJson::new(a, &ns, cfg)?)),
        Command::Entropy => Body::Entropy {
            entropy: entropies(&WeightSystem::new(a, cfg)?, &ns, cfg)?,
        },
        Command::Weights => Body::Weights(WeightsJson::new(&WeightSystem::new(a, cfg)?, cfg)),
        Command::Classify => Body::Classify(Box::new(ClassifyJson::new(a, cfg)?)),
        Command::Compare => Body::Compare(Box::new(CompareJson::new(a, &actions[1], cfg)?.0)),
        Command::Verify => Body::Verify(verify(a, actions.get(1), cfg)?),
    })
}

/// Runs one command; never panics on bad input.
pub fn run(rc: &RunConfig) -> Outcome {
    let actions: Result<Vec<_>, _> = rc.inputs.iter().map(load).collect();
    let result = actions.and_then(|acts| body(rc, &acts));
    let body = match result {
        Ok(b) => b,
        Err(Failure::Parse(e)) => {
            return Outcome::failure(EXIT_PARSE, format!("parse error at {}", e))
        }
        Err(Failure::Usage(m)) => return Outcome::failure(EXIT_PARSE, m),
        Err(Failure::Library(e)) => return Outcome::failure(exit_code(&e), e.to_string()),
    };
    let code = match &body {
        Body::Verify(v) if !v.passed => EXIT_VERIFY,
        Body::Compare(c) if c.witness_verified == Some(false) => EXIT_VERIFY,
        _ => EXIT_OK,
    };
    let inputs: Vec<String> = rc.inputs.iter().map(|p| p.display().to_string()).collect();
    let report = Report {
        header: Header::new(rc.command.name(), &rc.config, &inputs),
        body,
    };
    let mut stdout = if rc.json {
        report.to_json()
    } else {
        report.to_text()
    };
    if !stdout.ends_with('\n') {
        stdout.push('\n');
    }
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}

/// Entry point of the binary: parses `std::env::args` and runs.
pub fn main() -> i32 {
    match RunConfig::parse_from(std::env::args_os()) {
        Ok(rc) => {
            let out = run(&rc);
            print!("{}", out.stdout);
            eprint!("{}", out.stderr);
            out.code
        }
        Err(e) => {
            let _ = e.print();
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    EXIT_OK
                }
                _ => EXIT_PARSE,
            }
        }
    }
}

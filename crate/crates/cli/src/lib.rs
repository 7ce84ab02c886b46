//! Command-line front end: argument parsing, dispatch and reports.
//!
//! [`run`] is the whole program minus process I/O, so it can be driven
//! from tests.

pub mod report;

use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use semidomain_atoms::irreducibility::{certify_irreducible, IrreducibilityVerdict};
use semidomain_atoms::monoid::{analyze, classify_degree2, split_degree2, AlgebraicNumberSpec, PairResult};
use semidomain_atoms::oracle::{
    reduce_element, relation_polynomial, strong_check_oracle, OracleCaps, StrongVerdict,
};
use semidomain_atoms::rootcount::{isolate_positive_roots, positive_root_count, sign_variations};
use semidomain_atoms::transforms::{family_polynomial, transform_cross_check, FamilyParams};
use semidomain_atoms::{Caps, Error, IntPoly, Integer};

pub use report::Report;

pub const EXIT_DECIDED: i32 = 0;
pub const EXIT_INPUT_ERROR: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;

pub const MAX_DEG_ENV: &str = "SEMIDOMAIN_ATOMS_MAX_DEG";

#[derive(Debug, Parser)]
#[command(name = "semidomain-atoms", version, about = "Atoms and strong atoms of N₀[α]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Largest product degree tried by witness searches.
    #[arg(long, global = true, env = MAX_DEG_ENV)]
    max_witness_deg: Option<usize>,
    /// Bound on integer multiplier coefficients.
    #[arg(long, global = true)]
    max_coeff: Option<u64>,
    /// Branch-and-bound node budget.
    #[arg(long, global = true)]
    max_nodes: Option<usize>,
    /// Canonical JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Re-check every certificate before printing.
    #[arg(long, global = true)]
    verify: bool,
    /// Accept inputs whose irreducibility could not be certified.
    #[arg(long, global = true)]
    assume_irreducible: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Strong atoms and atoms of M_α.
    Analyze {
        #[arg(allow_hyphen_values = true)]
        polynomial: String,
    },
    /// The closed-form answer for a quadratic.
    Classify2 {
        #[arg(allow_hyphen_values = true)]
        polynomial: String,
    },
    /// The (4k+c, 5k+c) family member, checked by the analyzer.
    Family {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        c: usize,
    },
    /// f(β) for β^k = α, compared with a direct analysis.
    Transform {
        #[arg(allow_hyphen_values = true)]
        polynomial: String,
        #[arg(long)]
        k: usize,
    },
    /// Brute-force strong-atom check of α^k.
    Oracle {
        #[arg(allow_hyphen_values = true)]
        polynomial: String,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        n_max: u64,
        #[arg(long, default_value_t = 8)]
        max_power: usize,
        #[arg(long, default_value_t = 20)]
        max_total: u64,
    },
    /// Sign variations, positive roots and isolating intervals.
    Roots {
        #[arg(allow_hyphen_values = true)]
        polynomial: String,
    },
    /// Irreducibility certificate or a factor.
    Irreducible {
        #[arg(allow_hyphen_values = true)]
        polynomial: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::Classify2 { .. } => "classify2",
            Command::Family { .. } => "family",
            Command::Transform { .. } => "transform",
            Command::Oracle { .. } => "oracle",
            Command::Roots { .. } => "roots",
            Command::Irreducible { .. } => "irreducible",
        }
    }

    fn polynomial(&self) -> Option<&str> {
        match self {
            Command::Family { .. } => None,
            Command::Analyze { polynomial }
            | Command::Classify2 { polynomial }
            | Command::Transform { polynomial, .. }
            | Command::Oracle { polynomial, .. }
            | Command::Roots { polynomial }
            | Command::Irreducible { polynomial } => Some(polynomial),
        }
    }

    fn params(&self) -> Value {
        match *self {
            Command::Family { k, c } => json!({ "k": k, "c": c }),
            Command::Transform { k, .. } => json!({ "k": k }),
            Command::Oracle { k, n_max, max_power, max_total, .. } => {
                json!({ "k": k, "n_max": n_max, "max_power": max_power, "max_total": max_total })
            }
            _ => json!({}),
        }
    }
}

/// What a finished invocation prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(message: impl std::fmt::Display) -> Self {
        Outcome { code: EXIT_INPUT_ERROR, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types always serialize")
}

fn pair_values(pair: &PairResult) -> (Value, Vec<Value>) {
    let result = json!({ "strong": to_value(&pair.strong), "atoms": to_value(&pair.atoms) });
    (result, pair.certificates.iter().map(to_value).collect())
}

struct Body {
    result: Value,
    certificates: Vec<Value>,
    decided: bool,
    verified: bool,
}

fn parse(text: &str) -> Result<IntPoly, Error> {
    let m: IntPoly = text.parse()?;
    if m.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(m)
}

fn caps_from(cli: &Cli) -> Caps {
    let mut caps = Caps::default();
    if let Some(d) = cli.max_witness_deg {
        caps.max_witness_degree = d;
    }
    if let Some(c) = cli.max_coeff {
        caps.max_coeff = c;
    }
    if let Some(n) = cli.max_nodes {
        caps.max_nodes = n;
    }
    caps
}

fn spec_for(m: &IntPoly, cli: &Cli, caps: &Caps) -> Result<AlgebraicNumberSpec, Error> {
    AlgebraicNumberSpec::new(m, caps, cli.assume_irreducible)
}

fn run_analyze(m: &IntPoly, cli: &Cli, caps: &Caps) -> Result<Body, Error> {
    let spec = spec_for(m, cli, caps)?;
    let pair = analyze(&spec, caps)?;
    let m = &spec.minimal_polynomial;
    let (mut result, certificates) = pair_values(&pair);
    result["minimal_polynomial"] = to_value(m);
    result["irreducibility"] = to_value(&spec.irreducibility);
    result["root"] = to_value(&spec.root);
    Ok(Body {
        result,
        certificates,
        decided: pair.is_decided(),
        verified: pair.verify(m) && spec.irreducibility.recheck(m),
    })
}

fn run_classify2(m: &IntPoly) -> Result<Body, Error> {
    let (a, b, c, form) = split_degree2(m).ok_or_else(|| {
        Error::InvalidArgument(format!("{m} is not a quadratic with positive leading coefficient and no zero coefficient"))
    })?;
    let pair = classify_degree2(&a, &b, &c, form)?;
    let (mut result, certificates) = pair_values(&pair);
    result["case"] = json!(form.case());
    result["form"] = to_value(&form);
    Ok(Body { result, certificates, decided: true, verified: pair.verify(m) })
}

fn run_family(k: usize, c: usize, caps: &Caps) -> Result<Body, Error> {
    let (m, expected) = family_polynomial(FamilyParams::new(k, c)?)?;
    let analyzed = analyze(&AlgebraicNumberSpec::new(&m, caps, false)?, caps)?;
    let confirmed = analyzed.same_pair(&expected.strong, &expected.atoms);
    if analyzed.is_decided() && !confirmed {
        return Err(Error::Precondition(format!(
            "the analyzer found {analyzed} for {m}, expected {expected}"
        )));
    }
    let (expected_v, mut certificates) = pair_values(&expected);
    let (analyzed_v, more) = pair_values(&analyzed);
    certificates.extend(more);
    Ok(Body {
        result: json!({
            "polynomial": to_value(&m),
            "expected": expected_v,
            "analyzed": analyzed_v,
            "confirmed": confirmed,
        }),
        certificates,
        decided: analyzed.is_decided(),
        verified: expected.verify(&m) && analyzed.verify(&m),
    })
}

fn run_transform(m: &IntPoly, k: usize, cli: &Cli, caps: &Caps) -> Result<Body, Error> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let spec = spec_for(m, cli, caps)?;
    let check = transform_cross_check(&spec, k, caps)?;
    if !check.agrees {
        return Err(Error::Precondition(format!(
            "scaling gives {} but direct analysis of {} gives {}",
            check.scaled, check.lifted, check.direct
        )));
    }
    let (scaled, certificates) = pair_values(&check.scaled);
    let (direct, _) = pair_values(&check.direct);
    Ok(Body {
        result: json!({
            "lifted": to_value(&check.lifted),
            "scaled": scaled,
            "direct": direct,
            "agrees": check.agrees,
        }),
        certificates,
        decided: check.scaled.is_decided(),
        verified: check.scaled.verify(&check.lifted) && check.direct.verify(&check.lifted),
    })
}

fn run_oracle(m: &IntPoly, k: usize, n_max: u64, oracle_caps: OracleCaps, cli: &Cli, caps: &Caps) -> Result<Body, Error> {
    let spec = spec_for(m, cli, caps)?;
    let verdict = strong_check_oracle(k, &spec, n_max, &oracle_caps)?;
    let mut result = json!({ "verdict": to_value(&verdict) });
    let verified = match &verdict {
        StrongVerdict::StrongUpTo { .. } => true,
        StrongVerdict::NonStrong { n, factorization } => {
            let relation = relation_polynomial(k, *n, factorization);
            result["relation"] = to_value(&relation);
            let target = reduce_element(&IntPoly::monomial(Integer::from(*n), k), &spec)?;
            let lhs = reduce_element(&factorization.polynomial(), &spec)?;
            spec.minimal_polynomial.divides(&relation) && lhs.coords == target.coords
        }
    };
    Ok(Body { result, certificates: Vec::new(), decided: true, verified })
}

fn run_roots(m: &IntPoly) -> Result<Body, Error> {
    let intervals = isolate_positive_roots(m)?;
    let verified = intervals.iter().all(|iv| iv.isolates_exactly_one());
    Ok(Body {
        result: json!({
            "sign_variations": sign_variations(m)?,
            "positive_roots": positive_root_count(m, false)?,
            "positive_roots_with_multiplicity": positive_root_count(m, true)?,
            "intervals": intervals.iter().map(to_value).collect::<Vec<_>>(),
        }),
        certificates: Vec::new(),
        decided: true,
        verified,
    })
}

fn run_irreducible(m: &IntPoly, caps: &Caps) -> Result<Body, Error> {
    let (_, primitive) = m.content_primitive()?;
    let verdict = certify_irreducible(&primitive, caps)?;
    Ok(Body {
        result: json!({ "primitive": to_value(&primitive), "verdict": to_value(&verdict) }),
        certificates: Vec::new(),
        decided: !matches!(verdict, IrreducibilityVerdict::Unknown { .. }),
        verified: verdict.recheck(&primitive),
    })
}

fn dispatch(cli: &Cli, m: Option<&IntPoly>, caps: &Caps) -> Result<Body, Error> {
    let m = || m.expect("subcommand takes a polynomial");
    match cli.command {
        Command::Analyze { .. } => run_analyze(m(), cli, caps),
        Command::Classify2 { .. } => run_classify2(m()),
        Command::Family { k, c } => run_family(k, c, caps),
        Command::Transform { k, .. } => run_transform(m(), k, cli, caps),
        Command::Oracle { k, n_max, max_power, max_total, .. } => {
            let oracle_caps = OracleCaps { max_power, max_total, prune: true };
            run_oracle(m(), k, n_max, oracle_caps, cli, caps)
        }
        Command::Roots { .. } => run_roots(m()),
        Command::Irreducible { .. } => run_irreducible(m(), caps),
    }
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_DECIDED };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let start = Instant::now();
    let caps = caps_from(&cli);
    let m = match cli.command.polynomial().map(parse).transpose() {
        Ok(m) => m,
        Err(e) => return Outcome::error(e),
    };
    let input = json!({
        "subcommand": cli.command.name(),
        "polynomial": m.as_ref().map(to_value),
        "params": cli.command.params(),
        "caps": to_value(&caps),
        "assume_irreducible": cli.assume_irreducible,
        "verify": cli.verify,
    });
    let body = match dispatch(&cli, m.as_ref(), &caps) {
        Ok(body) => body,
        Err(e) => return Outcome::error(e),
    };
    if cli.verify && !body.verified {
        return Outcome::error("certificate re-check failed; no report printed");
    }
    let report = Report {
        input,
        result: body.result,
        certificates: body.certificates,
        decided: body.decided,
        verified: cli.verify.then_some(body.verified),
        timing_ms: start.elapsed().as_millis() as u64,
    };
    let stdout = if cli.json { report.to_canonical_json() } else { report.to_table() };
    Outcome { code: if report.decided { EXIT_DECIDED } else { EXIT_UNDECIDED }, stdout, stderr: String::new() }
}

/// Rebuilds an argument vector from a JSON report's input echo.
pub fn argv_from_input(input: &Value) -> Option<Vec<String>> {
    let mut argv = vec!["semidomain-atoms".to_string(), input["subcommand"].as_str()?.to_string()];
    if let Some(coeffs) = input["polynomial"].as_array() {
        let list: Vec<&str> = coeffs.iter().map(|c| c.as_str()).collect::<Option<_>>()?;
        argv.push(format!("[{}]", list.join(",")));
    }
    for (key, v) in input["params"].as_object()? {
        argv.push(format!("--{}", key.replace('_', "-")));
        argv.push(v.to_string());
    }
    let caps = &input["caps"];
    for (flag, key) in [
        ("--max-witness-deg", "max_witness_degree"),
        ("--max-coeff", "max_coeff"),
        ("--max-nodes", "max_nodes"),
    ] {
        argv.push(flag.to_string());
        argv.push(caps[key].as_u64()?.to_string());
    }
    if input["assume_irreducible"].as_bool()? {
        argv.push("--assume-irreducible".into());
    }
    if input["verify"].as_bool()? {
        argv.push("--verify".into());
    }
    argv.push("--json".into());
    Some(argv)
}

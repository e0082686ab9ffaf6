//! `glinf`: decompositions, certificates, vacuum spaces, isomorphism tests
//! and characters for integrable `gl_∞`-modules, printed as JSON.
//!
//! Exit codes: 0 success, 1 certificate failure, 2 parse or usage error,
//! 3 the two tensor computations disagree, 4 window too small.

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use glinf::algebra::{SupportSet, Window};
use glinf::lr_tensor::{decompose_tensor_pair_report, gl_dim, pair_window, stable_tensor, KostkaTable};
use glinf::realized::{FactorSpec, ModuleSpec, RealizedModule};
use glinf::singular::{certify_shift, decompose_view, singular_vectors, Decomposition, ModuleView};
use glinf::verma::{
    build_irreducible, certify_annihilation, certify_integrability, is_integrable, iso_check_in,
    relabel_onto_interval, VermaCharacter,
};
use glinf::weights::{to_partition, Partition, Weight};
use glinf::Error;

const SCHEMA: &str = "glinf/1";
const DEFAULT_MAX_WINDOW: usize = 64;

#[derive(Parser)]
#[command(name = "glinf", version, about = "Exact computations with integrable gl(infinity)-modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a realized module or a tensor product of two irreducibles.
    Decompose(DecomposeArgs),
    /// Run certificates on a realized module or on L(S, weight).
    Certify(CertifyArgs),
    /// Vacuum space of a realized module for a support set.
    Omega(OmegaArgs),
    /// Decide whether two irreducibles are isomorphic.
    Iso(IsoArgs),
    /// gl_n characters of partitions, or generalized Verma weight multiplicities.
    Character(CharacterArgs),
}

#[derive(Args)]
struct DecomposeArgs {
    /// Tensor factors such as "A(2)" "Wedge(1)".
    #[arg(long, num_args = 1.., conflicts_with_all = ["module", "left", "right"])]
    tensor: Vec<String>,
    /// Module literal, e.g. "A(1) (x) A(1) (+) Wedge(2)".
    #[arg(long, conflicts_with_all = ["left", "right"])]
    module: Option<String>,
    /// Left highest weight: a partition like [2,1] or a weight literal.
    #[arg(long, requires = "right")]
    left: Option<String>,
    #[arg(long, requires = "left")]
    right: Option<String>,
    /// Support set for --left/--right, e.g. {1,2}.
    #[arg(long, num_args = 1..)]
    support: Option<Vec<String>>,
    /// Also run the explicit singular-vector computation and compare.
    #[arg(long)]
    certify: bool,
    #[arg(long)]
    window: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Lemma {
    Nilpotency,
    Alpha,
    Integrability,
    Annihilation,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long, conflicts_with_all = ["weight", "support"])]
    module: Option<String>,
    #[arg(long, requires = "support")]
    weight: Option<String>,
    #[arg(long, num_args = 1..)]
    support: Option<Vec<String>>,
    /// Run a single certificate; by default every applicable one runs.
    #[arg(long, value_enum)]
    lemma: Option<Lemma>,
    #[arg(long)]
    window: Option<String>,
}

#[derive(Args)]
struct OmegaArgs {
    #[arg(long)]
    module: String,
    #[arg(long, num_args = 1..)]
    support: Vec<String>,
    #[arg(long)]
    window: Option<String>,
}

#[derive(Args)]
struct IsoArgs {
    #[arg(long, num_args = 1..)]
    support1: Vec<String>,
    #[arg(long)]
    weight1: String,
    #[arg(long, num_args = 1..)]
    support2: Vec<String>,
    #[arg(long)]
    weight2: String,
    #[arg(long)]
    window: Option<String>,
}

#[derive(Args)]
struct CharacterArgs {
    #[arg(long, conflicts_with = "verma")]
    partition: Option<String>,
    #[arg(long, requires = "partition")]
    rank: Option<usize>,
    /// Weight multiplicities of the generalized Verma module M(S, weight).
    #[arg(long, requires_all = ["weight", "support"])]
    verma: bool,
    #[arg(long)]
    weight: Option<String>,
    #[arg(long, num_args = 1..)]
    support: Option<Vec<String>>,
    /// A single offset in the negative cone; otherwise all offsets to --depth.
    #[arg(long)]
    delta: Option<String>,
    #[arg(long, default_value_t = 2)]
    depth: u32,
    #[arg(long)]
    window: Option<String>,
}

enum Failure {
    Usage(String),
    Lib(Error),
    /// Certificates ran and at least one failed; the report is still printed.
    Certificate(Value, Vec<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<Value, Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::OracleMismatch(_) => 3,
        Error::WindowTooSmall(_) | Error::WindowOverflow { .. } => 4,
        Error::HypothesisViolated(_) | Error::StabilizationFailure(_) | Error::CharacterMismatch(_) => 1,
        _ => 2,
    }
}

fn max_window() -> usize {
    std::env::var("GLINF_MAX_WINDOW")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_WINDOW)
}

fn capped(w: Window) -> Result<Window, Failure> {
    let cap = max_window();
    if w.len() > cap {
        return Err(Error::WindowTooSmall(format!(
            "window {w} has {} indices, above GLINF_MAX_WINDOW={cap}",
            w.len()
        ))
        .into());
    }
    Ok(w)
}

/// The smallest interval covering `supports`, with two spare indices on each side.
fn default_window(supports: &[&SupportSet]) -> Result<Window, Failure> {
    let lo = supports.iter().map(|s| s.min()).min().unwrap_or(1);
    let hi = supports.iter().map(|s| s.max()).max().unwrap_or(1);
    Ok(Window::new(lo - 2, hi + 2)?)
}

fn resolve_window(explicit: Option<&str>, fallback: Window) -> Result<Window, Failure> {
    match explicit {
        Some(lit) => capped(lit.parse()?),
        None => capped(fallback),
    }
}

/// `{1,2}`, `1,2`, or the words `1 2` left behind by shell brace expansion.
fn parse_support(values: &[String]) -> Result<SupportSet, Failure> {
    let joined = values.join(",");
    let t = joined.trim();
    if t.starts_with('{') {
        Ok(t.parse()?)
    } else {
        Ok(format!("{{{t}}}").parse()?)
    }
}

/// A partition literal placed on `s`, or a weight literal.
fn parse_highest(lit: &str, s: &SupportSet) -> Result<Weight, Failure> {
    if let Ok(p) = lit.parse::<Partition>() {
        return Ok(p.to_weight(s)?);
    }
    Ok(lit.parse()?)
}

/// Implicit support `{1..k}` for a module with at most `k` rows per summand.
fn module_support(spec: &ModuleSpec) -> Result<SupportSet, Failure> {
    let rows: u32 = spec
        .summands
        .iter()
        .map(|f| f.iter().map(FactorSpec::max_rows).sum())
        .max()
        .unwrap_or(0);
    Ok(SupportSet::interval(1, rows.max(1) as i64)?)
}

fn realize(spec: &ModuleSpec, explicit: Option<&str>) -> Result<RealizedModule, Failure> {
    let window = match (explicit, spec.window) {
        (Some(lit), _) => capped(lit.parse()?)?,
        (None, Some(w)) => capped(w)?,
        (None, None) => capped(default_window(&[&module_support(spec)?])?)?,
    };
    Ok(spec.realize(window)?)
}

fn weight_json(w: &Weight) -> Value {
    match w.as_ints() {
        Some(pairs) => json!(pairs),
        None => json!(w.to_string()),
    }
}

/// A count as a JSON number, or as a decimal string beyond `u64`.
fn count_json(n: u128) -> Value {
    u64::try_from(n).map_or_else(|_| json!(n.to_string()), |v| json!(v))
}

fn window_json(w: Window) -> Value {
    json!([w.lo, w.hi])
}

fn runs_json(runs: &[(SupportSet, BTreeMap<Partition, u64>)]) -> Value {
    Value::Array(
        runs.iter()
            .map(|(s, m)| {
                json!({
                    "support": s.indices(),
                    "summands": m.iter().map(|(p, k)| json!([p.parts(), k])).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

fn decomposition_json(d: &Decomposition) -> Value {
    serde_json::to_value(&d.records).expect("records serialize")
}

fn cmd_decompose(a: &DecomposeArgs) -> Outcome {
    if !a.tensor.is_empty() || a.module.is_some() {
        let spec: ModuleSpec = if a.tensor.is_empty() {
            a.module.as_deref().unwrap().parse()?
        } else {
            a.tensor.join(" (x) ").parse()?
        };
        let m = realize(&spec, a.window.as_deref())?;
        // the first interval tried is {1}, or the window's first inner index
        let start = if m.window().contains(0) && m.window().contains(2) {
            SupportSet::interval(1, 1)?
        } else {
            SupportSet::interval(m.window().lo + 1, m.window().lo + 1)?
        };
        let report = decompose_view(&ModuleView::full(m.clone()), Some(start))?;
        return Ok(json!({
            "schema": SCHEMA,
            "command": "decompose",
            "method": "singular-vectors",
            "module": m.to_string(),
            "window": window_json(m.window()),
            "support_used": report.sbar.indices(),
            "decomposition": decomposition_json(&report.decomposition),
            "runs": runs_json(&report.runs),
        }));
    }
    let (Some(left), Some(right)) = (a.left.as_deref(), a.right.as_deref()) else {
        return Err(Failure::Usage(
            "decompose needs --tensor, --module, or both --left and --right".into(),
        ));
    };
    let lp = left.parse::<Partition>().ok();
    let rp = right.parse::<Partition>().ok();
    let s = match &a.support {
        Some(lit) => parse_support(lit)?,
        None => {
            let (Some(l), Some(r)) = (&lp, &rp) else {
                return Err(Failure::Usage("weight literals need --support".into()));
            };
            SupportSet::interval(1, l.len().max(r.len()).max(1) as i64)?
        }
    };
    let lambda = parse_highest(left, &s)?;
    let mu = parse_highest(right, &s)?;
    let (pl, pm) = (to_partition(&lambda, &s)?, to_partition(&mu, &s)?);
    let lr = stable_tensor(&pl, &pm)?;
    let lr_decomposition = Decomposition::from_multiset(&lr.summands, &lr.support_used)?;
    let mut out = json!({
        "schema": SCHEMA,
        "command": "decompose",
        "left": pl.parts(),
        "right": pm.parts(),
        "support": s.indices(),
        "method": "littlewood-richardson",
        "support_used": lr.support_used.indices(),
        "stabilized_at": lr.stabilized_at,
        "decomposition": decomposition_json(&lr_decomposition),
    });
    if a.certify {
        let fallback = s.is_interval().then(|| pair_window(&s, &pl, &pm)).transpose()?;
        let window = match (a.window.as_deref(), fallback) {
            (Some(lit), _) => Some(capped(lit.parse()?)?),
            (None, Some(w)) => Some(capped(w)?),
            (None, None) => None,
        };
        let report = decompose_tensor_pair_report(&s, &lambda, &mu, window)?;
        out["method"] = json!("littlewood-richardson+singular-vectors");
        out["certificates"] = json!({
            "explicit_decomposition": decomposition_json(&report.decomposition),
            "window": window_json(report.window),
            "cyclic_vector": report.ambient.format_vector(&report.cyclic),
            "runs": runs_json(&report.runs),
            "agree": true,
        });
    }
    Ok(out)
}

fn certificate(name: &str, pass: bool, detail: Value) -> Value {
    json!({ "name": name, "pass": pass, "detail": detail })
}

fn cmd_certify(a: &CertifyArgs) -> Outcome {
    let mut certs = Vec::new();
    if let Some(lit) = &a.module {
        if a.lemma.is_some_and(|l| l != Lemma::Nilpotency) {
            return Err(Failure::Usage("--module supports only --lemma nilpotency".into()));
        }
        let m = realize(&lit.parse()?, a.window.as_deref())?;
        let bound = m.level() + 1;
        let mut violations = Vec::new();
        let mut worst = 0;
        let units = m.window().off_diagonal_units();
        for &e in &units {
            let k = m.nilpotency_degree(e)?;
            worst = worst.max(k);
            if k > bound {
                violations.push(json!({ "unit": e.to_string(), "degree": k }));
            }
        }
        certs.push(certificate(
            "nilpotency",
            violations.is_empty(),
            json!({
                "module": m.to_string(),
                "level": m.level(),
                "bound": bound,
                "units_checked": units.len(),
                "max_degree": worst,
                "violations": violations,
            }),
        ));
    } else {
        let (Some(wlit), Some(slit)) = (&a.weight, &a.support) else {
            return Err(Failure::Usage("certify needs --module, or --weight with --support".into()));
        };
        let s = parse_support(slit)?;
        let weight = parse_highest(wlit, &s)?;
        let wanted = |l: Lemma| a.lemma.is_none_or(|x| x == l);
        if a.lemma == Some(Lemma::Nilpotency) {
            return Err(Failure::Usage("--lemma nilpotency needs --module".into()));
        }
        let integrable = is_integrable(&weight, &s);
        if wanted(Lemma::Integrability) || !integrable {
            if !integrable {
                certs.push(certificate(
                    "integrability",
                    false,
                    json!({ "weight": weight.to_string(), "support": s.to_string(), "dominant": false }),
                ));
            } else {
                let (lambda, interval) = relabel_onto_interval(&weight, &s)?;
                let window = resolve_window(a.window.as_deref(), default_window(&[&interval])?)?;
                let c = certify_integrability(&lambda, &interval, window)?;
                certs.push(certificate(
                    "integrability",
                    true,
                    json!({
                        "dominant": true,
                        "level": c.level,
                        "exponents": c.exponents.iter().map(|(e, k)| json!([e.to_string(), k])).collect::<Vec<_>>(),
                    }),
                ));
            }
        }
        if integrable {
            let (lambda, interval) = relabel_onto_interval(&weight, &s)?;
            let window = resolve_window(a.window.as_deref(), default_window(&[&interval])?)?;
            if wanted(Lemma::Annihilation) {
                let found = certify_annihilation(&lambda, &interval, window)?;
                let pass = found.iter().all(|c| c.holds());
                let rows: Vec<Value> = found
                    .iter()
                    .map(|c| json!({ "unit": c.unit.to_string(), "listed": c.listed, "minimal": c.minimal }))
                    .collect();
                certs.push(certificate("annihilation", pass, json!(rows)));
            }
            if wanted(Lemma::Alpha) {
                let irr = build_irreducible(&lambda, &interval, window)?;
                let c = certify_shift(&irr.highest, &irr.module, interval.min(), interval.max())?;
                certs.push(certificate(
                    "alpha",
                    c.recovers && c.conclusion_holds,
                    json!({
                        "alpha": c.alpha.to_string(),
                        "vector": irr.module.format_vector(&irr.highest),
                        "shifted": irr.module.format_vector(&c.shifted),
                        "conclusion_holds": c.conclusion_holds,
                        "recovers": c.recovers,
                    }),
                ));
            }
        }
    }
    let failed: Vec<String> = certs
        .iter()
        .filter(|c| c["pass"] == json!(false))
        .map(|c| c["name"].as_str().unwrap_or_default().to_string())
        .collect();
    let out = json!({
        "schema": SCHEMA,
        "command": "certify",
        "passed": failed.is_empty(),
        "certificates": certs,
    });
    if failed.is_empty() {
        Ok(out)
    } else {
        Err(Failure::Certificate(out, failed))
    }
}

fn cmd_omega(a: &OmegaArgs) -> Outcome {
    let s = parse_support(&a.support)?;
    let spec: ModuleSpec = a.module.parse()?;
    let window = match (a.window.as_deref(), spec.window) {
        (Some(lit), _) => capped(lit.parse()?)?,
        (None, Some(w)) => capped(w)?,
        (None, None) => capped(default_window(&[&s])?)?,
    };
    let m = spec.realize(window)?;
    let basis = m.omega(&s)?;
    let mut highest = Vec::new();
    for (w, v) in singular_vectors(&m, &s)? {
        highest.push(json!({
            "weight": weight_json(&w),
            "partition": to_partition(&w, &s)?.parts(),
            "vector": m.format_vector(&v),
        }));
    }
    Ok(json!({
        "schema": SCHEMA,
        "command": "omega",
        "module": m.to_string(),
        "support": s.indices(),
        "dim": basis.len(),
        "basis": basis.iter().map(|v| m.format_vector(v)).collect::<Vec<_>>(),
        "highest_weights": highest,
    }))
}

fn cmd_iso(a: &IsoArgs) -> Outcome {
    let s1 = parse_support(&a.support1)?;
    let s2 = parse_support(&a.support2)?;
    let l1 = parse_highest(&a.weight1, &s1)?;
    let l2 = parse_highest(&a.weight2, &s2)?;
    let sbar = s1.union(&s2).hull();
    let window = resolve_window(a.window.as_deref(), default_window(&[&sbar])?)?;
    let iso = iso_check_in(&s1, &l1, &s2, &l2, window)?;
    Ok(json!({
        "schema": SCHEMA,
        "command": "iso",
        "first": { "support": s1.indices(), "weight": weight_json(&l1) },
        "second": { "support": s2.indices(), "weight": weight_json(&l2) },
        "support_used": sbar.indices(),
        "isomorphic": iso,
    }))
}

fn cmd_character(a: &CharacterArgs) -> Outcome {
    if a.verma {
        let s = parse_support(a.support.as_deref().unwrap_or_default())?;
        let lambda: Weight = a.weight.as_deref().unwrap().parse()?;
        let mut covered = vec![&s];
        let delta = a.delta.as_deref().map(str::parse::<Weight>).transpose()?;
        let delta_support = match &delta {
            Some(d) if !d.is_zero() => Some(SupportSet::new(d.support())?),
            _ => None,
        };
        if let Some(ds) = &delta_support {
            covered.push(ds);
        }
        let window = resolve_window(a.window.as_deref(), default_window(&covered)?)?;
        let ch = VermaCharacter::new(lambda.clone(), s.clone(), window)?;
        let dims: Vec<Value> = match &delta {
            Some(d) => vec![json!({ "offset": weight_json(d), "dim": count_json(ch.dim_at(d)) })],
            None => ch
                .graded_dims(a.depth)
                .iter()
                .map(|(d, n)| json!({ "offset": weight_json(d), "dim": count_json(*n) }))
                .collect(),
        };
        return Ok(json!({
            "schema": SCHEMA,
            "command": "character",
            "mode": "verma",
            "weight": weight_json(&lambda),
            "support": s.indices(),
            "window": window_json(window),
            "dims": dims,
        }));
    }
    let Some(lit) = &a.partition else {
        return Err(Failure::Usage("character needs --partition, or --verma with --weight and --support".into()));
    };
    let nu: Partition = lit.parse()?;
    let rank = a.rank.unwrap_or(nu.len().max(1));
    let dim = gl_dim(&nu, rank)?;
    let s = SupportSet::interval(1, rank as i64)?;
    let mut table = KostkaTable::new();
    let weights: Vec<Value> = table
        .character(&nu, &s)
        .iter()
        .map(|(w, k)| json!([weight_json(w), count_json(*k)]))
        .collect();
    Ok(json!({
        "schema": SCHEMA,
        "command": "character",
        "mode": "schur",
        "partition": nu.parts(),
        "rank": rank,
        "dim": count_json(dim),
        "weights": weights,
    }))
}

fn print(v: &Value) {
    // a closed pipe is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{v}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Decompose(a) => cmd_decompose(a),
        Command::Certify(a) => cmd_certify(a),
        Command::Omega(a) => cmd_omega(a),
        Command::Iso(a) => cmd_iso(a),
        Command::Character(a) => cmd_character(a),
    };
    match outcome {
        Ok(v) => {
            print(&v);
            ExitCode::SUCCESS
        }
        Err(Failure::Certificate(v, failed)) => {
            print(&v);
            for name in failed {
                eprintln!("certificate failed: {name}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

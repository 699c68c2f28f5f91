//! Command implementations behind the `popmatch` binary.
//!
//! Exit codes: 0 popular (or agreement), 1 not popular (or nothing found),
//! 2 when the methods disagree or a fuzz audit fails, 3 on bad input.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use popmatch_core::characterize::{
    find_popular_ha, find_popular_hat, gale_shapley_smi, improve_matching_smi,
    optimization_check, structural_check,
};
use popmatch_core::generate::{random_instance, GenParams};
use popmatch_core::oracle::{is_popular_bruteforce, Oracle, DEFAULT_GUARD_EDGES};
use popmatch_core::{Certificate, Instance, Matching, Method, Variant, Verdict};
use serde_json::{json, Value};

use crate::format::{format_matching, parse_instance, parse_matching, serialize_instance};
use crate::fuzz::{run_fuzz, FuzzConfig};
use crate::report::{certificate_json, dual_json, improvement_json, verdict_json, RunReport};

pub const EXIT_POPULAR: i32 = 0;
pub const EXIT_NOT_POPULAR: i32 = 1;
pub const EXIT_DISAGREE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "popmatch", version, about = "Popular matchings in HA, HAT and SMI instances")]
pub struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest edge count the brute-force oracle will enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_GUARD_EDGES)]
    pub guard_edges: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a matching is popular.
    Verify(VerifyArgs),
    /// Print a dual certificate, or a witness and a better matching.
    Certify(MatchingArgs),
    /// Compute a popular matching.
    Find(InstanceArg),
    /// Print a random instance.
    Gen(GenArgs),
    /// Audit a batch of random instances.
    Fuzz(FuzzArgs),
    /// Run every method on every candidate matching of an instance.
    CrossCheck(InstanceArg),
}

#[derive(Debug, Args)]
pub struct InstanceArg {
    pub instance: PathBuf,
}

#[derive(Debug, Args)]
pub struct MatchingArgs {
    pub instance: PathBuf,
    /// Matching file, or inline pairs such as "a1 h1; a2 h2".
    #[arg(long)]
    pub matching: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub target: MatchingArgs,
    /// Repeatable; defaults to all.
    #[arg(long = "method", value_enum)]
    pub methods: Vec<MethodArg>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Structural,
    Optimization,
    Bruteforce,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Ha,
    Hat,
    Smi,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Ha => Variant::Ha,
            VariantArg::Hat => Variant::Hat,
            VariantArg::Smi => Variant::Smi,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub variant: VariantArg,
    #[arg(long)]
    pub left: usize,
    #[arg(long)]
    pub right: usize,
    #[arg(long, default_value_t = 0.6)]
    pub density: f64,
    #[arg(long, default_value_t = 0.0)]
    pub tie_prob: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct FuzzArgs {
    #[arg(long, value_enum)]
    pub variant: VariantArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub count: u64,
    #[arg(long, default_value_t = 4)]
    pub max_left: usize,
    #[arg(long, default_value_t = 4)]
    pub max_right: usize,
    /// Defaults to 0.3 for HAT and 0 otherwise.
    #[arg(long)]
    pub tie_prob: Option<f64>,
    /// Where the shrunk first failure is written.
    #[arg(long, default_value = "popmatch-repro")]
    pub repro_dir: PathBuf,
}

/// A failure to report on stderr with exit code 3.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<i32, InputError>;

/// Runs one command, writing the report to `out` and diagnostics to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let started = Instant::now();
    let result = match &cli.command {
        Command::Verify(a) => verify(cli, a, started, out),
        Command::Certify(a) => certify(cli, a, out),
        Command::Find(a) => find(cli, &a.instance, started, out),
        Command::Gen(a) => gen(a, out),
        Command::Fuzz(a) => fuzz(cli, a, out),
        Command::CrossCheck(a) => cross_check(cli, &a.instance, started, out),
    };
    match result {
        Ok(code) => code,
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn load_instance(path: &Path) -> Result<Instance, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let inst = parse_instance(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok(inst.normalized())
}

fn load_matching(inst: &Instance, spec: &str) -> Result<Matching, InputError> {
    let path = Path::new(spec);
    let text = if path.is_file() {
        std::fs::read_to_string(path)?
    } else {
        spec.to_string()
    };
    Ok(parse_matching(inst, &text)?)
}

fn selected_methods(args: &[MethodArg]) -> Vec<Method> {
    if args.is_empty() || args.contains(&MethodArg::All) {
        return Method::ALL.to_vec();
    }
    Method::ALL
        .into_iter()
        .filter(|m| {
            args.contains(&match m {
                Method::Structural => MethodArg::Structural,
                Method::Optimization => MethodArg::Optimization,
                Method::BruteForce => MethodArg::Bruteforce,
            })
        })
        .collect()
}

fn run_method(inst: &Instance, m: &Matching, method: Method, guard: usize) -> Result<Verdict, InputError> {
    Ok(match method {
        Method::Structural => structural_check(inst, m)?,
        Method::Optimization => optimization_check(inst, m)?,
        Method::BruteForce => is_popular_bruteforce(inst, m, guard)?,
    })
}

fn agreement(verdicts: &[Verdict]) -> i32 {
    if verdicts.iter().all(|v| v.popular) {
        EXIT_POPULAR
    } else if verdicts.iter().all(|v| !v.popular) {
        EXIT_NOT_POPULAR
    } else {
        EXIT_DISAGREE
    }
}

fn elapsed_ms(started: Instant) -> u64 {
    u64::try_from(started.elapsed().as_millis()).unwrap_or(u64::MAX)
}

fn describe(code: i32) -> &'static str {
    match code {
        EXIT_POPULAR => "popular",
        EXIT_NOT_POPULAR => "not popular",
        _ => "METHODS DISAGREE",
    }
}

fn emit_verdicts(
    cli: &Cli,
    report: &mut RunReport,
    inst: &Instance,
    verdicts: &[Verdict],
    started: Instant,
    out: &mut dyn Write,
) -> std::io::Result<i32> {
    let code = agreement(verdicts);
    report.verdicts = verdicts.iter().map(|v| verdict_json(inst, v)).collect();
    report.certificates = verdicts
        .iter()
        .filter_map(|v| match &v.certificate {
            Certificate::Dual(d) => {
                let mut c = dual_json(inst, d);
                c["method"] = json!(v.method.as_str());
                Some(c)
            }
            _ => None,
        })
        .collect();
    report.timing_ms = elapsed_ms(started);
    if cli.json {
        writeln!(out, "{}", report.to_json())?;
    } else {
        if let Some(m) = &report.matching {
            writeln!(out, "matching: {m}")?;
        }
        for v in verdicts {
            let word = if v.popular { "popular" } else { "not popular" };
            let cert = certificate_json(inst, &v.certificate);
            writeln!(out, "{:<13} {word:<12} {}", v.method.as_str(), cert)?;
        }
        writeln!(out, "result: {}", describe(code))?;
    }
    Ok(code)
}

fn verify(cli: &Cli, a: &VerifyArgs, started: Instant, out: &mut dyn Write) -> Outcome {
    let inst = load_instance(&a.target.instance)?;
    let m = load_matching(&inst, &a.target.matching)?;
    let verdicts = selected_methods(&a.methods)
        .into_iter()
        .map(|method| run_method(&inst, &m, method, cli.guard_edges))
        .collect::<Result<Vec<_>, _>>()?;
    let mut report = RunReport::new("verify", &inst);
    report.matching = Some(format_matching(&inst, &m));
    Ok(emit_verdicts(cli, &mut report, &inst, &verdicts, started, out)?)
}

/// Always prints JSON.
fn certify(cli: &Cli, a: &MatchingArgs, out: &mut dyn Write) -> Outcome {
    let inst = load_instance(&a.instance)?;
    let m = load_matching(&inst, &a.matching)?;
    let s = structural_check(&inst, &m)?;
    let o = optimization_check(&inst, &m)?;
    if s.popular != o.popular {
        writeln!(out, "{}", json!({
            "popular": Value::Null,
            "error": "structural and optimization verdicts disagree",
            "verdicts": [verdict_json(&inst, &s), verdict_json(&inst, &o)],
        }))?;
        return Ok(EXIT_DISAGREE);
    }
    let mut body = json!({
        "popular": s.popular,
        "matching": format_matching(&inst, &m),
    });
    let code = match &s.certificate {
        Certificate::Dual(d) => {
            body["certificate"] = dual_json(&inst, d);
            EXIT_POPULAR
        }
        Certificate::Witness(w) => {
            body["certificate"] = certificate_json(&inst, &s.certificate);
            if inst.variant() == Variant::Smi {
                let imp = improve_matching_smi(&inst, &m, w)?;
                body["improvement"] = improvement_json(&inst, &imp);
            } else {
                body["rival"] = certificate_json(&inst, &o.certificate);
            }
            EXIT_NOT_POPULAR
        }
        _ => unreachable!("structural verdicts carry a dual or a witness"),
    };
    let text = if cli.json {
        serde_json::to_string_pretty(&body)?
    } else {
        body.to_string()
    };
    writeln!(out, "{text}")?;
    Ok(code)
}

fn find(cli: &Cli, path: &Path, started: Instant, out: &mut dyn Write) -> Outcome {
    let inst = load_instance(path)?;
    let found = match inst.variant() {
        Variant::Ha => find_popular_ha(&inst)?,
        Variant::Hat => find_popular_hat(&inst)?,
        Variant::Smi => Some(gale_shapley_smi(&inst)?),
    };
    let mut report = RunReport::new("find", &inst);
    let Some(m) = found else {
        report.timing_ms = elapsed_ms(started);
        if cli.json {
            writeln!(out, "{}", report.to_json())?;
        } else {
            writeln!(out, "no popular matching")?;
        }
        return Ok(EXIT_NOT_POPULAR);
    };
    let mut methods = vec![Method::Structural, Method::Optimization];
    if inst.edge_count() <= cli.guard_edges {
        methods.push(Method::BruteForce);
    }
    let verdicts = methods
        .into_iter()
        .map(|method| run_method(&inst, &m, method, cli.guard_edges))
        .collect::<Result<Vec<_>, _>>()?;
    report.matching = Some(format_matching(&inst, &m));
    let code = emit_verdicts(cli, &mut report, &inst, &verdicts, started, out)?;
    // A finder result that fails its own verification is a bug.
    Ok(if code == EXIT_POPULAR { code } else { EXIT_DISAGREE })
}

fn gen(a: &GenArgs, out: &mut dyn Write) -> Outcome {
    let params = GenParams {
        variant: a.variant.into(),
        n_left: a.left,
        n_right: a.right,
        edge_density: a.density,
        tie_prob: a.tie_prob,
    };
    let inst = random_instance(a.seed, &params)?;
    write!(out, "{}", serialize_instance(&inst))?;
    Ok(EXIT_POPULAR)
}

fn fuzz(cli: &Cli, a: &FuzzArgs, out: &mut dyn Write) -> Outcome {
    let variant: Variant = a.variant.into();
    let config = FuzzConfig {
        seed: a.seed,
        count: a.count,
        variant,
        max_left: a.max_left,
        max_right: a.max_right,
        tie_prob: a
            .tie_prob
            .unwrap_or(if variant == Variant::Hat { 0.3 } else { 0.0 }),
        guard: cli.guard_edges,
    };
    let outcome = run_fuzz(&config)?;
    if cli.json {
        writeln!(out, "{}", outcome.summary_json())?;
    } else {
        write!(out, "{}", outcome.summary_text())?;
    }
    if let Some(repro) = &outcome.repro {
        std::fs::create_dir_all(&a.repro_dir)?;
        let path = a
            .repro_dir
            .join(format!("{}-seed{}-index{}.txt", variant, a.seed, repro.index));
        std::fs::write(&path, repro.to_text())?;
        if !cli.json {
            writeln!(out, "repro written to {}", path.display())?;
        }
    }
    Ok(if outcome.is_clean() {
        EXIT_POPULAR
    } else {
        EXIT_DISAGREE
    })
}

fn cross_check(cli: &Cli, path: &Path, started: Instant, out: &mut dyn Write) -> Outcome {
    let inst = load_instance(path)?;
    let oracle = Oracle::new(&inst, cli.guard_edges)?;
    let mut any_popular = false;
    let mut disagreement = false;
    let mut entries = Vec::new();
    for m in oracle.rivals() {
        let verdicts = vec![
            structural_check(&inst, m)?,
            optimization_check(&inst, m)?,
            oracle.verdict(m)?,
        ];
        let code = agreement(&verdicts);
        any_popular |= code == EXIT_POPULAR;
        disagreement |= code == EXIT_DISAGREE;
        let matching = format_matching(&inst, m);
        if cli.json {
            entries.push(json!({
                "matching": matching,
                "verdicts": verdicts.iter().map(|v| verdict_json(&inst, v)).collect::<Vec<_>>(),
            }));
        } else {
            writeln!(out, "{:<12} {matching}", describe(code))?;
        }
    }
    let code = if disagreement {
        EXIT_DISAGREE
    } else if any_popular {
        EXIT_POPULAR
    } else {
        EXIT_NOT_POPULAR
    };
    if cli.json {
        let mut report = RunReport::new("cross-check", &inst);
        report.verdicts = entries;
        report.timing_ms = elapsed_ms(started);
        writeln!(out, "{}", report.to_json())?;
    } else {
        writeln!(
            out,
            "{} candidates; {}",
            oracle.rivals().len(),
            match code {
                EXIT_POPULAR => "some matching is popular",
                EXIT_NOT_POPULAR => "no matching is popular",
                _ => "METHODS DISAGREE",
            }
        )?;
    }
    Ok(code)
}

//! Command-line front end.

pub mod fixtures;
pub mod selftest;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::alexander::{alexander_via, equal_up_to_unit, gamma_seed, lowest_form, read_gamma_image, Via};
use crate::braid::BraidWord;
use crate::cluster::{cluster_pattern, parse_steps, ClassicalSeed};
use crate::error::{Error, Result};
use crate::invariant::{build_xc, diagram_from_braid, perturbed_report, universal_invariant};
use crate::qcluster::{derive_perturbed_r, QSeed};
use crate::quiver::{d_quiver, disk_quiver, e_quiver, z_quiver, Seed};
use crate::scalar::LaurentT;
use selftest::{run_suites, Status, Suite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    /// Δ in the symmetric variable S
    T,
    /// Δ(T²), written in T
    #[value(name = "t2")]
    TSquared,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ViaArg {
    Cluster,
    Burau,
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug, Args)]
pub struct Config {
    /// Truncation order d in ε (0..=3)
    #[arg(long = "order", short = 'd', global = true, default_value_t = 2, env = "CLUSTERKNOTS_ORDER",
          value_parser = clap::value_parser!(u8).range(0..=3))]
    pub order: u8,
    /// How Alexander polynomials are printed
    #[arg(long, global = true, value_enum, default_value_t = Convention::T)]
    pub convention: Convention,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Worker threads for selftest (default: available cores)
    #[arg(long, short = 'j', global = true)]
    pub jobs: Option<usize>,
}

impl Config {
    pub fn jobs(&self) -> usize {
        self.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }
}

#[derive(Clone, Debug, Args)]
pub struct BraidArg {
    /// Braid word as signed generator indices, e.g. "1 -2 1 -2"
    #[arg(long, short = 'b', allow_hyphen_values = true)]
    pub braid: String,
    /// Strand count (default: one more than the largest generator)
    #[arg(long, short = 'n')]
    pub strands: Option<usize>,
}

impl BraidArg {
    fn word(&self) -> Result<BraidWord> {
        BraidWord::parse(&self.braid, self.strands)
    }
}

#[derive(Debug, Parser)]
#[command(name = "clusterknots", version, about = "Exact cluster-algebra knot computations")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Alexander polynomial of a braid closure
    Alex {
        #[command(flatten)]
        braid: BraidArg,
        /// Compute through one route only (default: both, and require agreement)
        #[arg(long, value_enum)]
        via: Option<ViaArg>,
    },
    /// Perturbed universal invariant of a braid closure, to order d
    Inv {
        #[command(flatten)]
        braid: BraidArg,
    },
    /// Cluster pattern of a braid starting from the Γ-seed
    Pattern {
        #[command(flatten)]
        braid: BraidArg,
    },
    /// Apply a mutation/swap composite to a seed
    Mutate {
        /// disk:N, d, e, z, or a JSON file with vertices, frozen and eps2
        #[arg(long, short = 'q')]
        quiver: String,
        /// Composite written right to left, e.g. "s35 s25 s36 m4 m2 m6 m4"
        #[arg(long, short = 's')]
        steps: String,
        /// Quantum mutation on the quantum torus
        #[arg(long)]
        quantum: bool,
    },
    /// Derive the perturbed R-matrix through the cluster realisation
    DeriveR,
    /// Run golden-value and property checks
    Selftest {
        /// Restrict to these suites (repeatable)
        #[arg(long, value_parser = parse_suite)]
        suite: Vec<Suite>,
    },
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 2,
        Error::InvalidBraid(_) | Error::NotAKnot(_) => 3,
        _ => 1,
    }
}

fn print_alexander(p: &LaurentT, conv: Convention) -> Result<String> {
    Ok(match conv {
        Convention::T => lowest_form(p).fmt_var("S"),
        Convention::TSquared => lowest_form(&p.subs_pow(2)?).fmt_var("T"),
    })
}

fn load_quiver(arg: &str) -> Result<Seed> {
    if let Some(n) = arg.strip_prefix("disk:") {
        return disk_quiver(n.parse().map_err(|_| Error::Parse(format!("bad strand count {n:?}")))?);
    }
    match arg {
        "d" => Ok(d_quiver()),
        "e" => Ok(e_quiver()),
        "z" => Ok(z_quiver()),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            Seed::from_json(&v)
        }
    }
}

fn emit(out: &mut dyn Write, cfg: &Config, plain: impl FnOnce() -> String, json: impl FnOnce() -> Value) {
    let text = match cfg.format {
        Format::Plain => plain(),
        Format::Json => serde_json::to_string_pretty(&json()).expect("serialisable"),
    };
    // a closed stdout is not worth a panic
    let _ = writeln!(out, "{text}");
}

fn alex(out: &mut dyn Write, cfg: &Config, braid: &BraidArg, via: Option<ViaArg>) -> Result<i32> {
    let w = braid.word()?;
    let p = match via {
        Some(ViaArg::Cluster) => alexander_via(&w, Via::Cluster)?,
        Some(ViaArg::Burau) => alexander_via(&w, Via::Burau)?,
        None => {
            let (c, b) = (alexander_via(&w, Via::Cluster)?, alexander_via(&w, Via::Burau)?);
            if !equal_up_to_unit(&c, &b) {
                let _ = writeln!(out, "cluster and Burau routes disagree: {c} vs {b}");
                return Ok(1);
            }
            c
        }
    };
    let s = print_alexander(&p, cfg.convention)?;
    emit(out, cfg, || s.clone(), || json!({ "braid": w.to_string(), "alexander": s, "convention": format!("{:?}", cfg.convention) }));
    Ok(0)
}

fn inv(out: &mut dyn Write, cfg: &Config, braid: &BraidArg) -> Result<i32> {
    let w = braid.word()?;
    let diag = diagram_from_braid(&w)?;
    let xc = build_xc(cfg.order as usize)?;
    let z = universal_invariant(&diag, &xc)?;
    let delta = alexander_via(&w, Via::Burau)?;
    let report = perturbed_report(&z, Some(&delta));
    emit(
        out,
        cfg,
        || {
            let mut s = String::new();
            for k in 0..=z.order() {
                s += &format!("ω[{k}] = {}\n", z.omega.coeff(k));
            }
            s += &format!("Λ = {}\n", z.lambda.get(0, 0));
            s += &format!("P = {}\n", z.pert);
            s += &format!("ω₀·Δ: {} ({})", report["alexander_check"].as_str().unwrap_or("?"), report["alexander_convention"].as_str().unwrap_or("?"));
            s
        },
        || report.clone(),
    );
    Ok(0)
}

fn pattern(out: &mut dyn Write, cfg: &Config, braid: &BraidArg) -> Result<i32> {
    let w = braid.word()?;
    let pat = cluster_pattern(&w, &gamma_seed(w.strands())?)?;
    let m = read_gamma_image(pat.last().xvars(), w.strands())?;
    let stages: Vec<Vec<String>> = pat.stages.iter().map(|s| s.xvars().iter().map(|x| x.to_string()).collect()).collect();
    emit(
        out,
        cfg,
        || {
            let mut s = String::new();
            for (k, st) in stages.iter().enumerate() {
                s += &format!("x[{}]:\n", k + 1);
                for (i, x) in st.iter().enumerate() {
                    s += &format!("  {}: {x}\n", i + 1);
                }
            }
            s += &format!("matrix: {m}");
            s
        },
        || json!({ "braid": w.to_string(), "stages": stages, "matrix": m.to_string() }),
    );
    Ok(0)
}

fn mutate(out: &mut dyn Write, cfg: &Config, quiver: &str, steps: &str, quantum: bool) -> Result<i32> {
    let q = load_quiver(quiver)?;
    let steps = parse_steps(steps)?;
    let (res_q, vars): (Seed, Vec<String>) = if quantum {
        let s = QSeed::initial(q).apply_steps(&steps)?;
        (s.quiver().clone(), s.vars().iter().map(|x| x.to_string()).collect())
    } else {
        let s = ClassicalSeed::generic(q, false).apply_steps(&steps)?;
        (s.quiver().clone(), s.xvars().iter().map(|x| x.to_string()).collect())
    };
    emit(
        out,
        cfg,
        || {
            let mut s = String::new();
            for (i, v) in vars.iter().enumerate() {
                s += &format!("X{} ↦ {v}\n", i + 1);
            }
            s += &format!("quiver: {}", res_q.to_json());
            s
        },
        || json!({ "images": vars, "quiver": res_q.to_json() }),
    );
    Ok(0)
}

fn derive_r(out: &mut dyn Write, cfg: &Config) -> Result<i32> {
    let d = (cfg.order as usize).max(1);
    let pr = derive_perturbed_r(d)?;
    emit(
        out,
        cfg,
        || {
            format!(
                "order: {d}\nR0: {}\nf: {}\nR0⁻¹(R x1 R⁻¹)R0 = {}\nR0⁻¹(R x2 R⁻¹)R0 = {}",
                pr.lambda, pr.f, pr.conjugates[0], pr.conjugates[1]
            )
        },
        || {
            json!({
                "order": d,
                "r0": pr.lambda.to_string(),
                "f": pr.f.to_string(),
                "conjugates": [pr.conjugates[0].to_string(), pr.conjugates[1].to_string()],
            })
        },
    );
    Ok(0)
}

fn selftest_cmd(out: &mut dyn Write, cfg: &Config, suites: &[Suite]) -> Result<i32> {
    let suites = if suites.is_empty() { Suite::ALL.to_vec() } else { suites.to_vec() };
    let checks = run_suites(&suites, cfg.order as usize, cfg.jobs());
    let failed = checks.iter().filter(|c| c.status == Status::Fail || c.over_budget()).count();
    let deviations = checks.iter().filter(|c| c.status == Status::Deviation).count();
    emit(
        out,
        cfg,
        || {
            let mut s: String = checks.iter().map(|c| format!("{c}\n")).collect();
            s += &format!("{} checks, {failed} failed, {deviations} deviations", checks.len());
            s
        },
        || {
            json!({
                "checks": checks.iter().map(|c| json!({
                    "suite": c.suite.name(),
                    "criterion": c.criterion,
                    "name": c.name,
                    "status": c.status.to_string(),
                    "seconds": c.elapsed.as_secs_f64(),
                    "detail": c.detail,
                })).collect::<Vec<_>>(),
                "failed": failed,
                "deviations": deviations,
            })
        },
    );
    Ok(if failed == 0 { 0 } else { 1 })
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Errors go to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    let cfg = &cli.config;
    let res = match &cli.command {
        Command::Alex { braid, via } => alex(out, cfg, braid, *via),
        Command::Inv { braid } => inv(out, cfg, braid),
        Command::Pattern { braid } => pattern(out, cfg, braid),
        Command::Mutate { quiver, steps, quantum } => mutate(out, cfg, quiver, steps, *quantum),
        Command::DeriveR => derive_r(out, cfg),
        Command::Selftest { suite } => selftest_cmd(out, cfg, suite),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

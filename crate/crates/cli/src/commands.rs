//! Command-line interface.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyadjoint_core::finite_type::{expand_adjoint_finite_type, finite_rank_rep};
use polyadjoint_core::norms::{check_delta_norm, sup_norm, BallNorm, NormConfig, NormReport};
use polyadjoint_core::{delta_materialize, PolyMap, Rational, SizeCap};
use serde_json::{json, Value};

use crate::error::{exit, CliError, Result};
use crate::format::{expansion_to_json, materialized_to_json, parse_poly_map, sha256_hex, FieldScalar};
use crate::suite::{run_suite, Field, Section, Status, SuiteConfig};

#[derive(Debug, Parser)]
#[command(name = "polyadjoint", version, about = "Generalized adjoints of homogeneous polynomial maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the verification suite and emit a JSON report.
    Verify(VerifyArgs),
    /// Materialize Delta^n_k P as a polynomial map on coefficient space.
    Adjoint(AdjointArgs),
    /// Estimate a sup norm, or check the adjoint norm identity.
    Norm(NormArgs),
    /// Finite-type expansion of Delta^n_k P.
    Decompose(AdjointArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, env = "POLYADJOINT_SEED", default_value_t = SuiteConfig::default().seed)]
    pub seed: u64,
    #[arg(long, env = "POLYADJOINT_TOL", default_value_t = 1e-6)]
    pub tol: f64,
    /// Comma-separated ambient dimensions.
    #[arg(long, env = "POLYADJOINT_DIMS", value_delimiter = ',', default_values_t = [1usize, 2, 3])]
    pub dims: Vec<usize>,
    #[arg(long, env = "POLYADJOINT_MAX_M", default_value_t = 4)]
    pub max_m: u32,
    #[arg(long, env = "POLYADJOINT_MAX_N", default_value_t = 6)]
    pub max_n: u32,
    #[arg(long, env = "POLYADJOINT_MAX_K", default_value_t = 6)]
    pub max_k: u32,
    #[arg(long, env = "POLYADJOINT_MAX_R", default_value_t = 2)]
    pub max_r: u32,
    #[arg(long, env = "POLYADJOINT_MAX_S", default_value_t = 2)]
    pub max_s: u32,
    #[arg(long, env = "POLYADJOINT_TRIALS", default_value_t = 20)]
    pub trials: usize,
    #[arg(long, env = "POLYADJOINT_FIELD", value_enum, default_value_t = Field::Rational)]
    pub field: Field,
    #[arg(long, env = "POLYADJOINT_RESTARTS", default_value_t = 64)]
    pub restarts: usize,
    #[arg(long, env = "POLYADJOINT_SAMPLES", default_value_t = 1 << 14)]
    pub samples: usize,
    #[arg(long, env = "POLYADJOINT_CAP", default_value_t = SizeCap::DEFAULT)]
    pub cap: usize,
    /// Record wall-clock times (makes the report non-reproducible).
    #[arg(long)]
    pub timing: bool,
    #[arg(long, env = "POLYADJOINT_OUT")]
    pub out: Option<PathBuf>,
}

impl VerifyArgs {
    pub fn config(&self) -> SuiteConfig {
        SuiteConfig {
            seed: self.seed,
            dims: self.dims.clone(),
            max_m: self.max_m,
            max_n: self.max_n,
            max_k: self.max_k,
            max_r: self.max_r,
            max_s: self.max_s,
            trials: self.trials,
            tol: self.tol,
            field: self.field,
            restarts: self.restarts,
            samples: self.samples,
            cap: self.cap,
            timing: self.timing,
        }
    }
}

#[derive(Debug, Args)]
pub struct AdjointArgs {
    /// JSON file holding the map P.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, env = "POLYADJOINT_FIELD", value_enum, default_value_t = Field::Rational)]
    pub field: Field,
    #[arg(long, env = "POLYADJOINT_CAP", default_value_t = SizeCap::DEFAULT)]
    pub cap: usize,
    #[arg(long, env = "POLYADJOINT_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Claim {
    Sup,
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Ball {
    L1,
    L2,
    Linf,
}

impl From<Ball> for BallNorm {
    fn from(b: Ball) -> Self {
        match b {
            Ball::L1 => BallNorm::L1,
            Ball::L2 => BallNorm::L2,
            Ball::Linf => BallNorm::LInf,
        }
    }
}

#[derive(Debug, Args)]
pub struct NormArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Claim::Sup)]
    pub claim: Claim,
    #[arg(long, value_enum, default_value_t = Ball::L2)]
    pub ball: Ball,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, env = "POLYADJOINT_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = "POLYADJOINT_TOL", default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, env = "POLYADJOINT_RESTARTS", default_value_t = 64)]
    pub restarts: usize,
    #[arg(long, env = "POLYADJOINT_SAMPLES", default_value_t = 1 << 14)]
    pub samples: usize,
    /// Random normalized q tried in the upper-bound phase of the delta claim.
    #[arg(long, default_value_t = 100)]
    pub upper_samples: usize,
    #[arg(long, env = "POLYADJOINT_OUT")]
    pub out: Option<PathBuf>,
}

fn read_input(path: &Path) -> Result<(String, String)> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    let sha = sha256_hex(&bytes);
    let text = String::from_utf8(bytes).map_err(|e| CliError::Parse(e.to_string()))?;
    Ok((text, sha))
}

fn emit(out: Option<&Path>, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn section_line(s: &Section) -> String {
    let tag = match s.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::ToleranceBound => "TOLERANCE-BOUND",
    };
    let mut line = format!(
        "{tag:<15} {:<30} cells={} instances={} failures={} max_defect={}",
        s.claim, s.cells, s.instances, s.failures, s.max_defect
    );
    if let Some(e) = &s.first_error {
        line.push_str(&format!(" error=\"{e}\""));
    }
    line
}

pub fn verify(args: &VerifyArgs) -> Result<u8> {
    let report = run_suite(&args.config())?;
    for s in &report.sections {
        eprintln!("{}", section_line(s));
    }
    emit(args.out.as_deref(), &serde_json::to_value(&report)?)?;
    Ok(report.exit_code())
}

fn adjoint_for<S: FieldScalar>(args: &AdjointArgs, text: &str, sha: &str) -> Result<Value> {
    let p: PolyMap<S> = parse_poly_map(text)?;
    let md = delta_materialize(&p, args.n, args.k, SizeCap::new(args.cap))?;
    materialized_to_json(&md, sha)
}

pub fn adjoint(args: &AdjointArgs) -> Result<u8> {
    let (text, sha) = read_input(&args.input)?;
    let value = match args.field {
        Field::Rational => adjoint_for::<Rational>(args, &text, &sha)?,
        Field::F64 => adjoint_for::<f64>(args, &text, &sha)?,
    };
    emit(args.out.as_deref(), &value)?;
    Ok(exit::PASS)
}

fn decompose_for<S: FieldScalar>(args: &AdjointArgs, text: &str, sha: &str) -> Result<Value> {
    let p: PolyMap<S> = parse_poly_map(text)?;
    let exp = expand_adjoint_finite_type(&finite_rank_rep(&p), args.n, args.k, SizeCap::new(args.cap))?;
    let mut value = expansion_to_json(&exp);
    value["provenance"] = json!({
        "tool": concat!("polyadjoint ", env!("CARGO_PKG_VERSION")),
        "input_sha256": sha,
        "field": S::BACKEND.name(),
    });
    Ok(value)
}

pub fn decompose(args: &AdjointArgs) -> Result<u8> {
    let (text, sha) = read_input(&args.input)?;
    let value = match args.field {
        Field::Rational => decompose_for::<Rational>(args, &text, &sha)?,
        Field::F64 => decompose_for::<f64>(args, &text, &sha)?,
    };
    emit(args.out.as_deref(), &value)?;
    Ok(exit::PASS)
}

fn report_json(r: &NormReport, status: Status) -> Value {
    json!({
        "claim": r.claim,
        "lhs": r.lhs,
        "rhs": r.rhs,
        "rel_err": r.rel_err,
        "tol": r.tol,
        "certified_lower": r.certified_lower,
        "samples": r.samples,
        "seed": r.seed,
        "upper_ratio": r.upper_ratio,
        "wall_ms": Value::Null,
        "status": status,
    })
}

pub fn norm(args: &NormArgs) -> Result<u8> {
    let (text, sha) = read_input(&args.input)?;
    let p: PolyMap<f64> = parse_poly_map(&text)?;
    let cfg = NormConfig {
        ball: args.ball.into(),
        restarts: args.restarts,
        samples: args.samples,
        tol: args.tol,
        seed: args.seed,
        ..NormConfig::default()
    };
    cfg.validate()?;
    match args.claim {
        Claim::Sup => {
            let est = sup_norm(&p, &cfg)?;
            emit(
                args.out.as_deref(),
                &json!({
                    "claim": "sup_norm",
                    "ball": cfg.ball.name(),
                    "value": est.value,
                    "maximizer": est.maximizer,
                    "certified_lower": est.lower_bound_certified,
                    "upper_bound": est.upper_bound,
                    "heuristic": est.heuristic,
                    "samples": est.samples,
                    "seed": cfg.seed,
                    "input_sha256": sha,
                }),
            )?;
            Ok(exit::PASS)
        }
        Claim::Delta => {
            let r = check_delta_norm(&p, args.n, args.k, &cfg, args.upper_samples)?;
            let status = match (r.passed, args.tol == 0.0) {
                (true, _) => Status::Pass,
                (false, true) => Status::ToleranceBound,
                (false, false) => Status::Fail,
            };
            emit(args.out.as_deref(), &report_json(&r, status))?;
            Ok(if r.passed { exit::PASS } else { exit::CLAIM_FAILED })
        }
    }
}

pub fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Verify(a) => verify(a),
        Command::Adjoint(a) => adjoint(a),
        Command::Norm(a) => norm(a),
        Command::Decompose(a) => decompose(a),
    }
}

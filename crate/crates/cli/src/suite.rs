//! The verification suite behind `polyadjoint verify`: exact identity checks on the
//! selected field backend, then numeric norm checks in `f64`.

use std::time::Instant;

use polyadjoint_core::adjoint::{
    additivity_defect_value, check_diagram, composition_sides, delta_of_inverse_check,
    find_nonadditivity_witness, injectivity_witness, DiagramParams, Witness, DEFAULT_SEARCH_BUDGET,
};
use polyadjoint_core::comp_ops::{check_ideal_factorizations, check_two_sided_norm, check_u_phi_norm};
use polyadjoint_core::finite_type::{expand_adjoint_finite_type, finite_rank_rep, reconstruct_and_compare};
use polyadjoint_core::multi_index::binomial;
use polyadjoint_core::norms::{
    check_delta_norm, check_norming_power, check_j_norm, check_metric_injection, BallNorm, NormConfig, NormReport,
};
use polyadjoint_core::sampling::{
    random_hom_poly, random_invertible, random_low_rank_map, random_poly_map, random_vector, rng_for, stream_id,
    InstanceRng,
};
use polyadjoint_core::symform::additivity_defect;
use polyadjoint_core::tensor::{check_linearization_lemma, delta1k_matrix, TensorConvention};
use polyadjoint_core::{delta_materialize, j_embedding, Error as CoreError, Matrix, PolyMap, Rational, SizeCap};
use rand::Rng;
use serde::Serialize;
use serde_json::Value;

use crate::error::{exit, CliError, Result};
use crate::format::FieldScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Rational,
    F64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub dims: Vec<usize>,
    pub max_m: u32,
    pub max_n: u32,
    pub max_k: u32,
    pub max_r: u32,
    pub max_s: u32,
    /// Instances per grid cell.
    pub trials: usize,
    /// Relative tolerance of the numeric suites, and absolute tolerance of the exact
    /// suites on the `f64` backend.
    pub tol: f64,
    pub field: Field,
    pub restarts: usize,
    pub samples: usize,
    pub cap: usize,
    #[serde(skip)]
    pub timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 20240607,
            dims: vec![1, 2, 3],
            max_m: 4,
            max_n: 6,
            max_k: 6,
            max_r: 2,
            max_s: 2,
            trials: 20,
            tol: 1e-6,
            field: Field::Rational,
            restarts: 64,
            samples: 1 << 14,
            cap: SizeCap::DEFAULT,
            timing: false,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.dims.is_empty() || self.dims.iter().any(|&d| d == 0 || d > 3) {
            return bad(format!("dims must be a non-empty list of values in 1..=3, got {:?}", self.dims));
        }
        for (name, v) in [
            ("max-m", self.max_m),
            ("max-n", self.max_n),
            ("max-k", self.max_k),
            ("max-r", self.max_r),
            ("max-s", self.max_s),
        ] {
            if v == 0 {
                return bad(format!("{name} must be at least 1"));
            }
        }
        if self.max_m > 4 || self.max_n > 6 || self.max_k > 6 || self.max_r > 2 || self.max_s > 2 {
            return bad("degree caps exceed the supported grid (m <= 4, n, k <= 6, r, s <= 2)".into());
        }
        if self.trials == 0 || self.restarts == 0 {
            return bad("trials and restarts must be at least 1".into());
        }
        if self.tol.is_nan() || self.tol < 0.0 {
            return bad(format!("tolerance must be non-negative, got {}", self.tol));
        }
        Ok(())
    }

    fn dims_upto(&self, max: usize) -> Vec<usize> {
        self.dims.iter().copied().filter(|&d| d <= max).collect()
    }

    fn norm_config(&self, seed: u64) -> NormConfig {
        NormConfig { restarts: self.restarts, samples: self.samples, tol: self.tol, seed, ..NormConfig::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A numeric claim failed only because the tolerance is zero.
    ToleranceBound,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteKind {
    Exact,
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub claim: String,
    pub lhs: f64,
    pub rhs: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub certified_lower: bool,
    pub samples: usize,
    pub seed: u64,
    pub wall_ms: Option<u64>,
}

impl From<&NormReport> for Record {
    fn from(r: &NormReport) -> Self {
        Record {
            claim: r.claim.clone(),
            lhs: r.lhs,
            rhs: r.rhs,
            rel_err: r.rel_err,
            tol: r.tol,
            certified_lower: r.certified_lower,
            samples: r.samples,
            seed: r.seed,
            wall_ms: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Section {
    pub claim: String,
    pub suite: SuiteKind,
    pub grid: String,
    pub cells: usize,
    pub instances: usize,
    pub failures: usize,
    pub max_defect: Value,
    pub tol: f64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst: Option<Record>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_error: Option<String>,
    pub wall_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub tolerance_bound: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: String,
    pub config: SuiteConfig,
    pub sections: Vec<Section>,
    pub summary: Summary,
    pub passed: bool,
}

impl Report {
    pub fn exit_code(&self) -> u8 {
        if self.passed {
            exit::PASS
        } else {
            exit::CLAIM_FAILED
        }
    }

    pub fn section(&self, claim: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.claim == claim)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }
}

/// Worst absolute defect over the instances of an exact section.
struct Exact<S> {
    worst: S,
    cells: usize,
    instances: usize,
    failures: usize,
    first_error: Option<String>,
}

impl<S: FieldScalar> Exact<S> {
    fn new() -> Self {
        Exact { worst: S::zero(), cells: 0, instances: 0, failures: 0, first_error: None }
    }

    fn observe(&mut self, d: S) {
        self.instances += 1;
        let d = d.abs();
        if d.to_f64() > self.worst.to_f64() || (self.worst.is_zero() && !d.is_zero()) {
            self.worst = d;
        }
    }

    fn fail(&mut self, why: String) {
        self.instances += 1;
        self.failures += 1;
        self.first_error.get_or_insert(why);
    }

    /// Records a checker outcome; capacity errors abort the run.
    fn record(&mut self, r: std::result::Result<S, CoreError>) -> Result<()> {
        match r {
            Ok(d) => self.observe(d),
            Err(e @ CoreError::CapacityExceeded { .. }) => return Err(e.into()),
            Err(e) => self.fail(e.to_string()),
        }
        Ok(())
    }

    fn finish(self, claim: &str, grid: String, tol: f64, started: Instant, timing: bool) -> Section {
        let exact_ok = if S::is_exact() { self.worst.is_zero() } else { self.worst.to_f64() <= tol };
        let status = match (self.failures, exact_ok) {
            (0, true) => Status::Pass,
            (0, false) if tol == 0.0 => Status::ToleranceBound,
            _ => Status::Fail,
        };
        Section {
            claim: claim.into(),
            suite: SuiteKind::Exact,
            grid,
            cells: self.cells,
            instances: self.instances,
            failures: self.failures,
            max_defect: self.worst.to_json(),
            tol: if S::is_exact() { 0.0 } else { tol },
            status,
            worst: None,
            first_error: self.first_error,
            wall_ms: timing.then(|| started.elapsed().as_millis() as u64),
        }
    }
}

struct Numeric {
    reports: Vec<NormReport>,
    cells: usize,
    failures: usize,
    first_error: Option<String>,
}

impl Numeric {
    fn new() -> Self {
        Numeric { reports: Vec::new(), cells: 0, failures: 0, first_error: None }
    }

    fn record(&mut self, r: std::result::Result<NormReport, CoreError>) -> Result<()> {
        match r {
            Ok(rep) => {
                if !rep.passed {
                    self.failures += 1;
                }
                self.reports.push(rep);
            }
            Err(e @ CoreError::CapacityExceeded { .. }) => return Err(e.into()),
            Err(e) => {
                self.failures += 1;
                self.first_error.get_or_insert(e.to_string());
            }
        }
        Ok(())
    }

    fn finish(self, claim: &str, grid: String, tol: f64, started: Instant, timing: bool) -> Section {
        // failing reports first, then the largest relative error
        let worst = self
            .reports
            .iter()
            .max_by(|a, b| (!a.passed).cmp(&!b.passed).then(a.rel_err.total_cmp(&b.rel_err)));
        let max_err = self.reports.iter().map(|r| r.rel_err).fold(0.0, f64::max);
        let errored = self.first_error.is_some();
        let status = match self.failures {
            0 => Status::Pass,
            _ if tol == 0.0 && !errored => Status::ToleranceBound,
            _ => Status::Fail,
        };
        Section {
            claim: claim.into(),
            suite: SuiteKind::Numeric,
            grid,
            cells: self.cells,
            instances: self.reports.len() + usize::from(errored),
            failures: self.failures,
            max_defect: serde_json::json!(max_err),
            tol,
            status,
            worst: worst.map(Record::from),
            first_error: self.first_error,
            wall_ms: timing.then(|| started.elapsed().as_millis() as u64),
        }
    }
}

/// `|d| / max(1, |scale|)`: absolute for small values, relative for large ones.
fn relative<S: FieldScalar>(d: S, scale: &S) -> S {
    let scale = scale.abs();
    if scale.to_f64() > 1.0 { d.abs() / scale } else { d.abs() }
}

fn pick<R: Rng>(rng: &mut R, from: &[usize]) -> usize {
    from[rng.random_range(0..from.len())]
}

fn instance_rng(cfg: &SuiteConfig, tag: u64, cell: &[u64], trial: usize) -> InstanceRng {
    let mut parts = vec![tag];
    parts.extend_from_slice(cell);
    parts.push(trial as u64);
    rng_for(cfg.seed, stream_id(&parts))
}

fn matrix_defect<S: FieldScalar>(m: &Matrix<S>) -> S {
    let mut worst = S::zero();
    for v in m.entries() {
        let v = v.abs();
        if v.to_f64() > worst.to_f64() || (worst.is_zero() && !v.is_zero()) {
            worst = v;
        }
    }
    worst
}

fn map_defect<S: FieldScalar>(a: &PolyMap<S>, b: &PolyMap<S>) -> std::result::Result<S, CoreError> {
    Ok(matrix_defect(&a.sub(b)?.coefficient_matrix()))
}

/// `rank(Delta^1_k P) <= C(l + k - 1, k)` with `l` the rank of `P`, checked on every
/// map the exact suites generate.
/// Ranks are computed over the rationals on either backend.
struct RankTally {
    acc: Exact<Rational>,
    cap: SizeCap,
}

impl RankTally {
    fn observe<S: FieldScalar>(&mut self, p: &PolyMap<S>, k: u32) -> Result<()> {
        let p: PolyMap<Rational> = p.map_coeffs(FieldScalar::to_rational);
        let l = p.coefficient_matrix().rank() as u64;
        let r = match delta1k_matrix(&p, k, self.cap) {
            Ok(m) => m.matrix.rank() as u64,
            Err(e @ CoreError::CapacityExceeded { .. }) => return Err(e.into()),
            Err(e) => {
                self.acc.fail(e.to_string());
                return Ok(());
            }
        };
        let bound = if l == 0 { 0 } else { binomial(l + u64::from(k) - 1, u64::from(k)).unwrap_or(u128::MAX) };
        if u128::from(r) <= bound {
            self.acc.observe(<Rational as polyadjoint_core::Scalar>::from_i64(0));
        } else {
            self.acc.fail(format!("rank {r} exceeds bound {bound} (l = {l}, k = {k})"));
        }
        Ok(())
    }
}

const TAG_COMPOSITION: u64 = 1;
const TAG_DIAGRAM: u64 = 2;
const TAG_WR: u64 = 3;
const TAG_HOMOGENEITY: u64 = 4;
const TAG_ADDITIVITY: u64 = 5;
const TAG_LEMMA: u64 = 6;
const TAG_FINITE: u64 = 7;
const TAG_FACTOR: u64 = 8;
const TAG_INVERSE: u64 = 9;
const TAG_INJECTIVITY: u64 = 10;
const TAG_NORMING: u64 = 11;
const TAG_DELTA_NORM: u64 = 12;
const TAG_J_NORM: u64 = 13;
const TAG_INJECTION: u64 = 14;
const TAG_TWO_SIDED: u64 = 15;
const TAG_U_PHI: u64 = 16;

pub const FACTORIZATION_CLAIMS: [&str; 6] = [
    "factorization_evaluation",
    "factorization_adjoint_power",
    "factorization_linear_variant",
    "factorization_rank_one",
    "factorization_outer",
    "factorization_unit",
];

pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let mut sections = match cfg.field {
        Field::Rational => exact_sections::<Rational>(cfg)?,
        Field::F64 => exact_sections::<f64>(cfg)?,
    };
    sections.extend(numeric_sections(cfg)?);
    let summary = Summary {
        pass: sections.iter().filter(|s| s.status == Status::Pass).count(),
        fail: sections.iter().filter(|s| s.status == Status::Fail).count(),
        tolerance_bound: sections.iter().filter(|s| s.status == Status::ToleranceBound).count(),
    };
    let passed = summary.pass == sections.len();
    Ok(Report {
        schema: 1,
        tool: concat!("polyadjoint ", env!("CARGO_PKG_VERSION")).into(),
        config: cfg.clone(),
        sections,
        summary,
        passed,
    })
}

pub fn exact_sections<S: FieldScalar>(cfg: &SuiteConfig) -> Result<Vec<Section>> {
    let cap = SizeCap::new(cfg.cap);
    let tol = cfg.tol;
    let timing = cfg.timing;
    let mut out = Vec::new();
    let mut rank = RankTally { acc: Exact::new(), cap };
    let rank_started = Instant::now();

    // composition identity
    rank.acc.cells += 1;
    let started = Instant::now();
    let mut acc = Exact::<S>::new();
    for m in 1..=cfg.max_m.min(2) {
        for r in 1..=cfg.max_r.min(2) {
            for n in 1..=cfg.max_n.min(2) {
                for k in 1..=cfg.max_k.min(2) {
                    for s in 1..=cfg.max_s.min(2) {
                        if m * n * k * r * s > 8 {
                            continue;
                        }
                        acc.cells += 1;
                        let cell = [m, r, n, k, s].map(u64::from);
                        for t in 0..cfg.trials {
                            let mut rng = instance_rng(cfg, TAG_COMPOSITION, &cell, t);
                            let (d, e, f) = (pick(&mut rng, &cfg.dims), pick(&mut rng, &cfg.dims), pick(&mut rng, &cfg.dims));
                            let p: PolyMap<S> = random_poly_map(&mut rng, d, e, m);
                            let q_map: PolyMap<S> = random_poly_map(&mut rng, e, f, r);
                            let q = random_hom_poly(&mut rng, f, k);
                            let x: Vec<S> = random_vector(&mut rng, d);
                            let defect = composition_sides(&p, &q_map, n, k, s, &q).and_then(|(lhs, rhs)| {
                                let (l, r) = (lhs.eval(&x)?, rhs.eval(&x)?);
                                Ok(relative(l - r.clone(), &r))
                            });
                            acc.record(defect)?;
                            if t == 0 {
                                rank.observe(&p, k)?;
                            }
                        }
                    }
                }
            }
        }
    }
    out.push(acc.finish("composition_identity", "m, r <= 2; n, k, s <= 2; mnk*rs <= 8".into(), tol, started, timing));

    // commutative diagram
    let started = Instant::now();
    let mut acc = Exact::<S>::new();
    for m in 1..=cfg.max_m.min(2) {
        for n in 1..=cfg.max_n.min(2) {
            for k in 1..=cfg.max_k.min(2) {
                for r in 1..=cfg.max_r.min(2) {
                    for s in 1..=cfg.max_s.min(2) {
                        if m * n * r * s * k > 8 {
                            continue;
                        }
                        acc.cells += 1;
                        let cell = [m, n, k, r, s].map(u64::from);
                        for t in 0..cfg.trials {
                            let mut rng = instance_rng(cfg, TAG_DIAGRAM, &cell, t);
                            let (d, e) = (pick(&mut rng, &cfg.dims), pick(&mut rng, &cfg.dims));
                            let p: PolyMap<S> = random_poly_map(&mut rng, d, e, m);
                            let q = random_hom_poly(&mut rng, e, k);
                            let x: Vec<S> = random_vector(&mut rng, d);
                            let params = DiagramParams { m, n, k, r, s };
                            let defect = check_diagram(&p, params, &x, &q, cap).and_then(|d| {
                                let rhs = j_embedding(&p.eval_map(&x)?, n * r * s, k, cap)?.eval(q.coeffs())?;
                                Ok(relative(d, &rhs))
                            });
                            acc.record(defect)?;
                        }
                    }
                }
            }
        }
    }
    out.push(acc.finish("diagram_identity", "m <= 2; n, k, r, s <= 2; mnrsk <= 8".into(), tol, started, timing));

    // additivity defect W_R
    let started = Instant::now();
    let mut acc = Exact::<S>::new();
    for m in 1..=cfg.max_m.min(4) {
        for &d in &cfg.dims {
            acc.cells += 1;
            for t in 0..cfg.trials {
                let mut rng = instance_rng(cfg, TAG_WR, &[u64::from(m), d as u64], t);
                let e = pick(&mut rng, &cfg.dims);
                let r: PolyMap<S> = random_poly_map(&mut rng, d, e, m);
                let w = match additivity_defect(&r) {
                    Ok(w) => w,
                    Err(err) => {
                        acc.fail(err.to_string());
                        continue;
                    }
                };
                if !r.is_zero() && w.is_zero() != (m == 1) {
                    acc.fail(format!("W_R vanishing does not match m = {m}"));
                    continue;
                }
                let x: Vec<S> = random_vector(&mut rng, d);
                let y: Vec<S> = random_vector(&mut rng, d);
                let defect = (|| {
                    let xy: Vec<S> = x.iter().zip(&y).map(|(a, b)| a.clone() + b.clone()).collect();
                    let joined: Vec<S> = x.iter().chain(&y).cloned().collect();
                    let (lhs, rx, ry, wv) = (r.eval_map(&xy)?, r.eval_map(&x)?, r.eval_map(&y)?, w.eval_map(&joined)?);
                    let mut worst = S::zero();
                    for i in 0..lhs.len() {
                        let diff = (lhs[i].clone() - rx[i].clone() - ry[i].clone() - wv[i].clone()).abs();
                        if diff.to_f64() > worst.to_f64() || (worst.is_zero() && !diff.is_zero()) {
                            worst = diff;
                        }
                    }
                    Ok(worst)
                })();
                acc.record(defect)?;
            }
        }
    }
    out.push(acc.finish("additivity_defect_identity", "m <= 4; d in dims; W_R = 0 iff m = 1".into(), tol, started, timing));

    // homogeneity of the adjoint
    rank.acc.cells += 1;
    let started = Instant::now();
    let mut acc = Exact::<S>::new();
    let lambdas = [S::from_i64(-2), S::from_i64(-1), S::from_ratio(1, 2), S::from_i64(3)];
    for m in 1..=cfg.max_m.min(2) {
        for n in 1..=cfg.max_n.min(2) {
            for k in 1..=cfg.max_k.min(2) {
                acc.cells += 1;
                for t in 0..cfg.trials {
                    let mut rng = instance_rng(cfg, TAG_HOMOGENEITY, &[m, n, k].map(u64::from), t);
                    let (d, e) = (pick(&mut rng, &cfg.dims), pick(&mut rng, &cfg.dims));
                    let p: PolyMap<S> = random_poly_map(&mut rng, d, e, m);
                    let base = delta_materialize(&p, n, k, cap)?;
                    for lambda in &lambdas {
                        let scaled = delta_materialize(&p.scale(lambda), n, k, cap)?;
                        acc.record(map_defect(&scaled.map, &base.map.scale(&lambda.powu(k * n))))?;
                    }
                    if t == 0 {
                        rank.observe(&p, k)?;
                    }
                }
            }
        }
    }
    out.push(acc.finish("adjoint_homogeneity", "m, n, k <= 2; lambda in {-2, -1, 1/2, 3}".into(), tol, started, timing));

    // non-additivity
    let started = Instant::now();
    let mut acc = Exact::<S>::new();
    for k in 1..=cfg.max_k {
        for n in 1..=cfg.max_n {
            if k * n > 6 || (k, n) == (1, 1) {
                continue;
            }
            for m in 1..=cfg.max_m.min(2) {
                acc.cells += 1;
                match find_nonadditivity_witness::<S>(2, 2, m, n, k) {
                    Ok(Some(w)) => {
                        let again = additivity_defect_value(&w.p, &w.q_map, n, k, &w.q, &w.x);
                        match again {
                            Ok(v) if v == w.defect && !v.is_zero() => acc.observe(S::zero()),
                            Ok(_) => acc.fail(format!("witness for k = {k}, n = {n} does not reproduce")),
                            Err(e) => acc.fail(e.to_string()),
                        }
                    }
                    Ok(None) => acc.fail(format!("no witness found for k = {k}, n = {n}, m = {m}")),
                    Err(e) => acc.fail(e.to_string()),
                }
            }
        }
    }
    if cfg.max_k >= 1 && cfg.max_n >= 1 {
        acc.cells += 1;
        for t in 0..100 {
            let mut rng = instance_rng(cfg, TAG_ADDITIVITY, &[1, 1], t);
            let (d, e) = (pick(&mut rng, &cfg.dims), pick(&mut rng, &cfg.dims));
            let m = rng.random_range(1..=cfg.max_m.min(2));
            let p: PolyMap<S> = random_poly_map(&mut rng, d, e, m);
            let q_map: PolyMap<S> = random_poly_map(&mut rng, d, e, m);
            let q = random_hom_poly(&mut rng, e, 1);
            let x: Vec<S> = random_vector(&mut rng, d);
            acc.record(additivity_defect_value(&p, &q_map, 1, 1, &q, &x))?;
        }
    }
    out.push(acc.finish(
        "non_additivity",
        "witness for every (k, n) != (1, 1) with kn <= 6; zero defect on 100 instances at k = n = 1".into(),
        tol,
        started,
        timing,
    ));

    // linearization lemma
    rank.acc.cells += 1;
    let started = Instant::now();
    let mut acc = Exact::<S>::new();
    for &d in &cfg.dims {
        for &e in &cfg.dims {
            for m in 1..=cfg.max_m.min(2) {
                for k in 1..=cfg.max_k.min(2) {
                    acc.cells += 1;
                    let cell = [d as u64, e as u64, u64::from(m), u64::from(k)];
                    for t in 0..cfg.trials {
                        let mut rng = instance_rng(cfg, TAG_LEMMA, &cell, t);
                        let p: PolyMap<S> = if t % 2 == 0 {
                            random_poly_map(&mut rng, d, e, m)
                        } else {
                            let l = rng.random_range(0..=e);
                            random_low_rank_map(&mut rng, d, e, m, l)
                        };
                        let conv = if t % 4 < 2 { TensorConvention::Monomial } else { TensorConvention::Symmetrized };
                        acc.record(check_linearization_lemma(&p, k, conv, cap).map(|mtx| matrix_defect(&mtx)))?;
                        rank.observe(&p, k)?;
                    }
                }
            }
        }
    }
    out.push(acc.finish("linearization_lemma", "d, e in dims; m, k <= 2; both tensor conventions".into(), tol, started, timing));

    // finite-type expansion
    rank.acc.cells += 1;
    let started = Instant::now();
    let mut acc = Exact::<S>::new();
    for l in 0..=3usize {
        for k in 1..=cfg.max_k.min(3) {
            for n in 1..=cfg.max_n.min(2) {
                acc.cells += 1;
                for t in 0..cfg.trials {
                    let mut rng = instance_rng(cfg, TAG_FINITE, &[l as u64, u64::from(k), u64::from(n)], t);
                    let d = pick(&mut rng, &cfg.dims);
                    let e = l.max(pick(&mut rng, &cfg.dims));
                    let m = rng.random_range(1..=cfg.max_m.min(2));
                    let p: PolyMap<S> = random_low_rank_map(&mut rng, d, e, m, l);
                    let rep = finite_rank_rep(&p);
                    let defect = expand_adjoint_finite_type(&rep, n, k, cap)
                        .and_then(|exp| reconstruct_and_compare(&exp, &p, 2, stream_id(&[cfg.seed, t as u64])));
                    acc.record(defect)?;
                    rank.observe(&p, k)?;
                }
            }
        }
    }
    out.push(acc.finish("finite_type_expansion", "l <= 3; k <= 3; n <= 2".into(), tol, started, timing));

    // factorizations through S_RB
    let started = Instant::now();
    let mut accs: [Exact<S>; 6] = std::array::from_fn(|_| Exact::new());
    let small = cfg.dims_upto(2);
    for &d1 in &small {
        for &d2 in &small {
            for m in 1..=cfg.max_m.min(2) {
                for r in 1..=cfg.max_r.min(2) {
                    for s in 1..=cfg.max_s.min(2) {
                        let seed = stream_id(&[cfg.seed, TAG_FACTOR]);
                        for a in accs.iter_mut() {
                            a.cells += 1;
                        }
                        match check_ideal_factorizations::<S>((d1, d2), (m, r, s), seed, cfg.trials) {
                            Ok(defects) => {
                                for (a, d) in accs.iter_mut().zip(defects) {
                                    a.observe(d);
                                    a.instances += cfg.trials - 1;
                                }
                            }
                            Err(e @ CoreError::CapacityExceeded { .. }) => return Err(e.into()),
                            Err(e) => {
                                for a in accs.iter_mut() {
                                    a.fail(e.to_string());
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    for (a, claim) in accs.into_iter().zip(FACTORIZATION_CLAIMS) {
        out.push(a.finish(claim, "m, r, s <= 2; dims <= 2".into(), tol, started, timing));
    }

    // inverse identity
    rank.acc.cells += 1;
    let started = Instant::now();
    let mut acc = Exact::<S>::new();
    for &d in &cfg.dims {
        for k in 1..=cfg.max_k.min(3) {
            acc.cells += 1;
            for t in 0..cfg.trials {
                let mut rng = instance_rng(cfg, TAG_INVERSE, &[d as u64, u64::from(k)], t);
                let u = PolyMap::from_matrix(&random_invertible::<S, _>(&mut rng, d))?;
                acc.record(delta_of_inverse_check(&u, k, cap).map(|(a, b)| {
                    let (da, db) = (matrix_defect(&a), matrix_defect(&b));
                    if db.to_f64() > da.to_f64() || (da.is_zero() && !db.is_zero()) { db } else { da }
                }))?;
                if t == 0 {
                    rank.observe(&u, k)?;
                }
            }
        }
    }
    out.push(acc.finish("inverse_identity", "d in dims; k <= 3".into(), tol, started, timing));

    // injectivity witnesses
    let started = Instant::now();
    let mut acc = Exact::<S>::new();
    let kn: Vec<(u32, u32)> =
        [(1, 1), (1, 3), (3, 1)].into_iter().filter(|&(k, n)| k <= cfg.max_k && n <= cfg.max_n).collect();
    acc.cells = kn.len();
    for t in 0..100 {
        let (k, n) = kn[t % kn.len()];
        let mut rng = instance_rng(cfg, TAG_INJECTIVITY, &[u64::from(k), u64::from(n)], t);
        let (d, e) = (pick(&mut rng, &cfg.dims), pick(&mut rng, &cfg.dims));
        let m = rng.random_range(1..=cfg.max_m.min(2));
        let p1: PolyMap<S> = random_poly_map(&mut rng, d, e, m);
        let mut p2: PolyMap<S> = random_poly_map(&mut rng, d, e, m);
        while p2 == p1 {
            p2 = random_poly_map(&mut rng, d, e, m);
        }
        match injectivity_witness(&p1, &p2, n, k, DEFAULT_SEARCH_BUDGET) {
            Ok(Witness::Separated { q, x, values }) => {
                let check = (|| -> std::result::Result<bool, CoreError> {
                    let a = polyadjoint_core::delta_apply(&p1, n, k, &q)?.eval(&x)?;
                    let b = polyadjoint_core::delta_apply(&p2, n, k, &q)?.eval(&x)?;
                    Ok(a == values.0 && b == values.1 && a != b)
                })();
                match check {
                    Ok(true) => acc.observe(S::zero()),
                    Ok(false) => acc.fail("witness does not separate the adjoints".into()),
                    Err(e) => acc.fail(e.to_string()),
                }
            }
            Ok(Witness::Equal) => acc.fail("distinct maps reported equal".into()),
            Err(e) => acc.fail(e.to_string()),
        }
    }
    out.push(acc.finish("injectivity_witness", "100 pairs; kn in {1, 3}".into(), tol, started, timing));

    out.push(rank.acc.finish(
        "rank_bound",
        "rank(Delta^1_k P) <= C(l + k - 1, k) on the exact-suite instances".into(),
        tol,
        rank_started,
        timing,
    ));
    Ok(out)
}

fn random_nonzero_vector(rng: &mut InstanceRng, d: usize) -> Vec<f64> {
    loop {
        let x: Vec<f64> = random_vector(rng, d);
        if x.iter().any(|v| *v != 0.0) {
            return x;
        }
    }
}

/// Orthonormal rows spanning a random `rows`-dimensional subspace of `R^cols`.
fn random_coisometry(rng: &mut InstanceRng, rows: usize, cols: usize) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    while out.len() < rows {
        let mut v: Vec<f64> = random_vector(rng, cols);
        for _ in 0..2 {
            for u in &out {
                let dot: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(u).for_each(|(a, b)| *a -= dot * b);
            }
        }
        let norm = BallNorm::L2.norm(&v);
        if norm > 1e-3 {
            out.push(v.into_iter().map(|a| a / norm).collect());
        }
    }
    out
}

pub fn numeric_sections(cfg: &SuiteConfig) -> Result<Vec<Section>> {
    let tol = cfg.tol;
    let timing = cfg.timing;
    let mut out = Vec::new();
    let ncfg = |tag: u64, i: usize| cfg.norm_config(stream_id(&[cfg.seed, tag, i as u64]));

    let started = Instant::now();
    let mut acc = Numeric::new();
    acc.cells = cfg.max_m.min(3) as usize;
    for i in 0..50 {
        let mut rng = instance_rng(cfg, TAG_NORMING, &[], i);
        let d = pick(&mut rng, &cfg.dims);
        let m = 1 + (i as u32 % cfg.max_m.min(3));
        let x = random_nonzero_vector(&mut rng, d);
        acc.record(check_norming_power(&x, m, &ncfg(TAG_NORMING, i)))?;
    }
    out.push(acc.finish("norming_power", "50 random x; m <= 3; l2 ball".into(), tol, started, timing));

    let started = Instant::now();
    let mut acc = Numeric::new();
    let nk: Vec<(u32, u32)> =
        [(1, 1), (1, 2), (2, 1)].into_iter().filter(|&(n, k)| n <= cfg.max_n && k <= cfg.max_k).collect();
    for m in 1..=cfg.max_m.min(2) {
        for &(n, k) in &nk {
            acc.cells += 1;
            for t in 0..3 {
                let mut rng = instance_rng(cfg, TAG_DELTA_NORM, &[m, n, k].map(u64::from), t);
                let p: PolyMap<f64> = random_poly_map(&mut rng, 2, 2, m);
                let i = 3 * acc.cells + t;
                acc.record(check_delta_norm(&p, n, k, &ncfg(TAG_DELTA_NORM, i), 100))?;
            }
        }
    }
    out.push(acc.finish(
        "delta_norm",
        "d = e = 2; m <= 2; (n, k) in {(1, 1), (1, 2), (2, 1)}; 3 maps per cell, 100 sampled q each".into(),
        tol,
        started,
        timing,
    ));

    let started = Instant::now();
    let mut acc = Numeric::new();
    for m in 1..=cfg.max_m.min(2) {
        for n in 1..=cfg.max_n.min(2) {
            acc.cells += 1;
            for i in 0..20 {
                let mut rng = instance_rng(cfg, TAG_J_NORM, &[u64::from(m), u64::from(n)], i);
                let d = pick(&mut rng, &cfg.dims);
                let x = random_nonzero_vector(&mut rng, d);
                acc.record(check_j_norm(&x, m, n, &ncfg(TAG_J_NORM, i), 5))?;
            }
        }
    }
    out.push(acc.finish("j_norm", "m, n <= 2; 20 random x per cell".into(), tol, started, timing));

    let started = Instant::now();
    let mut acc = Numeric::new();
    for k in 1..=cfg.max_k.min(3) {
        acc.cells += 1;
        for i in 0..20 {
            let mut rng = instance_rng(cfg, TAG_INJECTION, &[u64::from(k)], i);
            let rows = if i % 2 == 0 {
                vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]
            } else {
                random_coisometry(&mut rng, 2, 3)
            };
            let proj = PolyMap::linear(&rows)?;
            let q = random_hom_poly(&mut rng, 2, k);
            acc.record(check_metric_injection(&proj, &q, &ncfg(TAG_INJECTION, i)))?;
        }
    }
    out.push(acc.finish("metric_injection", "projections R^3 -> R^2; k <= 3; 20 random q per k".into(), tol, started, timing));

    let started = Instant::now();
    let mut acc = Numeric::new();
    let slack = tol.min(1e-9);
    let small = cfg.dims_upto(2);
    acc.cells = 1;
    if !small.is_empty() {
        for i in 0..20 {
            let mut rng = instance_rng(cfg, TAG_TWO_SIDED, &[], i);
            let dims: Vec<usize> = (0..4).map(|_| pick(&mut rng, &small)).collect();
            let degs: Vec<u32> = (0..3).map(|_| rng.random_range(1..=2)).collect();
            let q: PolyMap<f64> = random_poly_map(&mut rng, dims[0], dims[1], degs[0]);
            let p: PolyMap<f64> = random_poly_map(&mut rng, dims[1], dims[2], degs[1]);
            let r: PolyMap<f64> = random_poly_map(&mut rng, dims[2], dims[3], degs[2]);
            let ncfg = NormConfig { tol: slack, ..ncfg(TAG_TWO_SIDED, i) };
            acc.record(check_two_sided_norm(&r, &p, &q, &ncfg))?;
        }
    }
    out.push(acc.finish("two_sided_norm", "20 random instances; degrees <= 2; dims <= 2".into(), slack, started, timing));

    let started = Instant::now();
    let mut acc = Numeric::new();
    acc.cells = cfg.max_m.min(2) as usize;
    for i in 0..20 {
        let mut rng = instance_rng(cfg, TAG_U_PHI, &[], i);
        let (d, e) = (pick(&mut rng, &cfg.dims), pick(&mut rng, &cfg.dims));
        let m = 1 + (i as u32 % cfg.max_m.min(2));
        let phi = random_nonzero_vector(&mut rng, d);
        let x = random_nonzero_vector(&mut rng, e);
        acc.record(check_u_phi_norm(&phi, m, &x, &ncfg(TAG_U_PHI, i)))?;
    }
    out.push(acc.finish("rank_one_norm", "20 random (phi, x); m <= 2".into(), tol, started, timing));

    Ok(out)
}

//! Sup norms of polynomial maps over unit balls, estimated in `f64`, and checks of the
//! norm identities satisfied by the adjoint and the embeddings `J^{m,n}`.
//!
//! Every estimate is a certified lower bound: the returned value is `||P(x*)||` at an
//! explicit unit vector `x*`. Upper bounds come from sampling or from the crude
//! coefficient-sum bound.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::adjoint::{delta_apply, j_embedding, SizeCap};
use crate::error::{check_dim, check_positive, Error, Result};
use crate::poly::{compose_scalar, HomPoly, PolyMap};
use crate::sampling::{random_hom_poly, random_vector, rng_for, stream_id};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BallNorm {
    L1,
    #[default]
    L2,
    LInf,
}

impl BallNorm {
    pub fn name(self) -> &'static str {
        match self {
            BallNorm::L1 => "l1",
            BallNorm::L2 => "l2",
            BallNorm::LInf => "linf",
        }
    }

    pub fn norm(self, v: &[f64]) -> f64 {
        match self {
            BallNorm::L1 => v.iter().map(|x| x.abs()).sum(),
            BallNorm::L2 => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
            BallNorm::LInf => v.iter().fold(0.0, |a, x| a.max(x.abs())),
        }
    }

    fn normalize(self, v: &mut [f64]) -> bool {
        let n = self.norm(v);
        if n == 0.0 || !n.is_finite() {
            return false;
        }
        v.iter_mut().for_each(|x| *x /= n);
        true
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormConfig {
    pub ball: BallNorm,
    pub restarts: usize,
    pub max_iters: usize,
    pub samples: usize,
    /// Relative tolerance of the checks built on top of [`sup_norm`].
    pub tol: f64,
    pub seed: u64,
    pub initial_step: f64,
}

impl Default for NormConfig {
    fn default() -> Self {
        NormConfig {
            ball: BallNorm::L2,
            restarts: 64,
            max_iters: 2000,
            samples: 1 << 14,
            tol: 1e-6,
            seed: 0,
            initial_step: 0.1,
        }
    }
}

impl NormConfig {
    pub fn validate(&self) -> Result<()> {
        if self.tol.is_nan() || self.tol < 0.0 {
            return Err(Error::InvalidParameter(format!("tolerance must be non-negative, got {}", self.tol)));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidParameter("restarts must be at least 1".into()));
        }
        if self.initial_step.is_nan() || self.initial_step <= 0.0 {
            return Err(Error::InvalidParameter("initial step must be positive".into()));
        }
        Ok(())
    }

    fn with_seed(&self, seed: u64) -> Self {
        NormConfig { seed, ..self.clone() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormEstimate {
    pub value: f64,
    pub maximizer: Vec<f64>,
    pub lower_bound_certified: bool,
    pub iterations: usize,
    /// Coefficient-sum bound, always `>= value`.
    pub upper_bound: f64,
    /// Set for balls other than `l2`, where only sampling is used.
    pub heuristic: bool,
    pub samples: usize,
}

/// Flat term list of a polynomial map, for fast repeated evaluation.
struct Compiled {
    dim: usize,
    degree: u32,
    components: Vec<Vec<(f64, Vec<u32>)>>,
}

impl Compiled {
    fn new(p: &PolyMap<f64>) -> Self {
        let components = p
            .components()
            .iter()
            .map(|c| c.terms().into_iter().map(|(a, v)| (v, a.exponents().to_vec())).collect())
            .collect();
        Compiled { dim: p.dim(), degree: p.degree(), components }
    }

    fn powers(&self, x: &[f64]) -> Vec<Vec<f64>> {
        x.iter()
            .map(|&xi| {
                let mut row = vec![1.0; self.degree as usize + 1];
                for j in 1..row.len() {
                    row[j] = row[j - 1] * xi;
                }
                row
            })
            .collect()
    }

    fn eval(&self, x: &[f64]) -> Vec<f64> {
        let pw = self.powers(x);
        self.components
            .iter()
            .map(|terms| {
                terms.iter().map(|(c, e)| e.iter().enumerate().fold(*c, |acc, (i, &a)| acc * pw[i][a as usize])).sum()
            })
            .collect()
    }

    /// `||P(x)||_2^2` and its gradient.
    fn objective(&self, x: &[f64]) -> (f64, Vec<f64>) {
        let pw = self.powers(x);
        let mut f = 0.0;
        let mut grad = vec![0.0; self.dim];
        for terms in &self.components {
            let mut v = 0.0;
            let mut g = vec![0.0; self.dim];
            for (c, e) in terms {
                v += e.iter().enumerate().fold(*c, |acc, (i, &a)| acc * pw[i][a as usize]);
                for i in 0..self.dim {
                    if e[i] == 0 {
                        continue;
                    }
                    let mut t = c * f64::from(e[i]);
                    for (j, &a) in e.iter().enumerate() {
                        t *= pw[j][if j == i { a - 1 } else { a } as usize];
                    }
                    g[i] += t;
                }
            }
            f += v * v;
            for i in 0..self.dim {
                grad[i] += 2.0 * v * g[i];
            }
        }
        (f, grad)
    }

    fn coefficient_bound(&self, ball: BallNorm) -> f64 {
        let per: Vec<f64> = self.components.iter().map(|t| t.iter().map(|(c, _)| c.abs()).sum()).collect();
        ball.norm(&per)
    }
}

fn check_finite(p: &PolyMap<f64>) -> Result<()> {
    if p.components().iter().all(|c| c.coeffs().iter().all(|v| v.is_finite())) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

fn random_on_sphere<R: Rng + ?Sized>(rng: &mut R, dim: usize, ball: BallNorm) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = match ball {
            BallNorm::L2 => (0..dim).map(|_| rng.sample(StandardNormal)).collect(),
            BallNorm::L1 => (0..dim)
                .map(|_| {
                    let t: f64 = rng.sample(Exp1);
                    if rng.random::<bool>() { t } else { -t }
                })
                .collect(),
            BallNorm::LInf => {
                let mut v: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect();
                let face = rng.random_range(0..dim);
                v[face] = if rng.random::<bool>() { 1.0 } else { -1.0 };
                v
            }
        };
        if ball.normalize(&mut v) {
            return v;
        }
    }
}

/// Vertices of the `l1` ball (`+-e_i`) or of the `linf` ball (sign vectors, up to `2^12`).
fn vertices(dim: usize, ball: BallNorm) -> Vec<Vec<f64>> {
    match ball {
        BallNorm::L2 => Vec::new(),
        BallNorm::L1 => (0..2 * dim)
            .map(|j| {
                let mut v = vec![0.0; dim];
                v[j / 2] = if j % 2 == 0 { 1.0 } else { -1.0 };
                v
            })
            .collect(),
        BallNorm::LInf if dim <= 12 => (0..1u32 << dim)
            .map(|mask| (0..dim).map(|i| if mask >> i & 1 == 1 { -1.0 } else { 1.0 }).collect())
            .collect(),
        BallNorm::LInf => Vec::new(),
    }
}

/// Projected gradient ascent of `||P(x)||_2^2` on the unit sphere, with a step that
/// doubles after an accepted move and halves after a rejected one.
fn ascend(c: &Compiled, start: Vec<f64>, cfg: &NormConfig) -> (Vec<f64>, f64, usize) {
    let mut x = start;
    let (mut f, mut g) = c.objective(&x);
    let mut step = cfg.initial_step;
    let mut iters = 0;
    while iters < cfg.max_iters {
        iters += 1;
        let radial: f64 = g.iter().zip(&x).map(|(a, b)| a * b).sum();
        let tangent: Vec<f64> = g.iter().zip(&x).map(|(a, b)| a - radial * b).collect();
        let tnorm = BallNorm::L2.norm(&tangent);
        if tnorm <= 1e-15 * (1.0 + f.abs()) {
            break;
        }
        let mut accepted = false;
        while step > 1e-18 {
            let mut y: Vec<f64> = x.iter().zip(&tangent).map(|(a, t)| a + step * t / tnorm).collect();
            if !BallNorm::L2.normalize(&mut y) {
                step *= 0.5;
                continue;
            }
            let (fy, gy) = c.objective(&y);
            if fy > f {
                x = y;
                f = fy;
                g = gy;
                step *= 2.0;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (x, f, iters)
}

pub fn sup_norm(p: &PolyMap<f64>, cfg: &NormConfig) -> Result<NormEstimate> {
    sup_norm_with_hints(p, cfg, &[])
}

/// [`sup_norm`] with extra starting points for the ascent, tried before the sampled
/// and random ones. Hints are rescaled onto the unit sphere.
pub fn sup_norm_with_hints(p: &PolyMap<f64>, cfg: &NormConfig, hints: &[Vec<f64>]) -> Result<NormEstimate> {
    cfg.validate()?;
    check_finite(p)?;
    let c = Compiled::new(p);
    let d = p.dim();
    let ball = cfg.ball;
    let value_at = |x: &[f64]| ball.norm(&c.eval(x));

    let mut best_x = {
        let mut v = vec![0.0; d];
        v[0] = 1.0;
        v
    };
    let mut best = value_at(&best_x);
    let consider = |x: &[f64], best: &mut f64, best_x: &mut Vec<f64>| {
        let v = value_at(x);
        if v > *best {
            *best = v;
            *best_x = x.to_vec();
        }
        v
    };

    // sampling floor, keeping the best few points as extra ascent starts
    let mut rng = rng_for(cfg.seed, stream_id(&[0x5A4D]));
    let mut pool: Vec<(f64, Vec<f64>)> = Vec::new();
    let keep = 8;
    let mut samples = 0;
    for x in vertices(d, ball) {
        consider(&x, &mut best, &mut best_x);
        samples += 1;
    }
    for _ in 0..cfg.samples {
        let x = random_on_sphere(&mut rng, d, ball);
        let v = consider(&x, &mut best, &mut best_x);
        samples += 1;
        if pool.len() < keep || v > pool[pool.len() - 1].0 {
            pool.push((v, x));
            pool.sort_by(|a, b| b.0.total_cmp(&a.0));
            pool.truncate(keep);
        }
    }

    let mut iterations = 0;
    if ball == BallNorm::L2 && d > 0 {
        let mut starts: Vec<Vec<f64>> = hints
            .iter()
            .filter_map(|h| {
                let mut h = h.clone();
                (h.len() == d && BallNorm::L2.normalize(&mut h)).then_some(h)
            })
            .collect();
        starts.extend(pool.into_iter().map(|(_, x)| x));
        let hint_count = starts.len();
        for restart in 0..cfg.restarts.max(hint_count) {
            let start = if let Some(s) = starts.get(restart) {
                s.clone()
            } else {
                let mut r = rng_for(cfg.seed, stream_id(&[0xA5C3, restart as u64]));
                random_on_sphere(&mut r, d, ball)
            };
            let (x, _, it) = ascend(&c, start, cfg);
            iterations += it;
            consider(&x, &mut best, &mut best_x);
        }
    } else {
        for h in hints {
            let mut h = h.clone();
            if h.len() == d && ball.normalize(&mut h) {
                consider(&h, &mut best, &mut best_x);
            }
        }
    }

    let upper_bound = c.coefficient_bound(ball);
    if best > upper_bound * (1.0 + 1e-12) + 1e-300 {
        return Err(Error::Precondition(format!(
            "estimate {best} exceeds the coefficient bound {upper_bound}"
        )));
    }
    let on_sphere = (ball.norm(&best_x) - 1.0).abs() <= 1e-12;
    let reproduced = (value_at(&best_x) - best).abs() <= 1e-12 * best.max(1.0);
    Ok(NormEstimate {
        value: best,
        maximizer: best_x,
        lower_bound_certified: on_sphere && reproduced,
        iterations,
        upper_bound,
        heuristic: ball != BallNorm::L2,
        samples,
    })
}

/// A linear form `phi` of dual norm one with `phi(y) = ||y||`.
pub fn norming_functional(y: &[f64], ball: BallNorm) -> Result<HomPoly<f64>> {
    let norm = ball.norm(y);
    if y.is_empty() || norm == 0.0 {
        return Err(Error::Degenerate("norming functional of the zero vector"));
    }
    if !norm.is_finite() {
        return Err(Error::NonFinite);
    }
    let sign = |v: f64| if v > 0.0 { 1.0 } else if v < 0.0 { -1.0 } else { 0.0 };
    let w: Vec<f64> = match ball {
        BallNorm::L2 => y.iter().map(|v| v / norm).collect(),
        BallNorm::L1 => y.iter().map(|&v| sign(v)).collect(),
        BallNorm::LInf => {
            let i = (0..y.len()).fold(0, |b, i| if y[i].abs() > y[b].abs() { i } else { b });
            let mut w = vec![0.0; y.len()];
            w[i] = sign(y[i]);
            w
        }
    };
    HomPoly::linear_form(&w)
}

/// Outcome of a norm claim: `lhs` is compared against `rhs` at relative tolerance `tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormReport {
    pub claim: String,
    pub lhs: f64,
    pub rhs: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub certified_lower: bool,
    pub samples: usize,
    pub seed: u64,
    /// Largest sampled upper-phase value divided by `rhs`, when there is an upper phase.
    pub upper_ratio: Option<f64>,
    pub passed: bool,
}

fn rel_err(lhs: f64, rhs: f64) -> f64 {
    let diff = (lhs - rhs).abs();
    if rhs == 0.0 { diff } else { diff / rhs.abs() }
}

fn scalar_map(q: &HomPoly<f64>) -> PolyMap<f64> {
    PolyMap::new(vec![q.clone()]).expect("one component")
}

fn sup_norm_scalar(q: &HomPoly<f64>, cfg: &NormConfig, hints: &[Vec<f64>]) -> Result<NormEstimate> {
    sup_norm_with_hints(&scalar_map(q), cfg, hints)
}

/// `|q(x)| = ||x||^m` for `q = phi^m` built from the norming functional of `x`, with
/// `||q|| <= 1 + tol`.
pub fn check_norming_power(x: &[f64], m: u32, cfg: &NormConfig) -> Result<NormReport> {
    check_positive("m", m)?;
    let phi = norming_functional(x, cfg.ball)?;
    let q = phi.power(m)?;
    let norm_x = cfg.ball.norm(x);
    let rhs = norm_x.powi(m as i32);
    let lhs = q.eval(x)?.abs();
    let q_norm = sup_norm_scalar(&q, cfg, &[x.to_vec()])?;
    let ratio = lhs / rhs;
    // the ratio can exceed one only through rounding
    let passed = ratio >= 1.0 - cfg.tol && ratio <= 1.0 + 1e-12 && q_norm.value <= 1.0 + cfg.tol;
    Ok(NormReport {
        claim: format!("norming_power m={m}"),
        lhs,
        rhs,
        rel_err: rel_err(lhs, rhs).max(q_norm.value - 1.0),
        tol: cfg.tol,
        certified_lower: q_norm.lower_bound_certified,
        samples: q_norm.samples,
        seed: cfg.seed,
        upper_ratio: Some(q_norm.value),
        passed,
    })
}

/// `||Delta^n_k P|| = ||P||^{kn}` as two one-sided bounds. The lower bound evaluates the
/// adjoint at `q* = phi^k`, `phi` norming `P(x*)`; the upper bound samples `upper_samples`
/// random `q` normalized by their own estimated norms.
pub fn check_delta_norm(
    p: &PolyMap<f64>,
    n: u32,
    k: u32,
    cfg: &NormConfig,
    upper_samples: usize,
) -> Result<NormReport> {
    check_positive("n", n)?;
    check_positive("k", k)?;
    let est = sup_norm(p, cfg)?;
    let target = est.value.powi((k * n) as i32);
    let y = p.eval_map(&est.maximizer)?;
    let phi = norming_functional(&y, cfg.ball)?;
    let q_star = phi.power(k)?;
    let image = delta_apply(p, n, k, &q_star)?;
    let lower = sup_norm_scalar(&image, cfg, core::slice::from_ref(&est.maximizer))?;

    let mut worst: f64 = 0.0;
    let mut samples = est.samples + lower.samples;
    for i in 0..upper_samples {
        let mut rng = rng_for(cfg.seed, stream_id(&[0xD17A, u64::from(n), u64::from(k), i as u64]));
        let q: HomPoly<f64> = random_hom_poly(&mut rng, p.codim(), k);
        let sub = cfg.with_seed(stream_id(&[cfg.seed, i as u64]));
        let qn = sup_norm_scalar(&q, &sub, &[])?;
        if qn.value == 0.0 {
            continue;
        }
        let q = q.scale(&(1.0 / qn.value));
        let v = sup_norm_scalar(&delta_apply(p, n, k, &q)?, &sub, core::slice::from_ref(&est.maximizer))?;
        samples += qn.samples + v.samples;
        worst = worst.max(v.value);
    }
    let upper_ratio = if target == 0.0 { worst } else { worst / target };
    let err = rel_err(lower.value, target);
    let passed = err <= cfg.tol && worst <= target * (1.0 + cfg.tol);
    Ok(NormReport {
        claim: format!("delta_norm n={n} k={k}"),
        lhs: lower.value,
        rhs: target,
        rel_err: err,
        tol: cfg.tol,
        certified_lower: est.lower_bound_certified && lower.lower_bound_certified,
        samples,
        seed: cfg.seed,
        upper_ratio: Some(upper_ratio),
        passed,
    })
}

/// `||J^{m,n}(x)|| = ||x||^{mn}`: attained at `q = phi^n`, and `|q(x)|^m <= ||x||^{mn}`
/// for `upper_samples` random `q` of estimated norm one.
pub fn check_j_norm(x: &[f64], m: u32, n: u32, cfg: &NormConfig, upper_samples: usize) -> Result<NormReport> {
    check_positive("m", m)?;
    check_positive("n", n)?;
    let phi = norming_functional(x, cfg.ball)?;
    let target = cfg.ball.norm(x).powi((m * n) as i32);
    let j = j_embedding(x, m, n, SizeCap::default())?;
    let q_star = phi.power(n)?;
    let lower = j.eval(q_star.coeffs())?.abs();

    let mut worst: f64 = 0.0;
    let mut samples = 0;
    for i in 0..upper_samples {
        let mut rng = rng_for(cfg.seed, stream_id(&[0x1E77, u64::from(m), u64::from(n), i as u64]));
        let q: HomPoly<f64> = random_hom_poly(&mut rng, x.len(), n);
        let qn = sup_norm_scalar(&q, &cfg.with_seed(stream_id(&[cfg.seed, i as u64])), &[x.to_vec()])?;
        samples += qn.samples;
        if qn.value == 0.0 {
            continue;
        }
        worst = worst.max(j.eval(q.scale(&(1.0 / qn.value)).coeffs())?.abs());
    }
    let err = rel_err(lower, target);
    Ok(NormReport {
        claim: format!("j_norm m={m} n={n}"),
        lhs: lower,
        rhs: target,
        rel_err: err,
        tol: cfg.tol,
        certified_lower: true,
        samples,
        seed: cfg.seed,
        upper_ratio: Some(if target == 0.0 { worst } else { worst / target }),
        passed: err <= cfg.tol && worst <= target * (1.0 + cfg.tol),
    })
}

/// `||q o j|| = ||q||` for a linear `j: R^g -> R^e` with `j j^T = I` (an orthogonal
/// projection, which maps the unit ball onto the unit ball).
pub fn check_metric_injection(proj: &PolyMap<f64>, q: &HomPoly<f64>, cfg: &NormConfig) -> Result<NormReport> {
    if proj.degree() != 1 {
        return Err(Error::DegreeMismatch { expected: 1, found: proj.degree() });
    }
    check_dim(proj.codim(), q.dim())?;
    if cfg.ball != BallNorm::L2 {
        return Err(Error::Precondition("metric injection check needs the l2 ball".into()));
    }
    let a = proj.coefficient_matrix();
    let gram = a.mul(&a.transpose())?;
    let id = crate::linalg::Matrix::identity(a.rows());
    if gram.sub(&id)?.max_abs() > 1e-12 {
        return Err(Error::Precondition("map is not an orthogonal projection".into()));
    }
    let base = sup_norm_scalar(q, cfg, &[])?;
    let lifted = a.transpose().apply(&base.maximizer)?;
    let pulled = sup_norm_scalar(&compose_scalar(q, proj)?, cfg, &[lifted])?;
    let err = rel_err(pulled.value, base.value);
    Ok(NormReport {
        claim: format!("metric_injection k={}", q.degree()),
        lhs: pulled.value,
        rhs: base.value,
        rel_err: err,
        tol: cfg.tol,
        certified_lower: base.lower_bound_certified && pulled.lower_bound_certified,
        samples: base.samples + pulled.samples,
        seed: cfg.seed,
        upper_ratio: None,
        passed: err <= cfg.tol,
    })
}

/// Random unit `x` and `q` for property runs.
pub fn random_unit_vector(seed: u64, stream: u64, dim: usize, ball: BallNorm) -> Vec<f64> {
    let mut rng = rng_for(seed, stream);
    let mut v: Vec<f64> = random_vector(&mut rng, dim);
    if !ball.normalize(&mut v) {
        v = random_on_sphere(&mut rng, dim, ball);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multi_index::MultiIndex;
    use crate::sampling::random_poly_map;

    fn quick() -> NormConfig {
        NormConfig { restarts: 16, samples: 2048, ..NormConfig::default() }
    }

    fn squares() -> PolyMap<f64> {
        PolyMap::new(vec![
            HomPoly::monomial(MultiIndex::new(vec![2, 0]), 1.0).unwrap(),
            HomPoly::monomial(MultiIndex::new(vec![0, 2]), 1.0).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn monomial_on_line() {
        for m in 1..=4 {
            let p = PolyMap::new(vec![HomPoly::monomial(MultiIndex::new(vec![m]), 1.0).unwrap()]).unwrap();
            let est = sup_norm(&p, &quick()).unwrap();
            assert!((est.value - 1.0).abs() < 1e-12);
            assert!(est.lower_bound_certified);
        }
    }

    #[test]
    fn squares_attain_one_on_an_axis() {
        let est = sup_norm(&squares(), &quick()).unwrap();
        assert!((est.value - 1.0).abs() < 1e-9);
        assert!(est.maximizer.iter().any(|v| (v.abs() - 1.0).abs() < 1e-6));
    }

    #[test]
    fn scaling_is_linear() {
        let mut rng = rng_for(300, 0);
        let p: PolyMap<f64> = random_poly_map(&mut rng, 2, 2, 2);
        let a = sup_norm(&p, &quick()).unwrap().value;
        let b = sup_norm(&p.scale(&-3.0), &quick()).unwrap().value;
        assert!((b - 3.0 * a).abs() <= 1e-9 * b);
    }

    #[test]
    fn estimates_respect_coefficient_bound() {
        let mut rng = rng_for(301, 0);
        for ball in [BallNorm::L1, BallNorm::L2, BallNorm::LInf] {
            let p: PolyMap<f64> = random_poly_map(&mut rng, 3, 2, 2);
            let est = sup_norm(&p, &NormConfig { ball, ..quick() }).unwrap();
            assert!(est.value <= est.upper_bound);
            assert_eq!(est.heuristic, ball != BallNorm::L2);
            assert!((ball.norm(&est.maximizer) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let mut rng = rng_for(302, 0);
        let p: PolyMap<f64> = random_poly_map(&mut rng, 3, 2, 3);
        assert_eq!(sup_norm(&p, &quick()).unwrap(), sup_norm(&p, &quick()).unwrap());
    }

    #[test]
    fn non_finite_rejected() {
        let p = PolyMap::linear(&[vec![f64::NAN, 1.0]]).unwrap();
        assert_eq!(sup_norm(&p, &quick()), Err(Error::NonFinite));
    }

    #[test]
    fn norming_functionals() {
        let phi = norming_functional(&[3.0, 4.0], BallNorm::L2).unwrap();
        assert_eq!(phi.coeffs(), &[0.6, 0.8]);
        assert!((phi.eval(&[3.0, 4.0]).unwrap() - 5.0).abs() < 1e-12);
        let e1 = norming_functional(&[1.0, 0.0, 0.0], BallNorm::L2).unwrap();
        assert_eq!(e1.coeffs(), &[1.0, 0.0, 0.0]);
        let y = [1.0, -3.0, 2.0];
        for ball in [BallNorm::L1, BallNorm::L2, BallNorm::LInf] {
            let phi = norming_functional(&y, ball).unwrap();
            assert!((phi.eval(&y).unwrap() - ball.norm(&y)).abs() < 1e-12);
            let est = sup_norm(&scalar_map(&phi), &NormConfig { ball, ..quick() }).unwrap();
            assert!((est.value - 1.0).abs() < 1e-9, "{ball:?}: {}", est.value);
        }
        assert!(matches!(norming_functional(&[0.0, 0.0], BallNorm::L2), Err(Error::Degenerate(_))));
    }

    #[test]
    fn norming_power_examples() {
        let r = check_norming_power(&[1.0, 0.0], 2, &quick()).unwrap();
        assert!(r.passed && (r.lhs - 1.0).abs() < 1e-12);
        let r = check_norming_power(&[1.0, 1.0], 2, &quick()).unwrap();
        assert!(r.passed && (r.lhs - 2.0).abs() < 1e-12);
    }

    #[test]
    fn delta_norm_examples() {
        let id = PolyMap::<f64>::identity(2).unwrap();
        let r = check_delta_norm(&id, 1, 1, &quick(), 5).unwrap();
        assert!(r.passed && (r.rhs - 1.0).abs() < 1e-12);
        let r = check_delta_norm(&squares(), 1, 2, &quick(), 5).unwrap();
        assert!(r.passed, "{r:?}");
        let r2 = check_delta_norm(&squares().scale(&2.0), 1, 2, &quick(), 5).unwrap();
        assert!(r2.passed && (r2.lhs - 4.0 * r.lhs).abs() < 1e-9);
    }

    #[test]
    fn j_norm_examples() {
        let r = check_j_norm(&[1.0, 1.0], 2, 2, &quick(), 5).unwrap();
        assert!(r.passed && (r.lhs - 4.0).abs() < 1e-9, "{r:?}");
        let r = check_j_norm(&[1.0, 0.0], 2, 2, &quick(), 5).unwrap();
        assert!(r.passed && (r.lhs - 1.0).abs() < 1e-12);
    }

    #[test]
    fn metric_injection_examples() {
        let drop_last = PolyMap::linear(&[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        let q = HomPoly::monomial(MultiIndex::new(vec![1, 1]), 1.0).unwrap();
        let r = check_metric_injection(&drop_last, &q, &quick()).unwrap();
        assert!(r.passed && (r.rhs - 0.5).abs() < 1e-9, "{r:?}");
        let not_proj = PolyMap::linear(&[vec![2.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        assert!(matches!(check_metric_injection(&not_proj, &q, &quick()), Err(Error::Precondition(_))));
    }
}

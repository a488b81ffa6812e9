//! The composition operator `S_RB: P -> R o P o B` and the factorizations through
//! rank-one maps, evaluations and left compositions that it satisfies.
//!
//! Shapes: `B: R^{e1} -> R^{f1}` of degree `s`, `P: R^{f1} -> R^e` of degree `m`, and
//! `R: R^e -> R^f` of degree `r`, so `S_RB(P)` maps `R^{e1} -> R^f` with degree `mrs`.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::adjoint::delta_apply;
use crate::error::{check_dim, check_positive, Error, Result};
use crate::norms::{sup_norm, BallNorm, NormConfig, NormReport};
use crate::points::IntegerPoints;
use crate::poly::{compose_scalar, HomPoly, PolyMap};
use crate::sampling::{random_invertible, random_nonzero_scalar, random_poly_map, random_vector, rng_for, stream_id};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct CompositionInstance<S> {
    pub r: PolyMap<S>,
    pub b: PolyMap<S>,
    /// Degree of the maps `P` the operator acts on.
    pub m: u32,
}

impl<S: Scalar> CompositionInstance<S> {
    pub fn new(r: PolyMap<S>, b: PolyMap<S>, m: u32) -> Result<Self> {
        check_positive("m", m)?;
        Ok(CompositionInstance { r, b, m })
    }

    /// `(e1, f1, e, f)`.
    pub fn shape(&self) -> (usize, usize, usize, usize) {
        (self.b.dim(), self.b.codim(), self.r.dim(), self.r.codim())
    }

    pub fn output_degree(&self) -> u32 {
        self.m * self.r.degree() * self.b.degree()
    }
}

/// `S_RB(P) = R o P o B`.
pub fn s_rb<S: Scalar>(inst: &CompositionInstance<S>, p: &PolyMap<S>) -> Result<PolyMap<S>> {
    let (_, f1, e, _) = inst.shape();
    check_dim(f1, p.dim())?;
    check_dim(e, p.codim())?;
    if p.degree() != inst.m {
        return Err(Error::DegreeMismatch { expected: inst.m, found: p.degree() });
    }
    inst.r.compose(&p.compose(&inst.b)?)
}

/// `y -> phi(y)^m x`.
pub fn u_phi<S: Scalar>(phi: &[S], m: u32, x: &[S]) -> Result<PolyMap<S>> {
    m_b(&HomPoly::linear_form(phi)?.power(m)?, x)
}

/// `P -> P(z)`.
pub fn t_z<S: Scalar>(p: &PolyMap<S>, z: &[S]) -> Result<Vec<S>> {
    p.eval_map(z)
}

/// `phi -> phi^m (x) z`.
pub fn w_z<S: Scalar>(phi: &[S], m: u32, z: &[S]) -> Result<PolyMap<S>> {
    u_phi(phi, m, z)
}

/// `P -> psi o P` for a linear form `psi`.
pub fn v_psi<S: Scalar>(psi: &[S], p: &PolyMap<S>) -> Result<HomPoly<S>> {
    compose_scalar(&HomPoly::linear_form(psi)?, p)
}

/// `q -> q (x) b`.
pub fn m_b<S: Scalar>(q: &HomPoly<S>, b: &[S]) -> Result<PolyMap<S>> {
    if b.is_empty() {
        return Err(Error::InvalidDimension("target vector is empty".into()));
    }
    PolyMap::new(b.iter().map(|bi| q.scale(bi)).collect())
}

/// `P -> I o P`, written `delta_I`.
pub fn delta_left<S: Scalar>(i: &PolyMap<S>, p: &PolyMap<S>) -> Result<PolyMap<S>> {
    i.compose(p)
}

/// `P -> P(1)` for `P` on the scalar field.
pub fn gamma<S: Scalar>(p: &PolyMap<S>) -> Result<Vec<S>> {
    check_dim(1, p.dim())?;
    p.eval_map(&[S::one()])
}

/// `x -> (t -> t^m x)`.
pub fn delta_unit<S: Scalar>(x: &[S], m: u32) -> Result<PolyMap<S>> {
    m_b(&HomPoly::monomial(crate::MultiIndex::new(vec![m]), S::one())?, x)
}

/// `(phi, z)` with `phi(A(z)) = 1`: `z` is the first integer point with `A(z) != 0` and
/// `phi` the coordinate functional at the first nonzero entry of `A(z)`, rescaled.
pub fn normalization_witness<S: Scalar>(a: &PolyMap<S>, budget: usize) -> Result<(Vec<S>, Vec<S>)> {
    for point in IntegerPoints::new(a.dim()).take(budget) {
        let z: Vec<S> = point.iter().map(|&v| S::from_i64(v)).collect();
        let az = a.eval_map(&z)?;
        if let Some(i) = az.iter().position(|v| !v.is_zero()) {
            let mut phi = vec![S::zero(); a.codim()];
            phi[i] = S::one() / az[i].clone();
            return Ok((phi, z));
        }
    }
    if a.is_zero() {
        Err(Error::Degenerate("map is identically zero"))
    } else {
        Err(Error::SearchBudget(budget))
    }
}

fn linear_value<S: Scalar>(phi: &[S], v: &[S]) -> S {
    phi.iter().zip(v).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

fn worst<S: Scalar>(acc: &mut S, diffs: impl IntoIterator<Item = S>) {
    for d in diffs {
        let d = d.abs();
        if d.to_f64() > acc.to_f64() || (acc.is_zero() && !d.is_zero()) {
            *acc = d;
        }
    }
}

fn map_defect<S: Scalar>(a: &PolyMap<S>, b: &PolyMap<S>) -> Result<S> {
    let diff = a.sub(b)?;
    let mut acc = S::zero();
    for c in diff.components() {
        worst(&mut acc, c.coeffs().iter().cloned());
    }
    Ok(acc)
}

fn poly_defect<S: Scalar>(a: &HomPoly<S>, b: &HomPoly<S>) -> Result<S> {
    let mut acc = S::zero();
    worst(&mut acc, a.sub(b)?.into_coeffs());
    Ok(acc)
}

fn is_one<S: Scalar>(v: &S) -> bool {
    (v.clone() - S::one()).is_negligible()
}

/// Normalizing data for both parts of the evaluation factorizations.
#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationWitness<S> {
    /// Form on `R^{f1}` and point of `R^{e1}` with `phi(B(z)) = 1`.
    pub phi: Vec<S>,
    pub z_domain: Vec<S>,
    /// Form on `R^f` and point of `R^e` with `psi(R(z)) = 1`.
    pub psi: Vec<S>,
    pub z_range: Vec<S>,
}

impl<S: Scalar> EvaluationWitness<S> {
    pub fn construct(inst: &CompositionInstance<S>) -> Result<Self> {
        let (phi, z_domain) = normalization_witness(&inst.b, 10_000)?;
        let (psi, z_range) = normalization_witness(&inst.r, 10_000)?;
        Ok(EvaluationWitness { phi, z_domain, psi, z_range })
    }
}

/// Defects of `t_z o S_RB o u_phi = R` (at the points `xs`) and of
/// `v_psi o S_RB o w_z = Delta^{mr}_1 B` (at the linear forms `forms`, compared
/// coefficientwise).
pub fn check_evaluation_factorizations<S: Scalar>(
    inst: &CompositionInstance<S>,
    w: &EvaluationWitness<S>,
    xs: &[Vec<S>],
    forms: &[Vec<S>],
) -> Result<(S, S)> {
    let (e1, f1, e, f) = inst.shape();
    check_dim(f1, w.phi.len())?;
    check_dim(e1, w.z_domain.len())?;
    check_dim(f, w.psi.len())?;
    check_dim(e, w.z_range.len())?;
    if !is_one(&linear_value(&w.phi, &inst.b.eval_map(&w.z_domain)?)) {
        return Err(Error::Precondition("phi(B(z)) must equal 1".into()));
    }
    if !is_one(&linear_value(&w.psi, &inst.r.eval_map(&w.z_range)?)) {
        return Err(Error::Precondition("psi(R(z)) must equal 1".into()));
    }

    let mut defect_a = S::zero();
    for x in xs {
        let lhs = t_z(&s_rb(inst, &u_phi(&w.phi, inst.m, x)?)?, &w.z_domain)?;
        let rhs = inst.r.eval_map(x)?;
        worst(&mut defect_a, lhs.into_iter().zip(rhs).map(|(a, b)| a - b));
    }

    let mut defect_b = S::zero();
    let mr = inst.m * inst.r.degree();
    for form in forms {
        check_dim(f1, form.len())?;
        let lhs = v_psi(&w.psi, &s_rb(inst, &w_z(form, inst.m, &w.z_range)?)?)?;
        let rhs = delta_apply(&inst.b, mr, 1, &HomPoly::linear_form(form)?)?;
        let d = poly_defect(&lhs, &rhs)?;
        worst(&mut defect_b, [d]);
    }
    Ok((defect_a, defect_b))
}

/// Defect of `v_phi o S_RB o w_z = Delta^r_m B` on the polynomials `qs`, where
/// `w_z(q) = q (x) z` and `phi(R(z)) = 1`. For linear `R` this is `Delta^1_m B`.
pub fn check_linear_variant<S: Scalar>(
    inst: &CompositionInstance<S>,
    phi: &[S],
    z: &[S],
    qs: &[HomPoly<S>],
) -> Result<S> {
    if !is_one(&linear_value(phi, &inst.r.eval_map(z)?)) {
        return Err(Error::Precondition("phi(R(z)) must equal 1".into()));
    }
    let mut acc = S::zero();
    for q in qs {
        let lhs = v_psi(phi, &s_rb(inst, &m_b(q, z)?)?)?;
        let rhs = delta_apply(&inst.b, inst.r.degree(), inst.m, q)?;
        let d = poly_defect(&lhs, &rhs)?;
        worst(&mut acc, [d]);
    }
    Ok(acc)
}

/// `S_{phi (x) b}(P) = M_b(Delta^1_m B(phi o P))`, with `R = phi (x) b` linear.
pub fn check_rank_one_factorization<S: Scalar>(
    phi: &[S],
    b_vec: &[S],
    b: &PolyMap<S>,
    p: &PolyMap<S>,
) -> Result<S> {
    let r = m_b(&HomPoly::linear_form(phi)?, b_vec)?;
    let inst = CompositionInstance::new(r, b.clone(), p.degree())?;
    let lhs = s_rb(&inst, p)?;
    let rhs = m_b(&delta_apply(b, 1, p.degree(), &v_psi(phi, p)?)?, b_vec)?;
    map_defect(&lhs, &rhs)
}

/// `S_{C o R o A}(P) = delta_C(S_R(delta_A(P)))`.
pub fn check_outer_factorization<S: Scalar>(
    c: &PolyMap<S>,
    r: &PolyMap<S>,
    a: &PolyMap<S>,
    b: &PolyMap<S>,
    p: &PolyMap<S>,
) -> Result<S> {
    let outer = CompositionInstance::new(c.compose(&r.compose(a)?)?, b.clone(), p.degree())?;
    let inner = CompositionInstance::new(r.clone(), b.clone(), p.degree())?;
    let lhs = s_rb(&outer, p)?;
    let rhs = delta_left(c, &s_rb(&inner, &delta_left(a, p)?)?)?;
    map_defect(&lhs, &rhs)
}

/// `R(x) = gamma(S_R(delta(x)))` with `B` the identity of the scalar field.
pub fn check_unit_factorization<S: Scalar>(r: &PolyMap<S>, m: u32, x: &[S]) -> Result<S> {
    let inst = CompositionInstance::new(r.clone(), PolyMap::identity(1)?, m)?;
    let lhs = gamma(&s_rb(&inst, &delta_unit(x, m)?)?)?;
    let mut acc = S::zero();
    worst(&mut acc, lhs.into_iter().zip(r.eval_map(x)?).map(|(a, b)| a - b));
    Ok(acc)
}

/// Largest defect of each factorization over `trials` seeded random inputs:
/// `[(a) evaluation, (b) evaluation, linear variant, rank-one, outer, unit]`.
pub fn check_ideal_factorizations<S: Scalar>(
    dims: (usize, usize),
    degrees: (u32, u32, u32),
    seed: u64,
    trials: usize,
) -> Result<[S; 6]> {
    let (d1, d2) = dims;
    let (m, r_deg, s) = degrees;
    let mut out: [S; 6] = core::array::from_fn(|_| S::zero());
    for t in 0..trials as u64 {
        let mut rng = rng_for(seed, stream_id(&[d1 as u64, d2 as u64, m.into(), r_deg.into(), s.into(), t]));
        let r: PolyMap<S> = random_poly_map(&mut rng, d2, d1, r_deg);
        let b: PolyMap<S> = random_poly_map(&mut rng, d1, d2, s);
        let p: PolyMap<S> = random_poly_map(&mut rng, d2, d2, m);
        let xs: Vec<Vec<S>> = (0..3).map(|_| random_vector(&mut rng, d2)).collect();
        let forms: Vec<Vec<S>> = (0..3).map(|_| random_vector(&mut rng, d2)).collect();

        let inst = CompositionInstance::new(r.clone(), b.clone(), m)?;
        if !r.is_zero() && !b.is_zero() {
            let w = EvaluationWitness::construct(&inst)?;
            let (a, bb) = check_evaluation_factorizations(&inst, &w, &xs, &forms)?;
            worst(&mut out[0], [a]);
            worst(&mut out[1], [bb]);
        }

        let r_lin: PolyMap<S> = random_poly_map(&mut rng, d2, d1, 1);
        if !r_lin.is_zero() {
            let lin = CompositionInstance::new(r_lin.clone(), b.clone(), m)?;
            let (phi, z) = normalization_witness(&r_lin, 10_000)?;
            let qs: Vec<HomPoly<S>> =
                (0..3).map(|_| crate::sampling::random_hom_poly(&mut rng, d2, m)).collect();
            worst(&mut out[2], [check_linear_variant(&lin, &phi, &z, &qs)?]);
        }

        let phi: Vec<S> = random_vector(&mut rng, d2);
        let b_vec: Vec<S> = random_vector(&mut rng, d1);
        worst(&mut out[3], [check_rank_one_factorization(&phi, &b_vec, &b, &p)?]);

        let a = PolyMap::from_matrix(&random_invertible::<S, _>(&mut rng, d2))?;
        let c = PolyMap::linear(&[random_vector(&mut rng, d1), random_vector(&mut rng, d1)])?;
        worst(&mut out[4], [check_outer_factorization(&c, &r, &a, &b, &p)?]);

        let x: Vec<S> = random_vector(&mut rng, d2);
        let scale: S = random_nonzero_scalar(&mut rng);
        worst(&mut out[5], [check_unit_factorization(&r.scale(&scale), m, &x)?]);
    }
    Ok(out)
}

/// `||R o P o Q|| <= ||R|| ||P||^{deg R} ||Q||^{deg R deg P}`; `lhs` is the estimated
/// norm of the composite and `rhs` the product bound. Passes when
/// `(rhs - lhs) / rhs >= -tol`.
pub fn check_two_sided_norm(
    r: &PolyMap<f64>,
    p: &PolyMap<f64>,
    q: &PolyMap<f64>,
    cfg: &NormConfig,
) -> Result<NormReport> {
    let composite = r.compose(&p.compose(q)?)?;
    let nr = sup_norm(r, cfg)?;
    let np = sup_norm(p, cfg)?;
    let nq = sup_norm(q, cfg)?;
    let (kr, mp) = (r.degree() as i32, p.degree() as i32);
    let rhs = nr.value * np.value.powi(kr) * nq.value.powi(kr * mp);
    let hint = nq.maximizer.clone();
    let lhs = crate::norms::sup_norm_with_hints(&composite, cfg, &[hint])?;
    let slack = if rhs == 0.0 { -lhs.value } else { (rhs - lhs.value) / rhs };
    Ok(NormReport {
        claim: alloc::format!("two_sided_norm r={kr} m={mp} n={}", q.degree()),
        lhs: lhs.value,
        rhs,
        rel_err: -slack.min(0.0),
        tol: cfg.tol,
        certified_lower: lhs.lower_bound_certified,
        samples: nr.samples + np.samples + nq.samples + lhs.samples,
        seed: cfg.seed,
        upper_ratio: None,
        passed: slack >= -cfg.tol,
    })
}

/// `||u_phi(x)|| = ||phi||^m ||x||` on the `l2` ball.
pub fn check_u_phi_norm(phi: &[f64], m: u32, x: &[f64], cfg: &NormConfig) -> Result<NormReport> {
    let u = u_phi(phi, m, x)?;
    let est = sup_norm(&u, cfg)?;
    let phi_norm = sup_norm(&PolyMap::linear(&[phi.to_vec()])?, cfg)?;
    let rhs = phi_norm.value.powi(m as i32) * BallNorm::L2.norm(x);
    let err = if rhs == 0.0 { est.value } else { (est.value - rhs).abs() / rhs };
    Ok(NormReport {
        claim: alloc::format!("u_phi_norm m={m}"),
        lhs: est.value,
        rhs,
        rel_err: err,
        tol: cfg.tol,
        certified_lower: est.lower_bound_certified,
        samples: est.samples + phi_norm.samples,
        seed: cfg.seed,
        upper_ratio: None,
        passed: err <= cfg.tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::random_hom_poly;
    use crate::Rational;
    use num_traits::Zero;

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn identity_instance_is_identity() {
        let id = PolyMap::<Rational>::identity(2).unwrap();
        let inst = CompositionInstance::new(id.clone(), id, 2).unwrap();
        let mut rng = rng_for(400, 0);
        let p: PolyMap<Rational> = random_poly_map(&mut rng, 2, 2, 2);
        assert_eq!(s_rb(&inst, &p).unwrap(), p);
    }

    #[test]
    fn s_rb_is_r_homogeneous() {
        let mut rng = rng_for(401, 0);
        for (m, rd, s) in [(1, 1, 1), (2, 2, 1), (1, 2, 2), (2, 1, 2)] {
            let inst = CompositionInstance::new(
                random_poly_map(&mut rng, 2, 2, rd),
                random_poly_map(&mut rng, 2, 2, s),
                m,
            )
            .unwrap();
            let p: PolyMap<Rational> = random_poly_map(&mut rng, 2, 2, m);
            let base = s_rb(&inst, &p).unwrap();
            assert_eq!(base.degree(), m * rd * s);
            for lambda in [Rational::from_ratio(-2, 1), Rational::from_ratio(1, 2), r(3)] {
                assert_eq!(s_rb(&inst, &p.scale(&lambda)).unwrap(), base.scale(&lambda.powu(rd)));
            }
        }
    }

    #[test]
    fn factories() {
        let u = u_phi(&[r(1), r(0)], 2, &[r(1), r(0)]).unwrap();
        assert_eq!(u.eval_map(&[r(3), r(5)]).unwrap(), vec![r(9), r(0)]);
        let p = PolyMap::linear(&[vec![r(1), r(2)]]).unwrap();
        assert_eq!(t_z(&p, &[r(1), r(1)]).unwrap(), vec![r(3)]);
        let q = HomPoly::from_coeffs(2, 2, vec![r(1), r(-1), r(2)]).unwrap();
        let b = [r(2), r(-3)];
        let mq = m_b(&q, &b).unwrap();
        for pt in IntegerPoints::new(2).take(5) {
            let x: Vec<Rational> = pt.iter().map(|&v| r(v)).collect();
            let qx = q.eval(&x).unwrap();
            assert_eq!(mq.eval_map(&x).unwrap(), vec![qx.clone() * r(2), qx * r(-3)]);
        }
        let unit = delta_unit(&[r(2), r(1)], 3).unwrap();
        assert_eq!(unit.eval_map(&[r(2)]).unwrap(), vec![r(16), r(8)]);
        assert_eq!(gamma(&unit).unwrap(), vec![r(2), r(1)]);
    }

    #[test]
    fn witness_normalizes() {
        let mut rng = rng_for(402, 0);
        let b: PolyMap<Rational> = random_poly_map(&mut rng, 2, 2, 2);
        let (phi, z) = normalization_witness(&b, 100).unwrap();
        assert_eq!(linear_value(&phi, &b.eval_map(&z).unwrap()), r(1));
        assert_eq!(
            normalization_witness(&PolyMap::<Rational>::zero(2, 2, 1).unwrap(), 100),
            Err(Error::Degenerate("map is identically zero"))
        );
    }

    #[test]
    fn evaluation_factorizations_on_identity() {
        let id = PolyMap::<Rational>::identity(2).unwrap();
        let inst = CompositionInstance::new(id.clone(), id, 1).unwrap();
        let w = EvaluationWitness::construct(&inst).unwrap();
        let xs = vec![vec![r(1), r(2)], vec![r(-3), r(1)]];
        let (a, b) = check_evaluation_factorizations(&inst, &w, &xs, &xs).unwrap();
        assert!(a.is_zero() && b.is_zero());
        let bad = EvaluationWitness { phi: vec![r(2), r(0)], ..w };
        assert!(matches!(check_evaluation_factorizations(&inst, &bad, &xs, &xs), Err(Error::Precondition(_))));
    }

    #[test]
    fn evaluation_factorizations_random_quadratic() {
        let mut rng = rng_for(403, 0);
        for _ in 0..10 {
            let inst = CompositionInstance::new(
                random_poly_map(&mut rng, 2, 2, 1),
                random_poly_map(&mut rng, 2, 2, 1),
                2,
            )
            .unwrap();
            let w = EvaluationWitness::construct(&inst).unwrap();
            let xs: Vec<Vec<Rational>> = (0..4).map(|_| random_vector(&mut rng, 2)).collect();
            let (a, b) = check_evaluation_factorizations(&inst, &w, &xs, &xs).unwrap();
            assert!(a.is_zero() && b.is_zero());
        }
    }

    #[test]
    fn linear_variant_and_factorizations() {
        let mut rng = rng_for(404, 0);
        let inst = CompositionInstance::new(
            random_poly_map::<Rational, _>(&mut rng, 2, 2, 1),
            random_poly_map(&mut rng, 2, 2, 2),
            2,
        )
        .unwrap();
        let (phi, z) = normalization_witness(&inst.r, 100).unwrap();
        let qs: Vec<HomPoly<Rational>> = (0..5).map(|_| random_hom_poly(&mut rng, 2, 2)).collect();
        assert!(check_linear_variant(&inst, &phi, &z, &qs).unwrap().is_zero());

        let b = PolyMap::<Rational>::linear(&[vec![r(1), r(1)], vec![r(0), r(2)]]).unwrap();
        let p: PolyMap<Rational> = random_poly_map(&mut rng, 2, 2, 2);
        let e1 = [r(1), r(0)];
        assert!(check_rank_one_factorization(&e1, &e1, &b, &p).unwrap().is_zero());

        let id = PolyMap::<Rational>::identity(2).unwrap();
        let rr: PolyMap<Rational> = random_poly_map(&mut rng, 2, 2, 2);
        assert!(check_outer_factorization(&id, &rr, &id, &b, &p).unwrap().is_zero());
        for _ in 0..20 {
            let rr: PolyMap<Rational> = random_poly_map(&mut rng, 2, 3, 2);
            let x: Vec<Rational> = random_vector(&mut rng, 2);
            assert!(check_unit_factorization(&rr, 2, &x).unwrap().is_zero());
        }
    }

    #[test]
    fn driver_reports_zero() {
        for degrees in [(1, 1, 1), (2, 1, 2), (2, 2, 2)] {
            let defects = check_ideal_factorizations::<Rational>((2, 2), degrees, 9, 2).unwrap();
            assert!(defects.iter().all(|d| d.is_zero()), "{degrees:?}");
        }
        let defects = check_ideal_factorizations::<Rational>((1, 2), (2, 2, 1), 9, 2).unwrap();
        assert!(defects.iter().all(|d| d.is_zero()));
    }

    #[test]
    fn two_sided_norm_identity_and_diagonal() {
        let cfg = NormConfig { restarts: 16, samples: 2048, tol: 1e-9, ..NormConfig::default() };
        let id = PolyMap::<f64>::identity(2).unwrap();
        let rep = check_two_sided_norm(&id, &id, &id, &cfg).unwrap();
        assert!(rep.passed && (rep.lhs - 1.0).abs() < 1e-12 && (rep.rhs - 1.0).abs() < 1e-12);
        let d1 = PolyMap::linear(&[vec![2.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let d2 = PolyMap::linear(&[vec![3.0, 0.0], vec![0.0, 0.5]]).unwrap();
        let rep = check_two_sided_norm(&d1, &d2, &d1, &cfg).unwrap();
        assert!(rep.passed && (rep.lhs - 12.0).abs() < 1e-9 && (rep.rhs - 12.0).abs() < 1e-9, "{rep:?}");
    }

    #[test]
    fn u_phi_norm() {
        let cfg = NormConfig { restarts: 16, samples: 2048, ..NormConfig::default() };
        let rep = check_u_phi_norm(&[1.0, -2.0], 2, &[3.0, 4.0], &cfg).unwrap();
        assert!(rep.passed && (rep.rhs - 25.0).abs() < 1e-9, "{rep:?}");
    }
}

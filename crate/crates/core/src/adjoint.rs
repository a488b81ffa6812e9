//! The generalized adjoint `Delta^n_k P: q -> (x -> q(P(x))^n)`, the embeddings
//! `J^{m,n}(x): q -> q(x)^m`, and exact checkers for the identities they satisfy.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{check_dim, check_positive, Error, Result};
use crate::linalg::Matrix;
use crate::multi_index::{basis_len, enumerate_multi_indices, MultiIndex};
use crate::points::IntegerPoints;
use crate::poly::{compose_scalar, HomPoly, PolyMap};
use crate::scalar::Scalar;
use crate::tensor::delta1k_matrix;

/// Upper bound on the dimension of any coefficient space that gets materialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeCap(pub usize);

impl SizeCap {
    /// `C(14, 6)`.
    pub const DEFAULT: usize = 3003;

    pub fn new(cap: usize) -> Self {
        SizeCap(cap)
    }

    pub fn check(self, what: &str, dim: usize) -> Result<()> {
        if dim > self.0 {
            Err(Error::CapacityExceeded { what: what.into(), dim, cap: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for SizeCap {
    fn default() -> Self {
        SizeCap(Self::DEFAULT)
    }
}

/// `Delta^n_k P (q) = (q o P)^n`, an `mnk`-homogeneous polynomial on the domain of `P`.
pub fn delta_apply<S: Scalar>(p: &PolyMap<S>, n: u32, k: u32, q: &HomPoly<S>) -> Result<HomPoly<S>> {
    check_positive("n", n)?;
    check_positive("k", k)?;
    check_dim(p.codim(), q.dim())?;
    if q.degree() != k {
        return Err(Error::DegreeMismatch { expected: k, found: q.degree() });
    }
    compose_scalar(q, p)?.power(n)
}

/// `Delta^n_k P` as an explicit `n`-homogeneous polynomial map from the coefficient
/// space of `k`-homogeneous polynomials on `R^e` to that of `mnk`-homogeneous
/// polynomials on `R^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct MaterializedDelta<S> {
    pub map: PolyMap<S>,
    pub n: u32,
    pub k: u32,
    /// Shape of the source `P`: `(d, e, m)`.
    pub source_shape: (usize, usize, u32),
}

impl<S: Scalar> MaterializedDelta<S> {
    /// Evaluates at `q`'s coefficient vector and reassembles the image polynomial.
    pub fn apply(&self, q: &HomPoly<S>) -> Result<HomPoly<S>> {
        let (d, e, m) = self.source_shape;
        check_dim(e, q.dim())?;
        if q.degree() != self.k {
            return Err(Error::DegreeMismatch { expected: self.k, found: q.degree() });
        }
        let coeffs = self.map.eval_map(q.coeffs())?;
        HomPoly::from_coeffs(d, m * self.n * self.k, coeffs)
    }
}

pub fn delta_materialize<S: Scalar>(p: &PolyMap<S>, n: u32, k: u32, cap: SizeCap) -> Result<MaterializedDelta<S>> {
    check_positive("n", n)?;
    check_positive("k", k)?;
    let (d, e, m) = (p.dim(), p.codim(), p.degree());
    let q_dim = basis_len(e, k);
    let out_dim = basis_len(d, m * n * k);
    cap.check("coefficient space of the polynomials q", q_dim)?;
    cap.check("coefficient space of the image polynomials", out_dim)?;

    // coefficient gamma of q o P is the linear form  c -> sum_beta L[gamma, beta] c_beta
    let lin = delta1k_matrix(p, k, cap)?;
    let linear: Vec<HomPoly<S>> =
        (0..lin.matrix.rows()).map(|i| HomPoly::linear_form(lin.matrix.row(i))).collect::<Result<_>>()?;
    let inner_basis = enumerate_multi_indices(d, m * k)?;

    // raise the polynomial-with-polynomial-coefficients to the n-th power
    let mut current = linear.clone();
    let mut current_basis = inner_basis.clone();
    for t in 2..=n {
        let next_deg = m * k * t;
        let mut next: Vec<HomPoly<S>> = (0..basis_len(d, next_deg))
            .map(|_| HomPoly::zero(q_dim, t))
            .collect::<Result<_>>()?;
        for (g1, a) in current_basis.iter().zip(&current) {
            if a.is_zero() {
                continue;
            }
            for (g2, b) in inner_basis.iter().zip(&linear) {
                if b.is_zero() {
                    continue;
                }
                let slot = &mut next[g1.add(g2).rank()];
                *slot = slot.add(&a.multiply(b)?)?;
            }
        }
        current = next;
        current_basis = enumerate_multi_indices(d, next_deg)?;
    }
    Ok(MaterializedDelta { map: PolyMap::new(current)?, n, k, source_shape: (d, e, m) })
}

/// `J^{m,n}(x): q -> q(x)^m` as an `m`-homogeneous polynomial on the coefficient space
/// of `n`-homogeneous polynomials on `R^d`.
pub fn j_embedding<S: Scalar>(x: &[S], m: u32, n: u32, cap: SizeCap) -> Result<HomPoly<S>> {
    check_positive("m", m)?;
    check_positive("n", n)?;
    if x.is_empty() {
        return Err(Error::InvalidDimension("point must have at least one coordinate".into()));
    }
    cap.check("coefficient space of the polynomials q", basis_len(x.len(), n))?;
    let evaluation = HomPoly::linear_form(&crate::poly::monomial_values(x.len(), n, x)?)?;
    evaluation.power(m)
}

/// Both sides of `Delta^{ns}_k(Q o P) = Delta^s_{rnk} P o Delta^n_k Q` applied to `q`.
pub fn composition_sides<S: Scalar>(
    p: &PolyMap<S>,
    q_map: &PolyMap<S>,
    n: u32,
    k: u32,
    s: u32,
    q: &HomPoly<S>,
) -> Result<(HomPoly<S>, HomPoly<S>)> {
    check_positive("s", s)?;
    let qp = q_map.compose(p)?;
    let lhs = delta_apply(&qp, n * s, k, q)?;
    let inner = delta_apply(q_map, n, k, q)?;
    let rhs = delta_apply(p, s, q_map.degree() * n * k, &inner)?;
    Ok((lhs, rhs))
}

/// `LHS(q)(x) - RHS(q)(x)` for the composition identity.
pub fn check_composition_identity<S: Scalar>(
    p: &PolyMap<S>,
    q_map: &PolyMap<S>,
    n: u32,
    k: u32,
    s: u32,
    q: &HomPoly<S>,
    x: &[S],
) -> Result<S> {
    let (lhs, rhs) = composition_sides(p, q_map, n, k, s, q)?;
    Ok(lhs.eval(x)? - rhs.eval(x)?)
}

/// Parameters of the commutative diagram relating `P`, `Delta^s_r(Delta^n_k P)` and the
/// embeddings `J^{r,mnk}`, `J^{nrs,k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagramParams {
    pub m: u32,
    pub n: u32,
    pub k: u32,
    pub r: u32,
    pub s: u32,
}

/// `Delta^s_r(Delta^n_k P)(J^{r,mnk}(x))(q) - J^{nrs,k}(P(x))(q)`.
///
/// Neither side materializes the higher-order polynomial spaces: the left side
/// evaluates `J^{r,mnk}(x)` at the coefficients of `Delta^n_k P(q)` and raises to `s`.
pub fn check_diagram<S: Scalar>(
    p: &PolyMap<S>,
    params: DiagramParams,
    x: &[S],
    q: &HomPoly<S>,
    cap: SizeCap,
) -> Result<S> {
    let DiagramParams { m, n, k, r, s } = params;
    check_positive("r", r)?;
    check_positive("s", s)?;
    if p.degree() != m {
        return Err(Error::DegreeMismatch { expected: m, found: p.degree() });
    }
    check_dim(p.dim(), x.len())?;
    let image = delta_apply(p, n, k, q)?;
    let j_x = j_embedding(x, r, m * n * k, cap)?;
    let lhs = j_x.eval(image.coeffs())?.powu(s);
    let j_px = j_embedding(&p.eval_map(x)?, n * r * s, k, cap)?;
    let rhs = j_px.eval(q.coeffs())?;
    Ok(lhs - rhs)
}

/// `(Delta^1_k u . Delta^1_k(u^-1) - I, Delta^1_k(u^-1) . Delta^1_k u - I)` for an
/// invertible linear `u`.
pub fn delta_of_inverse_check<S: Scalar>(u: &PolyMap<S>, k: u32, cap: SizeCap) -> Result<(Matrix<S>, Matrix<S>)> {
    if u.degree() != 1 {
        return Err(Error::DegreeMismatch { expected: 1, found: u.degree() });
    }
    check_dim(u.dim(), u.codim())?;
    let inv = PolyMap::from_matrix(&u.coefficient_matrix().inverse()?)?;
    let a = delta1k_matrix(u, k, cap)?.matrix;
    let b = delta1k_matrix(&inv, k, cap)?.matrix;
    let id = Matrix::identity(a.rows());
    Ok((a.mul(&b)?.sub(&id)?, b.mul(&a)?.sub(&id)?))
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness<S> {
    Equal,
    /// `Delta^n_k P_1 (q)(x) != Delta^n_k P_2 (q)(x)`, with the two values.
    Separated { q: HomPoly<S>, x: Vec<S>, values: (S, S) },
}

pub const DEFAULT_SEARCH_BUDGET: usize = 10_000;

/// Separating data for `P_1 != P_2` when `kn` is odd: a point `x0` with
/// `P_1(x0) != P_2(x0)` and `q = (y*)^k` for a coordinate functional `y*` telling the two
/// values apart.
pub fn injectivity_witness<S: Scalar>(
    p1: &PolyMap<S>,
    p2: &PolyMap<S>,
    n: u32,
    k: u32,
    budget: usize,
) -> Result<Witness<S>> {
    check_positive("n", n)?;
    check_positive("k", k)?;
    if (k * n).is_multiple_of(2) {
        return Err(Error::Precondition(format!("kn must be odd for injectivity, got k = {k}, n = {n}")));
    }
    check_dim(p1.dim(), p2.dim())?;
    check_dim(p1.codim(), p2.codim())?;
    if p1.degree() != p2.degree() {
        return Err(Error::DegreeMismatch { expected: p1.degree(), found: p2.degree() });
    }
    if p1 == p2 {
        return Ok(Witness::Equal);
    }
    for point in IntegerPoints::new(p1.dim()).take(budget) {
        let x: Vec<S> = point.iter().map(|&v| S::from_i64(v)).collect();
        let v1 = p1.eval_map(&x)?;
        let v2 = p2.eval_map(&x)?;
        let Some(i) = (0..v1.len()).find(|&i| v1[i] != v2[i]) else { continue };
        let q = HomPoly::monomial(MultiIndex::pure(p1.codim(), i, k), S::one())?;
        let a = delta_apply(p1, n, k, &q)?.eval(&x)?;
        let b = delta_apply(p2, n, k, &q)?.eval(&x)?;
        return Ok(Witness::Separated { q, x, values: (a, b) });
    }
    Err(Error::SearchBudget(budget))
}

/// `Delta(P + Q)(q)(x) - Delta(P)(q)(x) - Delta(Q)(q)(x)`.
pub fn additivity_defect_value<S: Scalar>(
    p: &PolyMap<S>,
    q_map: &PolyMap<S>,
    n: u32,
    k: u32,
    q: &HomPoly<S>,
    x: &[S],
) -> Result<S> {
    let sum = delta_apply(&p.add(q_map)?, n, k, q)?.eval(x)?;
    let a = delta_apply(p, n, k, q)?.eval(x)?;
    let b = delta_apply(q_map, n, k, q)?.eval(x)?;
    Ok(sum - a - b)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdditivityWitness<S> {
    pub p: PolyMap<S>,
    pub q_map: PolyMap<S>,
    pub q: HomPoly<S>,
    pub x: Vec<S>,
    pub defect: S,
}

/// Searches rank-one maps `phi^m (x) u` with small integer data for a nonzero
/// additivity defect of `Delta^n_k`. Returns `None` if the search space is exhausted,
/// which is what happens for `k = n = 1`.
pub fn find_nonadditivity_witness<S: Scalar>(
    d: usize,
    e: usize,
    m: u32,
    n: u32,
    k: u32,
) -> Result<Option<AdditivityWitness<S>>> {
    check_positive("m", m)?;
    let forms_d = small_vectors::<S>(d);
    let vecs_e = small_vectors::<S>(e);
    let scalars = [S::one(), -S::one(), S::from_i64(2)];
    let mut qs = Vec::new();
    for i in 0..e {
        qs.push(HomPoly::monomial(MultiIndex::pure(e, i, k), S::one())?);
    }
    qs.push(HomPoly::linear_form(&vec![S::one(); e])?.power(k)?);
    let xs: Vec<Vec<S>> = IntegerPoints::new(d)
        .skip(1)
        .take(8)
        .map(|p| p.iter().map(|&v| S::from_i64(v)).collect())
        .collect();

    for phi in &forms_d {
        let phi_m = HomPoly::linear_form(phi)?.power(m)?;
        for u in &vecs_e {
            let p = rank_one(&phi_m, u)?;
            for psi in &forms_d {
                let psi_m = HomPoly::linear_form(psi)?.power(m)?;
                for v in &vecs_e {
                    for a in &scalars {
                        let q_map = rank_one(&psi_m.scale(a), v)?;
                        for q in &qs {
                            for x in &xs {
                                let defect = additivity_defect_value(&p, &q_map, n, k, q, x)?;
                                if !defect.is_zero() {
                                    return Ok(Some(AdditivityWitness {
                                        p,
                                        q_map,
                                        q: q.clone(),
                                        x: x.clone(),
                                        defect,
                                    }));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn rank_one<S: Scalar>(p: &HomPoly<S>, b: &[S]) -> Result<PolyMap<S>> {
    PolyMap::new(b.iter().map(|bi| p.scale(bi)).collect())
}

/// Coordinate vectors, then the all-ones vector.
fn small_vectors<S: Scalar>(dim: usize) -> Vec<Vec<S>> {
    let mut out: Vec<Vec<S>> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { S::one() } else { S::zero() }).collect())
        .collect();
    if dim > 1 {
        out.push(vec![S::one(); dim]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_hom_poly, random_invertible, random_poly_map, random_vector, rng_for};
    use crate::Rational;
    use num_traits::Zero;

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    fn squares() -> PolyMap<Rational> {
        PolyMap::new(vec![
            HomPoly::monomial(mi(&[2, 0]), r(1)).unwrap(),
            HomPoly::monomial(mi(&[0, 2]), r(1)).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn classical_adjoint_column() {
        let u = PolyMap::linear(&[vec![r(1), r(2)], vec![r(3), r(4)], vec![r(5), r(6)]]).unwrap();
        let y2 = HomPoly::linear_form(&[r(0), r(1), r(0)]).unwrap();
        let image = delta_apply(&u, 1, 1, &y2).unwrap();
        assert_eq!(image.coeffs(), &[r(3), r(4)]);
    }

    #[test]
    fn delta_apply_examples() {
        let q = HomPoly::monomial(mi(&[1, 1]), r(1)).unwrap();
        let image = delta_apply(&squares(), 1, 2, &q).unwrap();
        assert_eq!(image, HomPoly::monomial(mi(&[2, 2]), r(1)).unwrap());
        let zero = HomPoly::zero(2, 2).unwrap();
        assert!(delta_apply(&squares(), 2, 2, &zero).unwrap().is_zero());
        assert!(matches!(
            delta_apply(&squares(), 1, 3, &q),
            Err(Error::DegreeMismatch { expected: 3, found: 2 })
        ));
        assert!(matches!(delta_apply(&squares(), 0, 2, &q), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn materialized_linear_case_is_the_adjoint_matrix() {
        let u = PolyMap::linear(&[vec![r(1), r(2)], vec![r(3), r(4)], vec![r(5), r(6)]]).unwrap();
        let md = delta_materialize(&u, 1, 1, SizeCap::default()).unwrap();
        assert_eq!(md.map.degree(), 1);
        assert_eq!(md.map.coefficient_matrix(), u.coefficient_matrix().transpose());
    }

    #[test]
    fn materialized_agrees_with_apply() {
        let mut rng = rng_for(100, 0);
        for (d, e, m, n, k) in [(2, 2, 2, 2, 1), (2, 3, 1, 3, 2), (3, 2, 1, 2, 2), (1, 2, 2, 2, 2)] {
            let p: PolyMap<Rational> = random_poly_map(&mut rng, d, e, m);
            let md = delta_materialize(&p, n, k, SizeCap::default()).unwrap();
            assert_eq!(md.map.degree(), n);
            assert_eq!(md.map.dim(), basis_len(e, k));
            assert_eq!(md.map.codim(), basis_len(d, m * n * k));
            for _ in 0..20 {
                let q: HomPoly<Rational> = random_hom_poly(&mut rng, e, k);
                assert_eq!(md.apply(&q).unwrap(), delta_apply(&p, n, k, &q).unwrap());
            }
        }
    }

    #[test]
    fn materialized_scales_by_lambda_kn() {
        let mut rng = rng_for(101, 0);
        let p: PolyMap<Rational> = random_poly_map(&mut rng, 2, 2, 1);
        let lambda = Rational::from_ratio(-2, 3);
        let (n, k) = (2, 2);
        let base = delta_materialize(&p, n, k, SizeCap::default()).unwrap();
        let scaled = delta_materialize(&p.scale(&lambda), n, k, SizeCap::default()).unwrap();
        assert_eq!(scaled.map, base.map.scale(&lambda.powu(k * n)));
    }

    #[test]
    fn capacity_error_names_dimension() {
        let p = PolyMap::<Rational>::zero(3, 3, 2).unwrap();
        let err = delta_materialize(&p, 2, 2, SizeCap::new(20)).unwrap_err();
        assert_eq!(
            err,
            Error::CapacityExceeded {
                what: "coefficient space of the image polynomials".into(),
                dim: 45,
                cap: 20
            }
        );
    }

    #[test]
    fn j_embedding_examples() {
        let x = [r(2), r(-3)];
        let j = j_embedding(&x, 1, 1, SizeCap::default()).unwrap();
        assert_eq!(j.coeffs(), &x);
        assert!(j_embedding(&[r(0), r(0)], 2, 2, SizeCap::default()).unwrap().is_zero());

        // q = phi^n with phi linear: value phi(x)^{nm}
        let phi = HomPoly::linear_form(&[r(1), r(2)]).unwrap();
        for (m, n) in [(1, 2), (2, 1), (2, 3), (3, 2)] {
            let q = phi.power(n).unwrap();
            let j = j_embedding(&x, m, n, SizeCap::default()).unwrap();
            assert_eq!(j.eval(q.coeffs()).unwrap(), phi.eval(&x).unwrap().powu(n * m));
        }
    }

    #[test]
    fn composition_identity_linear_and_nonlinear() {
        let mut rng = rng_for(102, 0);
        // classical (v o u)* = u* o v*
        let u: PolyMap<Rational> = random_poly_map(&mut rng, 2, 3, 1);
        let v: PolyMap<Rational> = random_poly_map(&mut rng, 3, 2, 1);
        let q: HomPoly<Rational> = random_hom_poly(&mut rng, 2, 1);
        let x: Vec<Rational> = random_vector(&mut rng, 2);
        assert!(check_composition_identity(&u, &v, 1, 1, 1, &q, &x).unwrap().is_zero());

        for _ in 0..10 {
            let p: PolyMap<Rational> = random_poly_map(&mut rng, 2, 2, 2);
            let qm: PolyMap<Rational> = random_poly_map(&mut rng, 2, 3, 1);
            let q: HomPoly<Rational> = random_hom_poly(&mut rng, 3, 2);
            let x: Vec<Rational> = random_vector(&mut rng, 2);
            let defect = check_composition_identity(&p, &qm, 1, 2, 1, &q, &x).unwrap();
            assert!(defect.is_zero());
            // both sides equal q(Q(P(x)))^{ns}
            let direct = q.eval(&qm.eval_map(&p.eval_map(&x).unwrap()).unwrap()).unwrap();
            let (lhs, _) = composition_sides(&p, &qm, 1, 2, 1, &q).unwrap();
            assert_eq!(lhs.eval(&x).unwrap(), direct);
        }
    }

    #[test]
    fn perturbed_composition_side_is_detected() {
        let mut rng = rng_for(103, 0);
        let p: PolyMap<Rational> = random_poly_map(&mut rng, 2, 2, 2);
        let qm: PolyMap<Rational> = random_poly_map(&mut rng, 2, 2, 1);
        let q: HomPoly<Rational> = random_hom_poly(&mut rng, 2, 2);
        let (lhs, rhs) = composition_sides(&p, &qm, 1, 2, 1, &q).unwrap();
        let mut coeffs = rhs.coeffs().to_vec();
        coeffs[0] = coeffs[0].clone() + r(1);
        let bumped = HomPoly::from_coeffs(rhs.dim(), rhs.degree(), coeffs).unwrap();
        let x = [r(1), r(0)];
        assert!(!(lhs.eval(&x).unwrap() - bumped.eval(&x).unwrap()).is_zero());
    }

    #[test]
    fn diagram_commutes() {
        let cap = SizeCap::default();
        let u = PolyMap::linear(&[vec![r(1), r(2)], vec![r(-1), r(3)]]).unwrap();
        let params = DiagramParams { m: 1, n: 1, k: 1, r: 1, s: 1 };
        let q = HomPoly::linear_form(&[r(2), r(5)]).unwrap();
        assert!(check_diagram(&u, params, &[r(3), r(-2)], &q, cap).unwrap().is_zero());

        let mut rng = rng_for(104, 0);
        for params in [
            DiagramParams { m: 2, n: 1, k: 1, r: 1, s: 1 },
            DiagramParams { m: 1, n: 1, k: 1, r: 2, s: 1 },
            DiagramParams { m: 2, n: 1, k: 2, r: 2, s: 1 },
        ] {
            for _ in 0..20 {
                let p: PolyMap<Rational> = random_poly_map(&mut rng, 2, 2, params.m);
                let q: HomPoly<Rational> = random_hom_poly(&mut rng, 2, params.k);
                let x: Vec<Rational> = random_vector(&mut rng, 2);
                assert!(check_diagram(&p, params, &x, &q, cap).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn inverse_identity() {
        let cap = SizeCap::default();
        let id = PolyMap::<Rational>::identity(3).unwrap();
        let (a, b) = delta_of_inverse_check(&id, 2, cap).unwrap();
        assert!(a.is_zero() && b.is_zero());
        let diag = PolyMap::linear(&[vec![r(2), r(0)], vec![r(0), r(3)]]).unwrap();
        let (a, b) = delta_of_inverse_check(&diag, 2, cap).unwrap();
        assert!(a.is_zero() && b.is_zero());
        // explicit monomial rescaling: q(y1, y2) coefficient at (a, b) scales by 2^a 3^b
        let m = delta1k_matrix(&diag, 2, cap).unwrap().matrix;
        assert_eq!(m, Matrix::diagonal(&[r(4), r(6), r(9)]));

        let mut rng = rng_for(105, 0);
        for _ in 0..5 {
            let u = PolyMap::from_matrix(&random_invertible::<Rational, _>(&mut rng, 3)).unwrap();
            let (a, b) = delta_of_inverse_check(&u, 2, cap).unwrap();
            assert!(a.is_zero() && b.is_zero());
        }
        let singular = PolyMap::linear(&[vec![r(1), r(2)], vec![r(2), r(4)]]).unwrap();
        assert_eq!(delta_of_inverse_check(&singular, 2, cap), Err(Error::Singular));
    }

    #[test]
    fn injectivity_witness_examples() {
        let p1 = PolyMap::new(vec![HomPoly::monomial(mi(&[3]), r(1)).unwrap()]).unwrap();
        assert_eq!(injectivity_witness(&p1, &p1, 1, 1, 100).unwrap(), Witness::Equal);
        let p2 = p1.scale(&r(2));
        match injectivity_witness(&p1, &p2, 1, 1, 100).unwrap() {
            Witness::Separated { q, x, values } => {
                assert_eq!(x, vec![r(1)]);
                assert_eq!(q, HomPoly::linear_form(&[r(1)]).unwrap());
                assert_eq!(values, (r(1), r(2)));
            }
            Witness::Equal => panic!("maps differ"),
        }
        assert!(matches!(injectivity_witness(&p1, &p2, 2, 1, 100), Err(Error::Precondition(_))));

        let mut rng = rng_for(106, 0);
        for _ in 0..10 {
            let a: PolyMap<Rational> = random_poly_map(&mut rng, 2, 2, 2);
            let b: PolyMap<Rational> = random_poly_map(&mut rng, 2, 2, 2);
            let Witness::Separated { q, x, values } = injectivity_witness(&a, &b, 1, 3, 10_000).unwrap() else {
                panic!("random maps differ");
            };
            assert_ne!(values.0, values.1);
            assert_eq!(delta_apply(&a, 1, 3, &q).unwrap().eval(&x).unwrap(), values.0);
            assert_eq!(delta_apply(&b, 1, 3, &q).unwrap().eval(&x).unwrap(), values.1);
        }
    }

    #[test]
    fn additivity_only_for_k_n_one() {
        assert!(find_nonadditivity_witness::<Rational>(2, 2, 2, 1, 1).unwrap().is_none());
        for (k, n) in [(1, 2), (2, 1), (2, 2), (3, 1), (1, 3)] {
            let w = find_nonadditivity_witness::<Rational>(2, 2, 2, n, k).unwrap().expect("witness");
            let recomputed = additivity_defect_value(&w.p, &w.q_map, n, k, &w.q, &w.x).unwrap();
            assert_eq!(recomputed, w.defect);
            assert!(!w.defect.is_zero());
        }
    }
}

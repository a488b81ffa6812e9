//! Dense homogeneous polynomials and polynomial maps.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{check_dim, Error, Result};
use crate::linalg::Matrix;
use crate::multi_index::{basis_len, enumerate_multi_indices, MultiIndex};
use crate::scalar::Scalar;

/// A scalar `m`-homogeneous polynomial in `d` variables.
///
/// Coefficients are stored densely in the canonical monomial order of
/// [`enumerate_multi_indices`]. Degree zero (a constant) is representable because
/// products are built up from it; user-facing constructors accept it as well.
#[derive(Clone, Debug, PartialEq)]
pub struct HomPoly<S> {
    dim: usize,
    degree: u32,
    coeffs: Vec<S>,
}

impl<S: Scalar> HomPoly<S> {
    pub fn zero(dim: usize, degree: u32) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension("polynomial needs at least one variable".into()));
        }
        Ok(HomPoly { dim, degree, coeffs: vec![S::zero(); basis_len(dim, degree)] })
    }

    pub fn from_coeffs(dim: usize, degree: u32, coeffs: Vec<S>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension("polynomial needs at least one variable".into()));
        }
        check_dim(basis_len(dim, degree), coeffs.len())?;
        Ok(HomPoly { dim, degree, coeffs })
    }

    /// Builds from `(alpha, value)` pairs; repeated indices are summed.
    pub fn from_terms(
        dim: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (MultiIndex, S)>,
    ) -> Result<Self> {
        let mut p = Self::zero(dim, degree)?;
        for (alpha, value) in terms {
            check_dim(dim, alpha.dim())?;
            if alpha.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: alpha.degree() });
            }
            let slot = &mut p.coeffs[alpha.rank()];
            *slot = slot.clone() + value;
        }
        Ok(p)
    }

    pub fn constant(dim: usize, value: S) -> Result<Self> {
        Self::from_coeffs(dim, 0, vec![value])
    }

    pub fn monomial(alpha: MultiIndex, value: S) -> Result<Self> {
        let (dim, degree) = (alpha.dim(), alpha.degree());
        Self::from_terms(dim, degree, [(alpha, value)])
    }

    /// The linear form `x -> sum_i w_i x_i`.
    pub fn linear_form(weights: &[S]) -> Result<Self> {
        // degree-1 basis order is x_1, ..., x_d
        Self::from_coeffs(weights.len(), 1, weights.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Option<&S> {
        if alpha.dim() != self.dim || alpha.degree() != self.degree {
            return None;
        }
        self.coeffs.get(alpha.rank())
    }

    pub fn basis(&self) -> Vec<MultiIndex> {
        enumerate_multi_indices(self.dim, self.degree).expect("dim checked at construction")
    }

    /// Nonzero `(alpha, coefficient)` pairs in canonical order.
    pub fn terms(&self) -> Vec<(MultiIndex, S)> {
        self.basis()
            .into_iter()
            .zip(self.coeffs.iter())
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| (a, c.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: &S) -> Self {
        HomPoly {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(HomPoly {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        check_dim(self.dim, other.dim)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    /// Vector of all monomials `x^alpha` in canonical order.
    pub fn monomials_at(&self, x: &[S]) -> Result<Vec<S>> {
        monomial_values(self.dim, self.degree, x)
    }

    pub fn eval(&self, x: &[S]) -> Result<S> {
        let mons = self.monomials_at(x)?;
        Ok(self
            .coeffs
            .iter()
            .zip(mons)
            .filter(|(c, _)| !c.is_zero())
            .fold(S::zero(), |acc, (c, v)| acc + c.clone() * v))
    }

    /// Value and gradient at `x`.
    pub fn eval_with_gradient(&self, x: &[S]) -> Result<(S, Vec<S>)> {
        check_dim(self.dim, x.len())?;
        let pows = power_table(x, self.degree);
        let mut value = S::zero();
        let mut grad = vec![S::zero(); self.dim];
        for (alpha, c) in self.basis().iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let e = alpha.exponents();
            let mut mono = c.clone();
            for (i, &a) in e.iter().enumerate() {
                mono = mono * pows[i][a as usize].clone();
            }
            value = value + mono;
            for i in 0..self.dim {
                if e[i] == 0 {
                    continue;
                }
                let mut t = c.clone() * S::from_i64(i64::from(e[i]));
                for (j, &a) in e.iter().enumerate() {
                    let p = if j == i { a - 1 } else { a };
                    t = t * pows[j][p as usize].clone();
                }
                grad[i] = grad[i].clone() + t;
            }
        }
        Ok((value, grad))
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let degree = self.degree + other.degree;
        let mut out = Self::zero(self.dim, degree)?;
        let lhs = self.terms();
        let rhs = other.terms();
        for (a, ca) in &lhs {
            for (b, cb) in &rhs {
                let slot = &mut out.coeffs[a.add(b).rank()];
                *slot = slot.clone() + ca.clone() * cb.clone();
            }
        }
        Ok(out)
    }

    /// `p^n` for `n >= 1`.
    pub fn power(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "power exponent must be at least 1; a degree-0 constant is not a valid result".into(),
            ));
        }
        Ok(self.power_unchecked(n))
    }

    /// `p^n` including `n = 0` (the constant one).
    pub(crate) fn power_unchecked(&self, mut n: u32) -> Self {
        let mut acc = Self::constant(self.dim, S::one()).expect("dim >= 1");
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.multiply(&base).expect("same dim");
            }
            n >>= 1;
            if n > 0 {
                base = base.multiply(&base).expect("same dim");
            }
        }
        acc
    }

    /// Reinterprets the variables: `x_i` of `self` becomes `x_{offset + i}` in `new_dim`
    /// variables.
    pub fn embed(&self, new_dim: usize, offset: usize) -> Result<Self> {
        if offset + self.dim > new_dim {
            return Err(Error::DimensionMismatch { expected: new_dim, found: offset + self.dim });
        }
        let terms = self.terms().into_iter().map(|(a, c)| {
            let mut e = vec![0u32; new_dim];
            e[offset..offset + self.dim].copy_from_slice(a.exponents());
            (MultiIndex::new(e), c)
        });
        Self::from_terms(new_dim, self.degree, terms)
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> HomPoly<T> {
        HomPoly { dim: self.dim, degree: self.degree, coeffs: self.coeffs.iter().map(f).collect() }
    }
}

fn power_table<S: Scalar>(x: &[S], degree: u32) -> Vec<Vec<S>> {
    x.iter()
        .map(|xi| {
            let mut row = Vec::with_capacity(degree as usize + 1);
            let mut p = S::one();
            row.push(p.clone());
            for _ in 0..degree {
                p = p * xi.clone();
                row.push(p.clone());
            }
            row
        })
        .collect()
}

/// `(x^alpha)` over the canonical basis of degree `degree`.
pub fn monomial_values<S: Scalar>(dim: usize, degree: u32, x: &[S]) -> Result<Vec<S>> {
    check_dim(dim, x.len())?;
    let pows = power_table(x, degree);
    Ok(enumerate_multi_indices(dim, degree)?
        .iter()
        .map(|alpha| {
            alpha
                .exponents()
                .iter()
                .enumerate()
                .fold(S::one(), |acc, (i, &a)| acc * pows[i][a as usize].clone())
        })
        .collect())
}

/// A vector-valued `m`-homogeneous polynomial map `R^d -> R^e`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMap<S> {
    dim: usize,
    degree: u32,
    components: Vec<HomPoly<S>>,
}

impl<S: Scalar> PolyMap<S> {
    pub fn new(components: Vec<HomPoly<S>>) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::InvalidDimension("polynomial map needs at least one component".into()))?;
        let (dim, degree) = (first.dim(), first.degree());
        for c in &components {
            check_dim(dim, c.dim())?;
            if c.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: c.degree() });
            }
        }
        Ok(PolyMap { dim, degree, components })
    }

    pub fn zero(dim: usize, codim: usize, degree: u32) -> Result<Self> {
        Self::new((0..codim).map(|_| HomPoly::zero(dim, degree)).collect::<Result<_>>()?)
    }

    /// Linear map `x -> A x` from the rows of `A` (`e` rows of length `d`).
    pub fn linear(rows: &[Vec<S>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| HomPoly::linear_form(r)).collect::<Result<_>>()?)
    }

    pub fn from_matrix(a: &Matrix<S>) -> Result<Self> {
        let rows: Vec<Vec<S>> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
        Self::linear(&rows)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::from_matrix(&Matrix::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn codim(&self) -> usize {
        self.components.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn components(&self) -> &[HomPoly<S>] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &HomPoly<S> {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(HomPoly::is_zero)
    }

    pub fn eval_map(&self, x: &[S]) -> Result<Vec<S>> {
        let mons = monomial_values(self.dim, self.degree, x)?;
        Ok(self
            .components
            .iter()
            .map(|c| {
                c.coeffs()
                    .iter()
                    .zip(&mons)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(S::zero(), |acc, (a, v)| acc + a.clone() * v.clone())
            })
            .collect())
    }

    /// `self o inner`.
    pub fn compose(&self, inner: &PolyMap<S>) -> Result<PolyMap<S>> {
        check_dim(self.dim, inner.codim())?;
        let cache = PowerCache::new(inner, self.degree);
        PolyMap::new(self.components.iter().map(|c| cache.compose(c)).collect::<Result<_>>()?)
    }

    pub fn scale(&self, s: &S) -> Self {
        PolyMap {
            dim: self.dim,
            degree: self.degree,
            components: self.components.iter().map(|c| c.scale(s)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.codim(), other.codim())?;
        PolyMap::new(
            self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect::<Result<_>>()?,
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    /// The `e x C(d+m-1, m)` matrix whose row `i` holds the coefficients of component `i`.
    pub fn coefficient_matrix(&self) -> Matrix<S> {
        let cols = basis_len(self.dim, self.degree);
        let data = self.components.iter().flat_map(|c| c.coeffs().iter().cloned()).collect();
        Matrix::from_vec(self.codim(), cols, data).expect("components share a basis")
    }

    /// Inverse of [`coefficient_matrix`](Self::coefficient_matrix).
    pub fn from_coefficient_matrix(dim: usize, degree: u32, m: &Matrix<S>) -> Result<Self> {
        PolyMap::new(
            (0..m.rows())
                .map(|i| HomPoly::from_coeffs(dim, degree, m.row(i).to_vec()))
                .collect::<Result<_>>()?,
        )
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> PolyMap<T> {
        PolyMap {
            dim: self.dim,
            degree: self.degree,
            components: self.components.iter().map(|c| c.map_coeffs(&f)).collect(),
        }
    }
}

/// Powers `P_j^t`, `t = 0..=max`, of the components of a map, shared across the
/// monomials of an outer polynomial.
struct PowerCache<S> {
    dim: usize,
    inner_degree: u32,
    powers: Vec<Vec<HomPoly<S>>>,
}

impl<S: Scalar> PowerCache<S> {
    fn new(map: &PolyMap<S>, max: u32) -> Self {
        let powers = map
            .components()
            .iter()
            .map(|c| {
                let mut row = Vec::with_capacity(max as usize + 1);
                let mut acc = HomPoly::constant(map.dim(), S::one()).expect("dim >= 1");
                row.push(acc.clone());
                for _ in 0..max {
                    acc = acc.multiply(c).expect("same dim");
                    row.push(acc.clone());
                }
                row
            })
            .collect();
        PowerCache { dim: map.dim(), inner_degree: map.degree(), powers }
    }

    fn compose(&self, q: &HomPoly<S>) -> Result<HomPoly<S>> {
        check_dim(q.dim(), self.powers.len())?;
        let mut out = HomPoly::zero(self.dim, self.inner_degree * q.degree())?;
        for (beta, c) in q.terms() {
            let mut term = HomPoly::constant(self.dim, c)?;
            for (j, &b) in beta.exponents().iter().enumerate() {
                if b > 0 {
                    term = term.multiply(&self.powers[j][b as usize])?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }
}

/// `x -> q(P(x))`, a polynomial of degree `deg(q) * deg(P)`.
pub fn compose_scalar<S: Scalar>(q: &HomPoly<S>, p: &PolyMap<S>) -> Result<HomPoly<S>> {
    check_dim(q.dim(), p.codim())?;
    PowerCache::new(p, q.degree()).compose(q)
}

/// `P^beta(x) = prod_j P_j(x)^{beta_j}` as a polynomial in `x`.
pub fn map_power<S: Scalar>(p: &PolyMap<S>, beta: &MultiIndex) -> Result<HomPoly<S>> {
    check_dim(p.codim(), beta.dim())?;
    let mut acc = HomPoly::constant(p.dim(), S::one())?;
    for (j, &b) in beta.exponents().iter().enumerate() {
        if b > 0 {
            acc = acc.multiply(&p.component(j).power_unchecked(b))?;
        }
    }
    Ok(acc)
}

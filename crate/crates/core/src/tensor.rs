//! Symmetric tensor powers, linearization of polynomials, and the matrix form of
//! `Delta^1_k P` as the transpose of the linearized map `x -> (P(x))^{(x) k}`.
//!
//! Symmetric tensors are stored in coordinates over the monomial basis. Two
//! conventions are supported:
//!
//! * [`TensorConvention::Monomial`]: `coords(x^{(x) k})[alpha] = x^alpha`. The dual
//!   pairing is the dot product and a polynomial's linearization has exactly its
//!   monomial coefficients as entries, so the relabeling maps `L` are identities.
//! * [`TensorConvention::Symmetrized`]: coordinates over the symmetrized basis
//!   tensors, `coords[alpha] = (k! / alpha!) x^alpha`. The relabeling maps become
//!   diagonal with entries `alpha! / k!`.

use alloc::vec;
use alloc::vec::Vec;

use crate::adjoint::SizeCap;
use crate::error::{check_dim, Result};
use crate::linalg::Matrix;
use crate::multi_index::{basis_len, enumerate_multi_indices, multinomial, MultiIndex};
use crate::poly::{compose_scalar, map_power, monomial_values, HomPoly, PolyMap};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TensorConvention {
    #[default]
    Monomial,
    Symmetrized,
}

impl TensorConvention {
    fn weight<S: Scalar>(self, order: u32, alpha: &MultiIndex) -> Result<S> {
        Ok(match self {
            TensorConvention::Monomial => S::one(),
            TensorConvention::Symmetrized => S::from_u128(multinomial(order, alpha)?),
        })
    }

    fn weights<S: Scalar>(self, dim: usize, order: u32) -> Result<Vec<S>> {
        enumerate_multi_indices(dim, order)?.iter().map(|a| self.weight(order, a)).collect()
    }
}

/// An element of the `k`-fold symmetric tensor power of `R^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTensor<S> {
    pub base_dim: usize,
    pub order: u32,
    pub convention: TensorConvention,
    pub coords: Vec<S>,
}

impl<S: Scalar> SymTensor<S> {
    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.coords.len(), other.coords.len())?;
        Ok(SymTensor {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.clone() + b.clone()).collect(),
            ..self.clone()
        })
    }
}

/// A matrix together with the multi-index labels of its row and column bases.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap<S> {
    pub matrix: Matrix<S>,
    pub row_basis: Vec<MultiIndex>,
    pub col_basis: Vec<MultiIndex>,
}

impl<S: Scalar> LinearMap<S> {
    pub fn apply(&self, v: &[S]) -> Result<Vec<S>> {
        self.matrix.apply(v)
    }

    pub fn transpose(&self) -> Self {
        LinearMap {
            matrix: self.matrix.transpose(),
            row_basis: self.col_basis.clone(),
            col_basis: self.row_basis.clone(),
        }
    }
}

/// `x -> x^{(x) k}` in the default monomial convention.
pub fn delta_k_embed<S: Scalar>(x: &[S], k: u32) -> Result<SymTensor<S>> {
    delta_k_embed_with(x, k, TensorConvention::Monomial)
}

pub fn delta_k_embed_with<S: Scalar>(x: &[S], k: u32, convention: TensorConvention) -> Result<SymTensor<S>> {
    let mons = monomial_values(x.len(), k, x)?;
    let weights: Vec<S> = convention.weights(x.len(), k)?;
    Ok(SymTensor {
        base_dim: x.len(),
        order: k,
        convention,
        coords: mons.into_iter().zip(weights).map(|(m, w)| m * w).collect(),
    })
}

/// The covector `q_L` with `q_L(x^{(x) k}) = q(x)`.
pub fn linearize<S: Scalar>(q: &HomPoly<S>) -> Result<LinearMap<S>> {
    linearize_with(q, TensorConvention::Monomial)
}

pub fn linearize_with<S: Scalar>(q: &HomPoly<S>, convention: TensorConvention) -> Result<LinearMap<S>> {
    let weights: Vec<S> = convention.weights(q.dim(), q.degree())?;
    let entries: Vec<S> = q.coeffs().iter().zip(weights).map(|(c, w)| c.clone() / w).collect();
    Ok(LinearMap {
        matrix: Matrix::from_vec(1, entries.len(), entries)?,
        row_basis: vec![MultiIndex::new(Vec::new())],
        col_basis: q.basis(),
    })
}

pub fn pairing<S: Scalar>(covector: &LinearMap<S>, t: &SymTensor<S>) -> Result<S> {
    check_dim(1, covector.matrix.rows())?;
    Ok(covector.apply(&t.coords)?.remove(0))
}

/// The relabeling `L_k` on `k`-homogeneous polynomials over `R^d`: coefficient vector
/// to covector coordinates.
pub fn relabel_matrix<S: Scalar>(dim: usize, k: u32, convention: TensorConvention) -> Result<LinearMap<S>> {
    let inv: Vec<S> = convention.weights::<S>(dim, k)?.into_iter().map(|w| S::one() / w).collect();
    let basis = enumerate_multi_indices(dim, k)?;
    Ok(LinearMap { matrix: Matrix::diagonal(&inv), row_basis: basis.clone(), col_basis: basis })
}

/// Matrix of the linearization of `x -> P(x)^{(x) k}`, from the `mk`-th symmetric
/// power of `R^d` to the `k`-th symmetric power of `R^e`.
pub fn linearization_matrix<S: Scalar>(p: &PolyMap<S>, k: u32, cap: SizeCap) -> Result<LinearMap<S>> {
    linearization_matrix_with(p, k, TensorConvention::Monomial, cap)
}

pub fn linearization_matrix_with<S: Scalar>(
    p: &PolyMap<S>,
    k: u32,
    convention: TensorConvention,
    cap: SizeCap,
) -> Result<LinearMap<S>> {
    let mk = p.degree() * k;
    cap.check("symmetric power of the codomain", basis_len(p.codim(), k))?;
    cap.check("symmetric power of the domain", basis_len(p.dim(), mk))?;
    let rows = enumerate_multi_indices(p.codim(), k)?;
    let cols = enumerate_multi_indices(p.dim(), mk)?;
    let col_weights: Vec<S> = convention.weights(p.dim(), mk)?;
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (i, beta) in rows.iter().enumerate() {
        // coordinate beta of P(x)^{(x) k} is w(beta) P(x)^beta
        let expanded = map_power(p, beta)?;
        let w: S = convention.weight(k, beta)?;
        for (j, c) in expanded.coeffs().iter().enumerate() {
            if !c.is_zero() {
                m.set(i, j, w.clone() * c.clone() / col_weights[j].clone());
            }
        }
    }
    Ok(LinearMap { matrix: m, row_basis: rows, col_basis: cols })
}

/// Matrix of the linear map `q -> q o P` from coefficients of `k`-homogeneous
/// polynomials on `R^e` to coefficients of `mk`-homogeneous polynomials on `R^d`.
pub fn delta1k_matrix<S: Scalar>(p: &PolyMap<S>, k: u32, cap: SizeCap) -> Result<LinearMap<S>> {
    let mk = p.degree() * k;
    cap.check("coefficient space of the polynomials q", basis_len(p.codim(), k))?;
    cap.check("coefficient space of the image polynomials", basis_len(p.dim(), mk))?;
    let cols = enumerate_multi_indices(p.codim(), k)?;
    let rows = enumerate_multi_indices(p.dim(), mk)?;
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (j, beta) in cols.iter().enumerate() {
        let q = HomPoly::monomial(beta.clone(), S::one())?;
        let image = compose_scalar(&q, p)?;
        for (i, c) in image.coeffs().iter().enumerate() {
            if !c.is_zero() {
                m.set(i, j, c.clone());
            }
        }
    }
    Ok(LinearMap { matrix: m, row_basis: rows, col_basis: cols })
}

/// `L^E_{mk} . Delta^1_k P . (L^F_k)^{-1} - (linearization matrix)^T`, zero exactly when
/// the transpose of the linearized map `x -> P(x)^{(x) k}` is `Delta^1_k P` read in
/// covector coordinates.
pub fn check_linearization_lemma<S: Scalar>(
    p: &PolyMap<S>,
    k: u32,
    convention: TensorConvention,
    cap: SizeCap,
) -> Result<Matrix<S>> {
    let delta = delta1k_matrix(p, k, cap)?;
    let lin = linearization_matrix_with(p, k, convention, cap)?;
    let l_e = relabel_matrix::<S>(p.dim(), p.degree() * k, convention)?;
    let l_f_inv = relabel_matrix::<S>(p.codim(), k, convention)?.matrix.inverse()?;
    let lhs = l_e.matrix.mul(&delta.matrix)?.mul(&l_f_inv)?;
    lhs.sub(&lin.matrix.transpose())
}

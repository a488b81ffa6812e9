//! Finite-rank representations `P(x) = sum_j P_j(x) b_j` and the explicit expansion of
//! `Delta^n_k P` as a finite sum of products of polynomials and linear functionals.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::adjoint::{delta_apply, SizeCap};
use crate::error::{check_dim, check_positive, Error, Result};
use crate::multi_index::{basis_len, binomial, enumerate_multi_indices, factorial, MultiIndex};
use crate::poly::{HomPoly, PolyMap};
use crate::sampling::{random_hom_poly, random_vector, rng_for};
use crate::scalar::{sum, Scalar};
use crate::symform::polarize;

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteRankRep<S> {
    pub dim: usize,
    pub codim: usize,
    pub degree: u32,
    /// `(P_j, b_j)`.
    pub terms: Vec<(HomPoly<S>, Vec<S>)>,
}

impl<S: Scalar> FiniteRankRep<S> {
    pub fn rank(&self) -> usize {
        self.terms.len()
    }

    pub fn eval(&self, x: &[S]) -> Result<Vec<S>> {
        check_dim(self.dim, x.len())?;
        let mut out = alloc::vec![S::zero(); self.codim];
        for (p, b) in &self.terms {
            let v = p.eval(x)?;
            for (o, bi) in out.iter_mut().zip(b) {
                *o = o.clone() + v.clone() * bi.clone();
            }
        }
        Ok(out)
    }

    pub fn to_map(&self) -> Result<PolyMap<S>> {
        let mut out = PolyMap::zero(self.dim, self.codim, self.degree)?;
        for (p, b) in &self.terms {
            out = out.add(&PolyMap::new(b.iter().map(|bi| p.scale(bi)).collect())?)?;
        }
        Ok(out)
    }
}

/// Factors the `e x N` coefficient matrix `C` as `C = B R`: the `b_j` are the pivot
/// columns of `C` (first independent columns in monomial order) and `P_j` is row `j`
/// of the reduced echelon form.
pub fn finite_rank_rep<S: Scalar>(p: &PolyMap<S>) -> FiniteRankRep<S> {
    let c = p.coefficient_matrix();
    let (red, pivots) = c.rref();
    let terms = pivots
        .iter()
        .enumerate()
        .map(|(j, &col)| {
            let poly = HomPoly::from_coeffs(p.dim(), p.degree(), red.row(j).to_vec()).expect("row length is N");
            (poly, c.column(col))
        })
        .collect();
    FiniteRankRep { dim: p.dim(), codim: p.codim(), degree: p.degree(), terms }
}

/// `q^(b_1, ..., b_1, ..., b_l, ..., b_l)` with `b_i` repeated `k_i` times, where `q^` is
/// the polarization of `q`.
pub fn psi_functional<S: Scalar>(args: &[(&[S], u32)], q: &HomPoly<S>) -> Result<S> {
    let total: u32 = args.iter().map(|(_, ki)| ki).sum();
    if total != q.degree() {
        return Err(Error::DegreeMismatch { expected: q.degree(), found: total });
    }
    let mut flat: Vec<&[S]> = Vec::with_capacity(total as usize);
    for (b, ki) in args {
        check_dim(q.dim(), b.len())?;
        flat.extend(core::iter::repeat_n(*b, *ki as usize));
    }
    polarize(q)?.apply(&flat)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionTerm<S> {
    pub theta: S,
    /// `n!(k!)^n / prod alpha! * prod_kappa (1/prod kappa_i!)^alpha_kappa`, unevaluated.
    pub theta_factored: String,
    /// `prod_kappa prod_i P_i^{kappa_i alpha_kappa}`.
    pub poly: HomPoly<S>,
    /// `(kappa, alpha_kappa)` for the compositions with nonzero exponent.
    pub psi: Vec<(MultiIndex, u32)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteTypeExpansion<S> {
    pub n: u32,
    pub k: u32,
    pub dim: usize,
    pub codim: usize,
    pub degree: u32,
    pub basis: Vec<Vec<S>>,
    pub terms: Vec<ExpansionTerm<S>>,
}

impl<S: Scalar> FiniteTypeExpansion<S> {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `Psi_kappa(q)` for one composition.
    pub fn psi(&self, kappa: &MultiIndex, q: &HomPoly<S>) -> Result<S> {
        let args: Vec<(&[S], u32)> =
            self.basis.iter().zip(kappa.exponents()).map(|(b, &ki)| (b.as_slice(), ki)).collect();
        psi_functional(&args, q)
    }

    /// `sum Theta * P_(alpha)(x) * prod Psi_kappa(q)^alpha_kappa`.
    pub fn eval(&self, q: &HomPoly<S>, x: &[S]) -> Result<S> {
        check_dim(self.codim, q.dim())?;
        check_dim(self.dim, x.len())?;
        if q.degree() != self.k {
            return Err(Error::DegreeMismatch { expected: self.k, found: q.degree() });
        }
        if self.basis.is_empty() {
            return Ok(S::zero());
        }
        let compositions = enumerate_multi_indices(self.rank(), self.k)?;
        let psi_values: Vec<S> = compositions.iter().map(|c| self.psi(c, q)).collect::<Result<_>>()?;
        let terms = self.terms.iter().map(|t| -> Result<S> {
            let mut v = t.theta.clone() * t.poly.eval(x)?;
            for (kappa, a) in &t.psi {
                v = v * psi_values[kappa.rank()].powu(*a);
            }
            Ok(v)
        });
        Ok(sum(terms.collect::<Result<Vec<_>>>()?))
    }
}

/// Number of terms: `C(C(k+l-1, l-1) + n - 1, n)`.
pub fn expansion_term_count(l: usize, n: u32, k: u32) -> Option<u128> {
    if l == 0 {
        return Some(0);
    }
    let comps = binomial(k as u64 + l as u64 - 1, l as u64 - 1)?;
    binomial(u64::try_from(comps).ok()? + u64::from(n) - 1, u64::from(n))
}

/// Compositions `kappa` of `k` into `l` parts and exponent vectors `alpha` over them with
/// `|alpha| = n`, both in descending lexicographic order.
pub fn expand_adjoint_finite_type<S: Scalar>(
    rep: &FiniteRankRep<S>,
    n: u32,
    k: u32,
    cap: SizeCap,
) -> Result<FiniteTypeExpansion<S>> {
    check_positive("n", n)?;
    check_positive("k", k)?;
    let l = rep.rank();
    let basis: Vec<Vec<S>> = rep.terms.iter().map(|(_, b)| b.clone()).collect();
    let mut out = FiniteTypeExpansion {
        n,
        k,
        dim: rep.dim,
        codim: rep.codim,
        degree: rep.degree,
        basis,
        terms: Vec::new(),
    };
    if l == 0 {
        return Ok(out);
    }
    let count = expansion_term_count(l, n, k).ok_or(Error::Overflow("expansion term count"))?;
    cap.check("finite-type expansion terms", usize::try_from(count).unwrap_or(usize::MAX))?;
    cap.check("image polynomial space", basis_len(rep.dim, rep.degree * n * k))?;

    let fact = |v: u32| factorial(v).ok_or(Error::Overflow("factorial")).map(S::from_u128);
    let compositions = enumerate_multi_indices(l, k)?;
    let kappa_weight: Vec<S> = compositions
        .iter()
        .map(|c| -> Result<S> {
            let mut w = S::one();
            for &ki in c.exponents() {
                w = w * fact(ki)?;
            }
            Ok(S::one() / w)
        })
        .collect::<Result<_>>()?;
    let base = fact(n)? * fact(k)?.powu(n);

    for alpha in enumerate_multi_indices(compositions.len(), n)? {
        let mut theta = base.clone();
        let mut denom = String::new();
        let mut kfactor = String::new();
        let mut exps = alloc::vec![0u32; l];
        let mut psi = Vec::new();
        for ((c, w), &a) in compositions.iter().zip(&kappa_weight).zip(alpha.exponents()) {
            if a == 0 {
                continue;
            }
            theta = theta / fact(a)? * w.powu(a);
            for (e, &ki) in exps.iter_mut().zip(c.exponents()) {
                *e += ki * a;
            }
            psi.push((c.clone(), a));
            denom.push_str(&format!("{a}!*"));
            let kf: Vec<String> = c.exponents().iter().map(|ki| format!("{ki}!")).collect();
            kfactor.push_str(&format!(" * (1/({}))^{a}", kf.join("*")));
        }
        denom.pop();
        let mut poly = HomPoly::constant(rep.dim, S::one())?;
        for ((pj, _), &e) in rep.terms.iter().zip(&exps) {
            if e > 0 {
                poly = poly.multiply(&pj.power(e)?)?;
            }
        }
        out.terms.push(ExpansionTerm {
            theta,
            theta_factored: format!("{n}!*({k}!)^{n}/({denom}){kfactor}"),
            poly,
            psi,
        });
    }
    Ok(out)
}

/// Largest `|expansion(q)(x) - Delta^n_k P(q)(x)| / max(1, |Delta^n_k P(q)(x)|)` over
/// `trials` seeded random `(q, x)`.
pub fn reconstruct_and_compare<S: Scalar>(
    exp: &FiniteTypeExpansion<S>,
    p: &PolyMap<S>,
    trials: usize,
    seed: u64,
) -> Result<S> {
    check_dim(exp.dim, p.dim())?;
    check_dim(exp.codim, p.codim())?;
    if exp.degree != p.degree() {
        return Err(Error::DegreeMismatch { expected: exp.degree, found: p.degree() });
    }
    let mut rng = rng_for(seed, 0);
    let mut worst = S::zero();
    for _ in 0..trials {
        let q: HomPoly<S> = random_hom_poly(&mut rng, p.codim(), exp.k);
        let x: Vec<S> = random_vector(&mut rng, p.dim());
        let direct = delta_apply(p, exp.n, exp.k, &q)?.eval(&x)?;
        let scale = if direct.abs().to_f64() > 1.0 { direct.abs() } else { S::one() };
        let diff = (exp.eval(&q, &x)? - direct).abs() / scale;
        if diff.to_f64() > worst.to_f64() || (worst.is_zero() && !diff.is_zero()) {
            worst = diff;
        }
    }
    Ok(worst)
}

//! Symmetric multilinear forms and polarization.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{check_dim, Error, Result};
use crate::multi_index::{binomial, enumerate_multi_indices, multinomial, MultiIndex};
use crate::poly::{HomPoly, PolyMap};
use crate::scalar::Scalar;

/// A symmetric `m`-linear form on `R^d`.
///
/// Entries are keyed by sorted index tuples `i_1 <= ... <= i_m`, stored as the
/// multi-index counting each coordinate, so symmetry holds by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct SymForm<S> {
    dim: usize,
    arity: u32,
    entries: Vec<S>,
}

impl<S: Scalar> SymForm<S> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn entry(&self, alpha: &MultiIndex) -> Option<&S> {
        if alpha.dim() != self.dim || alpha.degree() != self.arity {
            return None;
        }
        self.entries.get(alpha.rank())
    }

    /// `f(x_1, ..., x_m)`.
    pub fn apply(&self, args: &[&[S]]) -> Result<S> {
        check_dim(self.arity as usize, args.len())?;
        for a in args {
            check_dim(self.dim, a.len())?;
        }
        if self.arity == 0 {
            return Ok(self.entries[0].clone());
        }
        // sum over all ordered index tuples; d^m terms
        let m = self.arity as usize;
        let mut tuple = vec![0usize; m];
        let mut total = S::zero();
        loop {
            let mut counts = vec![0u32; self.dim];
            let mut prod = S::one();
            for (t, &i) in tuple.iter().enumerate() {
                counts[i] += 1;
                prod = prod * args[t][i].clone();
            }
            if !prod.is_zero() {
                total = total + self.entries[MultiIndex::new(counts).rank()].clone() * prod;
            }
            let mut pos = 0;
            loop {
                if pos == m {
                    return Ok(total);
                }
                tuple[pos] += 1;
                if tuple[pos] < self.dim {
                    break;
                }
                tuple[pos] = 0;
                pos += 1;
            }
        }
    }

    /// The generating polynomial `x -> f(x, ..., x)`.
    pub fn diagonal(&self) -> Result<HomPoly<S>> {
        let coeffs = enumerate_multi_indices(self.dim, self.arity)?
            .iter()
            .zip(&self.entries)
            .map(|(alpha, e)| Ok(e.clone() * S::from_u128(multinomial(self.arity, alpha)?)))
            .collect::<Result<Vec<_>>>()?;
        HomPoly::from_coeffs(self.dim, self.arity, coeffs)
    }
}

/// The symmetric form generating `p`: `entry(alpha) = coeff(alpha) / multinomial(m, alpha)`.
pub fn polarize<S: Scalar>(p: &HomPoly<S>) -> Result<SymForm<S>> {
    let m = p.degree();
    let entries = p
        .basis()
        .iter()
        .zip(p.coeffs())
        .map(|(alpha, c)| Ok(c.clone() / S::from_u128(multinomial(m, alpha)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SymForm { dim: p.dim(), arity: m, entries })
}

/// The polynomial `W_R` on `R^d x R^d` with `R(x + y) = R(x) + R(y) + W_R(x, y)`.
///
/// Built from the polarization of each component as
/// `W_R(x, y) = sum_{j=1}^{m-1} C(m, j) R^(x^(j), y^(m-j))`, expanded monomial by
/// monomial: the coefficient of `x^gamma y^delta` collects
/// `C(m, j) * (j!/gamma!) * ((m-j)!/delta!) * entry(gamma + delta)`.
pub fn additivity_defect<S: Scalar>(r: &PolyMap<S>) -> Result<PolyMap<S>> {
    let d = r.dim();
    let m = r.degree();
    let forms = r.components().iter().map(polarize).collect::<Result<Vec<_>>>()?;
    let mut components = Vec::with_capacity(forms.len());
    for form in &forms {
        let mut terms = Vec::new();
        for j in 1..m {
            let cmj = binomial(u64::from(m), u64::from(j)).ok_or(Error::Overflow("binomial"))?;
            let xs = enumerate_multi_indices(d, j)?;
            let ys = enumerate_multi_indices(d, m - j)?;
            for gamma in &xs {
                let wg = multinomial(j, gamma)?;
                for delta in &ys {
                    let entry = form.entry(&gamma.add(delta)).expect("degree m").clone();
                    if entry.is_zero() {
                        continue;
                    }
                    let wd = multinomial(m - j, delta)?;
                    let weight = cmj
                        .checked_mul(wg)
                        .and_then(|v| v.checked_mul(wd))
                        .ok_or(Error::Overflow("additivity defect weight"))?;
                    terms.push((gamma.concat(delta), entry * S::from_u128(weight)));
                }
            }
        }
        components.push(HomPoly::from_terms(2 * d, m, terms)?);
    }
    PolyMap::new(components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_hom_poly, random_poly_map, random_vector, rng_for};
    use crate::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    /// Alternating-sign polarization:
    /// `f(x_1..x_m) = 1/(2^m m!) sum_eps eps_1...eps_m p(sum eps_i x_i)`.
    fn sign_sum_oracle(p: &HomPoly<Rational>, args: &[Vec<Rational>]) -> Rational {
        let m = args.len();
        let d = p.dim();
        let mut total = r(0);
        for mask in 0u32..(1 << m) {
            let mut point = vec![r(0); d];
            let mut sign = r(1);
            for (t, a) in args.iter().enumerate() {
                let eps = if mask & (1 << t) != 0 { r(-1) } else { r(1) };
                sign *= eps.clone();
                for i in 0..d {
                    point[i] = point[i].clone() + eps.clone() * a[i].clone();
                }
            }
            total += sign * p.eval(&point).unwrap();
        }
        let fact: i64 = (1..=m as i64).product();
        total / (r(1 << m) * r(fact))
    }

    #[test]
    fn square_polarizes_to_product() {
        let p = HomPoly::monomial(mi(&[2]), r(1)).unwrap();
        let f = polarize(&p).unwrap();
        assert_eq!(f.apply(&[&[r(3)], &[r(5)]]).unwrap(), r(15));
    }

    #[test]
    fn cross_term_polarizes_to_half_sum() {
        let p = HomPoly::monomial(mi(&[1, 1]), r(1)).unwrap();
        let f = polarize(&p).unwrap();
        let a = [r(2), r(7)];
        let b = [r(3), r(-1)];
        let expected = (r(2) * r(-1) + r(7) * r(3)) / r(2);
        assert_eq!(f.apply(&[&a, &b]).unwrap(), expected);
        assert_eq!(sign_sum_oracle(&p, &[a.to_vec(), b.to_vec()]), expected);
    }

    #[test]
    fn linear_form_is_its_own_polarization() {
        let p = HomPoly::linear_form(&[r(2), r(-3)]).unwrap();
        let f = polarize(&p).unwrap();
        assert_eq!(f.apply(&[&[r(1), r(1)]]).unwrap(), r(-1));
    }

    #[test]
    fn routes_agree_and_diagonal_reconstructs() {
        let mut rng = rng_for(21, 0);
        for d in 1..=3 {
            for m in 1..=4 {
                let p: HomPoly<Rational> = random_hom_poly(&mut rng, d, m);
                let f = polarize(&p).unwrap();
                assert_eq!(f.diagonal().unwrap(), p);
                let args: Vec<Vec<Rational>> = (0..m).map(|_| random_vector(&mut rng, d)).collect();
                let refs: Vec<&[Rational]> = args.iter().map(Vec::as_slice).collect();
                assert_eq!(f.apply(&refs).unwrap(), sign_sum_oracle(&p, &args));
                let x = random_vector(&mut rng, d);
                let diag: Vec<&[Rational]> = (0..m).map(|_| x.as_slice()).collect();
                assert_eq!(f.apply(&diag).unwrap(), p.eval(&x).unwrap());
                // symmetric under swapping the first two arguments
                if m >= 2 {
                    let mut swapped = refs.clone();
                    swapped.swap(0, 1);
                    assert_eq!(f.apply(&swapped).unwrap(), f.apply(&refs).unwrap());
                }
            }
        }
    }

    #[test]
    fn additivity_defect_examples() {
        let sq = PolyMap::new(vec![HomPoly::monomial(mi(&[2]), r(1)).unwrap()]).unwrap();
        let w = additivity_defect(&sq).unwrap();
        assert_eq!(w.component(0), &HomPoly::monomial(mi(&[1, 1]), r(2)).unwrap());

        let cube = PolyMap::new(vec![HomPoly::monomial(mi(&[3]), r(1)).unwrap()]).unwrap();
        let w = additivity_defect(&cube).unwrap();
        let expected =
            HomPoly::from_terms(2, 3, [(mi(&[2, 1]), r(3)), (mi(&[1, 2]), r(3))]).unwrap();
        assert_eq!(w.component(0), &expected);

        let lin = PolyMap::linear(&[vec![r(1), r(2)], vec![r(0), r(5)]]).unwrap();
        assert!(additivity_defect(&lin).unwrap().is_zero());
    }

    // R(x+y) - R(x) - R(y) evaluated directly
    #[test]
    fn additivity_defect_matches_direct_evaluation() {
        let mut rng = rng_for(33, 0);
        for d in 1..=3 {
            for m in 1..=4 {
                let rm: PolyMap<Rational> = random_poly_map(&mut rng, d, 2, m);
                let w = additivity_defect(&rm).unwrap();
                assert_eq!(w.dim(), 2 * d);
                assert_eq!(w.is_zero(), m == 1);
                for _ in 0..5 {
                    let x: Vec<Rational> = random_vector(&mut rng, d);
                    let y: Vec<Rational> = random_vector(&mut rng, d);
                    let xy: Vec<_> = x.iter().zip(&y).map(|(a, b)| a.clone() + b.clone()).collect();
                    let lhs = rm.eval_map(&xy).unwrap();
                    let rx = rm.eval_map(&x).unwrap();
                    let ry = rm.eval_map(&y).unwrap();
                    let mut joint = x.clone();
                    joint.extend(y.iter().cloned());
                    let wv = w.eval_map(&joint).unwrap();
                    for i in 0..2 {
                        assert_eq!(lhs[i].clone() - rx[i].clone() - ry[i].clone(), wv[i]);
                    }
                }
            }
        }
    }
}

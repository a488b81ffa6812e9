//! Exponent tuples and the monomial basis of homogeneous polynomials.
//!
//! The canonical order on `{alpha : |alpha| = m}` is descending lexicographic, so for
//! two variables and degree two the basis reads `x^2, xy, y^2`. Every dense
//! coefficient vector in this crate is laid out in that order.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    /// `e_i` scaled by `m`, i.e. the exponent of `x_i^m`.
    pub fn pure(dim: usize, i: usize, m: u32) -> Self {
        let mut e = vec![0; dim];
        e[i] = m;
        MultiIndex(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.dim(), other.dim());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Concatenation `(self, other)`, the exponent on a product space.
    pub fn concat(&self, other: &MultiIndex) -> MultiIndex {
        let mut e = self.0.clone();
        e.extend_from_slice(&other.0);
        MultiIndex(e)
    }

    /// Position of this index in the canonical basis of its `(dim, degree)`.
    pub fn rank(&self) -> usize {
        let d = self.dim();
        let mut rank = 0;
        let mut rem = self.degree();
        for (i, &a) in self.0.iter().enumerate().take(d.saturating_sub(1)) {
            for t in (a + 1)..=rem {
                rank += basis_len(d - 1 - i, rem - t);
            }
            rem -= a;
        }
        rank
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

/// `C(d + m - 1, m)`: number of monomials of degree `m` in `d` variables.
pub fn basis_len(d: usize, m: u32) -> usize {
    if d == 0 {
        return usize::from(m == 0);
    }
    binomial((d - 1) as u64 + u64::from(m), u64::from(m))
        .and_then(|v| usize::try_from(v).ok())
        .unwrap_or(usize::MAX)
}

/// Binomial coefficient, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(acc)
}

pub fn enumerate_multi_indices(d: usize, m: u32) -> Result<Vec<MultiIndex>> {
    if d == 0 {
        return Err(Error::InvalidDimension("multi-indices need at least one variable".into()));
    }
    let mut out = Vec::with_capacity(basis_len(d, m));
    let mut current = vec![0u32; d];
    fill(&mut current, 0, m, &mut out);
    Ok(out)
}

fn fill(current: &mut [u32], pos: usize, rem: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 == current.len() {
        current[pos] = rem;
        out.push(MultiIndex(current.to_vec()));
        return;
    }
    for a in (0..=rem).rev() {
        current[pos] = a;
        fill(current, pos + 1, rem - a, out);
    }
    current[pos] = 0;
}

/// `m! / prod(alpha_i!)`.
pub fn multinomial(m: u32, alpha: &MultiIndex) -> Result<u128> {
    let deg = alpha.degree();
    if deg != m {
        return Err(Error::DegreeMismatch { expected: m, found: deg });
    }
    // product of binomials C(a_1 + ... + a_i, a_i)
    let mut acc: u128 = 1;
    let mut partial = 0u64;
    for &a in alpha.exponents() {
        partial += u64::from(a);
        let b = binomial(partial, u64::from(a)).ok_or(Error::Overflow("multinomial"))?;
        acc = acc.checked_mul(b).ok_or(Error::Overflow("multinomial"))?;
    }
    Ok(acc)
}

pub fn factorial(n: u32) -> Option<u128> {
    (1..=u128::from(n)).try_fold(1u128, |acc, i| acc.checked_mul(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn enumerates_in_descending_lex() {
        assert_eq!(enumerate_multi_indices(1, 3).unwrap(), vec![mi(&[3])]);
        assert_eq!(enumerate_multi_indices(2, 1).unwrap(), vec![mi(&[1, 0]), mi(&[0, 1])]);
        assert_eq!(
            enumerate_multi_indices(2, 2).unwrap(),
            vec![mi(&[2, 0]), mi(&[1, 1]), mi(&[0, 2])]
        );
        assert_eq!(enumerate_multi_indices(3, 0).unwrap(), vec![mi(&[0, 0, 0])]);
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(matches!(enumerate_multi_indices(0, 2), Err(Error::InvalidDimension(_))));
    }

    // stars-and-bars count against a brute-force filter of the full box [0, m]^d
    #[test]
    fn count_matches_stars_and_bars() {
        for d in 1..=4usize {
            for m in 0..=5u32 {
                let mut brute = 0usize;
                let total = (m as usize + 1).pow(d as u32);
                for code in 0..total {
                    let mut c = code;
                    let mut s = 0usize;
                    for _ in 0..d {
                        s += c % (m as usize + 1);
                        c /= m as usize + 1;
                    }
                    if s == m as usize {
                        brute += 1;
                    }
                }
                let list = enumerate_multi_indices(d, m).unwrap();
                assert_eq!(list.len(), brute);
                assert_eq!(basis_len(d, m), brute);
            }
        }
        assert_eq!(enumerate_multi_indices(3, 2).unwrap().len(), 6);
    }

    #[test]
    fn rank_inverts_enumeration() {
        for d in 1..=4 {
            for m in 0..=6 {
                for (i, a) in enumerate_multi_indices(d, m).unwrap().iter().enumerate() {
                    assert_eq!(a.rank(), i);
                }
            }
        }
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(2, &mi(&[1, 1])).unwrap(), 2);
        assert_eq!(multinomial(3, &mi(&[2, 1])).unwrap(), 3);
        assert_eq!(multinomial(4, &mi(&[2, 2])).unwrap(), 6);
        assert_eq!(multinomial(6, &mi(&[1, 2, 3])).unwrap(), 60);
        assert!(matches!(
            multinomial(3, &mi(&[1, 1])),
            Err(Error::DegreeMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn multinomials_sum_to_power() {
        // sum over |alpha| = m of m!/alpha! equals d^m
        for d in 1..=3usize {
            for m in 0..=6u32 {
                let s: u128 = enumerate_multi_indices(d, m)
                    .unwrap()
                    .iter()
                    .map(|a| multinomial(m, a).unwrap())
                    .sum();
                assert_eq!(s, (d as u128).pow(m));
            }
        }
    }
}

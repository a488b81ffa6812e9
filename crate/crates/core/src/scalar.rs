use core::fmt::Debug;
use core::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// Exact rational numbers backed by arbitrary-precision integers.
pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Rational,
    F64,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Rational => "rational",
            Backend::F64 => "f64",
        }
    }
}

/// A real scalar field usable as polynomial coefficients.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> {
    const BACKEND: Backend;

    fn from_i64(v: i64) -> Self;

    fn from_u128(v: u128) -> Self;

    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_f64(&self) -> f64;

    fn abs(&self) -> Self;

    /// Zero test used by elimination. Exact on rationals, relative to `1e-12` on floats.
    fn is_negligible(&self) -> bool;

    fn powu(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn is_exact() -> bool {
        Self::BACKEND == Backend::Rational
    }
}

impl Scalar for Rational {
    const BACKEND: Backend = Backend::Rational;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_u128(v: u128) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::F64;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_u128(v: u128) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        if *self < 0.0 {
            -*self
        } else {
            *self
        }
    }

    fn is_negligible(&self) -> bool {
        Scalar::abs(self) < 1e-12
    }
}

pub(crate) fn sum<S: Scalar>(items: impl IntoIterator<Item = S>) -> S {
    items.into_iter().fold(S::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_reduce() {
        let r = Rational::from_ratio(6, -4);
        assert_eq!(r, Rational::from_ratio(-3, 2));
        assert!(r.denom() > &BigInt::from(0));
    }

    #[test]
    fn powu_matches_repeated_product() {
        let r = Rational::from_ratio(2, 3);
        assert_eq!(r.powu(0), Rational::from_i64(1));
        assert_eq!(r.powu(5), Rational::from_ratio(32, 243));
        assert_eq!(3.0f64.powu(4), 81.0);
    }
}

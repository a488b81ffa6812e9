//! Seeded random instances with small rational coefficients.
//!
//! Every generator draws from a [`ChaCha8Rng`] addressed by `(seed, stream)`, so
//! independent instances can be produced in any order and still be reproducible.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::Matrix;
use crate::poly::{HomPoly, PolyMap};
use crate::scalar::Scalar;
use crate::multi_index::basis_len;

pub type InstanceRng = ChaCha8Rng;

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Mixes coordinates into a single stream id (splitmix64 finalizer).
pub fn stream_id(parts: &[u64]) -> u64 {
    let mut h: u64 = 0x9E37_79B9_7F4A_7C15;
    for &p in parts {
        h ^= p.wrapping_add(0x9E37_79B9_7F4A_7C15).wrapping_add(h << 6).wrapping_add(h >> 2);
        h = (h ^ (h >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        h = (h ^ (h >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        h ^= h >> 31;
    }
    h
}

/// `a / b` with `a` in `[-5, 5]` and `b` in `[1, 4]`.
pub fn random_scalar<S: Scalar, R: Rng + ?Sized>(rng: &mut R) -> S {
    let num = rng.random_range(-5i64..=5);
    let den = rng.random_range(1i64..=4);
    S::from_ratio(num, den)
}

pub fn random_nonzero_scalar<S: Scalar, R: Rng + ?Sized>(rng: &mut R) -> S {
    loop {
        let v: S = random_scalar(rng);
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn random_vector<S: Scalar, R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<S> {
    (0..dim).map(|_| random_scalar(rng)).collect()
}

pub fn random_hom_poly<S: Scalar, R: Rng + ?Sized>(rng: &mut R, dim: usize, degree: u32) -> HomPoly<S> {
    let coeffs = (0..basis_len(dim, degree)).map(|_| random_scalar(rng)).collect();
    HomPoly::from_coeffs(dim, degree, coeffs).expect("dim >= 1")
}

pub fn random_poly_map<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    codim: usize,
    degree: u32,
) -> PolyMap<S> {
    PolyMap::new((0..codim).map(|_| random_hom_poly(rng, dim, degree)).collect()).expect("codim >= 1")
}

/// A map of rank at most `rank`: `sum_{j < rank} P_j(x) b_j`.
pub fn random_low_rank_map<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    codim: usize,
    degree: u32,
    rank: usize,
) -> PolyMap<S> {
    let mut out = PolyMap::zero(dim, codim, degree).expect("codim >= 1");
    for _ in 0..rank {
        let p: HomPoly<S> = random_hom_poly(rng, dim, degree);
        let b: Vec<S> = random_vector(rng, codim);
        let term = PolyMap::new(b.iter().map(|bi| p.scale(bi)).collect()).expect("codim >= 1");
        out = out.add(&term).expect("same shape");
    }
    out
}

/// Random square matrix that is invertible (redrawn until it is).
pub fn random_invertible<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<S> {
    loop {
        let rows: Vec<Vec<S>> = (0..n).map(|_| random_vector(rng, n)).collect();
        let m = Matrix::from_rows(&rows).expect("square");
        if m.inverse().is_ok() {
            return m;
        }
    }
}

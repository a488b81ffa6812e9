#![no_std]

//! Generalized adjoints of homogeneous polynomial maps between finite-dimensional
//! real spaces.
//!
//! For an `m`-homogeneous map `P: R^d -> R^e` and positive integers `n`, `k`, the
//! generalized adjoint sends a `k`-homogeneous scalar polynomial `q` on `R^e` to the
//! `mnk`-homogeneous polynomial `x -> q(P(x))^n` on `R^d`. With `n = k = 1` this is the
//! transpose of a matrix (linear `P`) or the Aron-Schottenloher adjoint (nonlinear `P`).
//!
//! Everything algebraic is generic over [`Scalar`], so identities can be checked
//! exactly with [`Rational`] and estimated numerically with `f64`.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the command-line
//! front end live in the companion `polyadjoint` crate.

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod adjoint;
pub mod comp_ops;
mod error;
pub mod finite_type;
pub mod linalg;
pub mod multi_index;
pub mod norms;
pub mod points;
pub mod poly;
pub mod sampling;
mod scalar;
pub mod symform;
pub mod tensor;

pub use adjoint::{delta_apply, delta_materialize, j_embedding, MaterializedDelta, SizeCap};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use multi_index::{enumerate_multi_indices, multinomial, MultiIndex};
pub use poly::{compose_scalar, HomPoly, PolyMap};
pub use scalar::{Backend, Rational, Scalar};
pub use symform::{polarize, SymForm};

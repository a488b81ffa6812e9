//! JSON file formats.
//!
//! A polynomial map is written as
//!
//! ```json
//! { "dim": 2, "degree": 2,
//!   "components": [ [ {"exp": [2, 0], "coeff": "1"} ],
//!                   [ {"exp": [0, 2], "coeff": 1} ] ] }
//! ```
//!
//! Coefficients may be integers, JSON floats, or strings holding an integer, a fraction
//! `"p/q"` or a decimal `"0.25"`. Floats are read exactly (as binary fractions) on the
//! rational backend.

use std::fmt::Display;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use polyadjoint_core::comp_ops::CompositionInstance;
use polyadjoint_core::finite_type::FiniteTypeExpansion;
use polyadjoint_core::multi_index::enumerate_multi_indices;
use polyadjoint_core::{HomPoly, MaterializedDelta, MultiIndex, PolyMap, Rational, Scalar};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

/// Coefficient types that can be read from and written to JSON.
pub trait FieldScalar: Scalar + Display {
    fn to_json(&self) -> Value;
    fn from_json(c: &CoeffJson) -> Result<Self>;
    /// The exact value; every finite float is a dyadic rational.
    fn to_rational(&self) -> Rational;
}

impl FieldScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(c: &CoeffJson) -> Result<Self> {
        match c {
            CoeffJson::Int(v) => Ok(Rational::from_i64(*v)),
            CoeffJson::Float(f) => {
                Rational::from_float(*f).ok_or_else(|| CliError::Parse(format!("coefficient {f} is not finite")))
            }
            CoeffJson::Text(s) => parse_rational(s),
        }
    }

    fn to_rational(&self) -> Rational {
        self.clone()
    }
}

impl FieldScalar for f64 {
    fn to_json(&self) -> Value {
        json!(self)
    }

    fn from_json(c: &CoeffJson) -> Result<Self> {
        let v = match c {
            CoeffJson::Int(v) => *v as f64,
            CoeffJson::Float(f) => *f,
            CoeffJson::Text(s) => parse_rational(s)?.to_f64(),
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(CliError::Parse(format!("coefficient {c:?} is not finite")))
        }
    }

    fn to_rational(&self) -> Rational {
        Rational::from_float(*self).expect("finite coefficient")
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || CliError::Parse(format!("cannot parse coefficient {s:?}"));
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let whole = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            digits => BigInt::from_str(digits).map_err(|_| bad())?,
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let value = Rational::new(whole * &scale + BigInt::from_str(frac).map_err(|_| bad())?, scale);
        return Ok(if negative { -value } else { value });
    }
    let r = Rational::from_str(s).map_err(|_| bad())?;
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Int(i64),
    Float(f64),
    Text(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: CoeffJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyMapJson {
    pub dim: usize,
    pub degree: u32,
    #[serde(default)]
    pub codim: Option<usize>,
    pub components: Vec<Vec<TermJson>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyJson {
    pub dim: usize,
    pub degree: u32,
    pub terms: Vec<TermJson>,
}

fn poly_from_terms<S: FieldScalar>(dim: usize, degree: u32, terms: &[TermJson]) -> Result<HomPoly<S>> {
    let parsed = terms
        .iter()
        .map(|t| Ok((MultiIndex::new(t.exp.clone()), S::from_json(&t.coeff)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(HomPoly::from_terms(dim, degree, parsed)?)
}

impl PolyMapJson {
    pub fn to_map<S: FieldScalar>(&self) -> Result<PolyMap<S>> {
        if let Some(e) = self.codim {
            if e != self.components.len() {
                return Err(CliError::Parse(format!(
                    "codim is {e} but {} components are given",
                    self.components.len()
                )));
            }
        }
        let comps = self
            .components
            .iter()
            .map(|terms| poly_from_terms(self.dim, self.degree, terms))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMap::new(comps)?)
    }
}

impl PolyJson {
    pub fn to_poly<S: FieldScalar>(&self) -> Result<HomPoly<S>> {
        poly_from_terms(self.dim, self.degree, &self.terms)
    }
}

pub fn parse_poly_map<S: FieldScalar>(text: &str) -> Result<PolyMap<S>> {
    serde_json::from_str::<PolyMapJson>(text)?.to_map()
}

pub fn poly_to_json<S: FieldScalar>(p: &HomPoly<S>) -> Value {
    json!({
        "dim": p.dim(),
        "degree": p.degree(),
        "terms": terms_json(p),
    })
}

fn terms_json<S: FieldScalar>(p: &HomPoly<S>) -> Vec<Value> {
    p.terms().iter().map(|(a, c)| json!({"exp": a.exponents(), "coeff": c.to_json()})).collect()
}

pub fn poly_map_to_json<S: FieldScalar>(p: &PolyMap<S>) -> Value {
    json!({
        "dim": p.dim(),
        "codim": p.codim(),
        "degree": p.degree(),
        "components": p.components().iter().map(terms_json).collect::<Vec<_>>(),
    })
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn basis_labels(dim: usize, degree: u32) -> Result<Vec<Vec<u32>>> {
    Ok(enumerate_multi_indices(dim, degree)?.iter().map(|a| a.exponents().to_vec()).collect())
}

/// The materialized adjoint, with basis labels and a provenance block. When `n = 1` the
/// map is linear and `images` lists the image of each input basis monomial.
pub fn materialized_to_json<S: FieldScalar>(md: &MaterializedDelta<S>, input_sha256: &str) -> Result<Value> {
    let (d, e, m) = md.source_shape;
    let mut out = json!({
        "schema": 1,
        "kind": "materialized_adjoint",
        "n": md.n,
        "k": md.k,
        "source": {"dim": d, "codim": e, "degree": m},
        "input_basis": basis_labels(e, md.k)?,
        "output_basis": basis_labels(d, m * md.n * md.k)?,
        "map": poly_map_to_json(&md.map),
        "provenance": {
            "tool": concat!("polyadjoint ", env!("CARGO_PKG_VERSION")),
            "input_sha256": input_sha256,
            "field": S::BACKEND.name(),
            "basis_order": "descending lexicographic on exponent vectors",
        },
    });
    if md.n == 1 {
        let mat = md.map.coefficient_matrix();
        let images: Vec<Vec<Value>> =
            (0..mat.cols()).map(|j| mat.column(j).iter().map(FieldScalar::to_json).collect()).collect();
        out["images"] = Value::Array(images.into_iter().map(Value::Array).collect());
    }
    Ok(out)
}

pub fn expansion_to_json<S: FieldScalar>(exp: &FiniteTypeExpansion<S>) -> Value {
    json!({
        "schema": 1,
        "kind": "finite_type_expansion",
        "n": exp.n,
        "k": exp.k,
        "l": exp.rank(),
        "source": {"dim": exp.dim, "codim": exp.codim, "degree": exp.degree},
        "basis": exp.basis.iter().map(|b| b.iter().map(FieldScalar::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "terms": exp.terms.iter().map(|t| json!({
            "theta": t.theta.to_json(),
            "theta_factored": t.theta_factored,
            "poly": poly_to_json(&t.poly),
            "psi": t.psi.iter().map(|(c, a)| json!({"composition": c.exponents(), "exponent": a})).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceJson {
    #[serde(rename = "R")]
    pub r: PolyMapJson,
    #[serde(rename = "B")]
    pub b: PolyMapJson,
    #[serde(default)]
    pub roles: Option<Value>,
    pub degrees: InstanceDegrees,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceDegrees {
    pub m: u32,
    pub r: u32,
    pub s: u32,
}

impl InstanceJson {
    pub fn to_instance<S: FieldScalar>(&self) -> Result<CompositionInstance<S>> {
        let r: PolyMap<S> = self.r.to_map()?;
        let b: PolyMap<S> = self.b.to_map()?;
        if r.degree() != self.degrees.r || b.degree() != self.degrees.s {
            return Err(CliError::Parse("degrees do not match the maps R and B".into()));
        }
        Ok(CompositionInstance::new(r, b, self.degrees.m)?)
    }
}

pub fn instance_to_json<S: FieldScalar>(inst: &CompositionInstance<S>) -> Value {
    let (e1, f1, e, f) = inst.shape();
    json!({
        "R": poly_map_to_json(&inst.r),
        "B": poly_map_to_json(&inst.b),
        "roles": {"B": [e1, f1], "P": [f1, e], "R": [e, f]},
        "degrees": {"m": inst.m, "r": inst.r.degree(), "s": inst.b.degree()},
    })
}

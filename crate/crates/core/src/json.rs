//! JSON encodings of scalars, group-algebra elements, operator matrices and
//! convergence stages.
//!
//! Scalars: `F_q` elements are their integer encoding `sum c_i p^i` (arrays of
//! coefficients are also accepted); `Q_p` elements are
//! `{"p":5,"val":2,"unit":"13","prec":32}` (integers and `"a/b"` strings are
//! also accepted); rationals are `"a/b"` strings or integers.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group_algebra::GroupAlgebraElement;
use crate::groups::{build_finite_group, FiniteGroup, Group, GroupSpec};
use crate::operators::{ConvergenceStage, OperatorMatrix};
use crate::scalars::{Exact, Field, FqElement, FqField, PadicField, PadicLiteral, PadicScalar, Ring, Valued};

/// A scalar domain with a JSON representation for its elements.
pub trait ScalarCodec: Ring {
    fn encode(&self, x: &Self::Elem) -> Value;
    fn decode(&self, v: &Value) -> Result<Self::Elem>;
}

fn bad(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, got {v}"))
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d == BigInt::from(0) {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

fn value_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(i.into()))
            .ok_or_else(|| bad("an integer", v)),
        Value::String(s) => parse_rational(s),
        _ => Err(bad("a number or \"a/b\" string", v)),
    }
}

impl ScalarCodec for FqField {
    fn encode(&self, x: &FqElement) -> Value {
        json!(x.0)
    }

    fn decode(&self, v: &Value) -> Result<FqElement> {
        match v {
            Value::Array(cs) => {
                let coeffs = cs
                    .iter()
                    .map(|c| c.as_i64().ok_or_else(|| bad("integer coefficients", v)))
                    .collect::<Result<Vec<_>>>()?;
                self.from_coeffs(&coeffs)
            }
            Value::Number(n) if n.is_u64() && !self.is_prime_field() => self.checked(FqElement(n.as_u64().unwrap())),
            _ => {
                // prime field: any integer or p-integral rational reduces
                let r = value_rational(v)?;
                let num = reduce_integer(self, r.numer());
                let den = reduce_integer(self, r.denom());
                self.div(&num, &den).ok_or(Error::DivisionByZero)
            }
        }
    }
}

fn reduce_integer(field: &FqField, n: &BigInt) -> FqElement {
    let p = BigInt::from(field.characteristic());
    let r = ((n % &p) + &p) % &p;
    FqElement(u64::try_from(r).expect("reduced below p"))
}

impl ScalarCodec for PadicField {
    fn encode(&self, x: &PadicScalar) -> Value {
        serde_json::to_value(x.to_literal()).expect("literal serializes")
    }

    fn decode(&self, v: &Value) -> Result<PadicScalar> {
        let x = match v {
            Value::Object(_) => {
                let lit: PadicLiteral =
                    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("p-adic literal: {e}")))?;
                if lit.p != self.prime() {
                    return Err(Error::PrimeMismatch(self.prime(), lit.p));
                }
                lit.to_scalar()?
            }
            _ => PadicScalar::from_rational(self.prime(), self.precision(), &value_rational(v)?)?,
        };
        Ok(x)
    }
}

impl ScalarCodec for Exact<BigRational> {
    fn encode(&self, x: &BigRational) -> Value {
        json!(x.to_string())
    }

    fn decode(&self, v: &Value) -> Result<BigRational> {
        value_rational(v)
    }
}

/// `{"group": <spec>, "coeffs": [["(1 2)", "3"], ...]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupAlgebraJson {
    pub group: GroupSpec,
    pub coeffs: Vec<(String, Value)>,
}

impl GroupAlgebraJson {
    pub fn decode<R: ScalarCodec>(&self, ring: &R) -> Result<(Arc<FiniteGroup>, GroupAlgebraElement<FiniteGroup, R>)> {
        let group = Arc::new(build_finite_group(&self.group)?);
        let x = decode_element(&group, ring, &self.coeffs)?;
        Ok((group, x))
    }

    pub fn encode<R: ScalarCodec>(spec: &GroupSpec, x: &GroupAlgebraElement<FiniteGroup, R>) -> Self {
        GroupAlgebraJson {
            group: spec.clone(),
            coeffs: x
                .terms()
                .map(|(g, c)| (x.group().label(g), x.ring().encode(c)))
                .collect(),
        }
    }
}

pub fn decode_element<G: Group, R: ScalarCodec>(
    group: &Arc<G>,
    ring: &R,
    coeffs: &[(String, Value)],
) -> Result<GroupAlgebraElement<G, R>> {
    let terms = coeffs
        .iter()
        .map(|(g, c)| Ok((group.parse_element(g)?, ring.decode(c)?)))
        .collect::<Result<Vec<_>>>()?;
    GroupAlgebraElement::from_terms(group, ring, terms)
}

/// `{"group": <spec>, "entries": [[row, col, scalar], ...]}`; rows and
/// columns are element labels or indices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub group: GroupSpec,
    pub entries: Vec<(Value, Value, Value)>,
}

fn element_index(group: &FiniteGroup, v: &Value) -> Result<usize> {
    match v {
        Value::Number(n) => n
            .as_u64()
            .map(|i| i as usize)
            .filter(|&i| i < group.order())
            .ok_or_else(|| Error::UnknownElement(v.to_string())),
        Value::String(s) => group.parse_element(s),
        _ => Err(bad("an element label or index", v)),
    }
}

impl MatrixJson {
    pub fn decode<R: ScalarCodec>(&self, ring: &R) -> Result<OperatorMatrix<R>> {
        let group = Arc::new(build_finite_group(&self.group)?);
        let mut m = OperatorMatrix::zeros(&group, ring);
        for (a, b, c) in &self.entries {
            let (a, b) = (element_index(&group, a)?, element_index(&group, b)?);
            let v = ring.add(m.entry(a, b), &ring.decode(c)?);
            m.set(a, b, v);
        }
        Ok(m)
    }

    pub fn encode<R: ScalarCodec>(spec: &GroupSpec, m: &OperatorMatrix<R>) -> Self {
        let labels = m.group().labels();
        MatrixJson {
            group: spec.clone(),
            entries: m
                .nonzero_entries()
                .into_iter()
                .map(|(a, b, c)| (json!(labels[a]), json!(labels[b]), m.ring().encode(&c)))
                .collect(),
        }
    }
}

/// One stage: `{"index": 3, "bound": "1", "entries": [[0, 3, "1/125"], ...]}`;
/// `index` defaults to the position in the list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub bound: Value,
    pub entries: Vec<(usize, usize, Value)>,
}

/// `{"p": 5, "stages": [...]}`, with optional check parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StagesJson {
    pub p: u64,
    pub stages: Vec<StageJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub columns: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<String>,
}

impl StagesJson {
    pub fn decode(&self) -> Result<(PadicField, Vec<ConvergenceStage>)> {
        let field = PadicField::with_default_precision(self.p)?;
        let stages = self
            .stages
            .iter()
            .enumerate()
            .map(|(pos, s)| {
                let entries = s
                    .entries
                    .iter()
                    .map(|(i, j, v)| Ok(((*i, *j), field.decode(v)?)))
                    .collect::<Result<Vec<_>>>()?;
                ConvergenceStage::new(s.index.unwrap_or(pos), entries, value_rational(&s.bound)?)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((field, stages))
    }

    pub fn encode(field: &PadicField, stages: &[ConvergenceStage]) -> Self {
        StagesJson {
            p: field.prime(),
            stages: stages
                .iter()
                .map(|s| StageJson {
                    index: Some(s.index),
                    bound: json!(s.bound.to_string()),
                    entries: s.entries().map(|(&(i, j), v)| (i, j, field.encode(v))).collect(),
                })
                .collect(),
            columns: None,
            tail_index: None,
            threshold: None,
        }
    }
}

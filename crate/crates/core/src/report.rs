//! Verification reports: named identities evaluated side by side.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::poly::Poly;

/// Version of the JSON layout written by [`VerificationReport`].
pub const SCHEMA_VERSION: u32 = 1;

/// One side of an identity: an integer, a rational, or a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Quantity {
    Int(BigInt),
    Rational(BigRational),
    Poly(Poly),
}

impl Quantity {
    pub fn is_zero(&self) -> bool {
        match self {
            Quantity::Int(n) => n.is_zero(),
            Quantity::Rational(q) => q.is_zero(),
            Quantity::Poly(p) => p.is_zero(),
        }
    }

    fn as_poly(&self) -> Poly {
        match self {
            Quantity::Int(n) => Poly::constant(BigRational::from_integer(n.clone())),
            Quantity::Rational(q) => Poly::constant(q.clone()),
            Quantity::Poly(p) => p.clone(),
        }
    }

    /// `self - other`, in the simplest representation.
    pub fn minus(&self, other: &Quantity) -> Quantity {
        match (self, other) {
            (Quantity::Int(a), Quantity::Int(b)) => Quantity::Int(a - b),
            (Quantity::Poly(_), _) | (_, Quantity::Poly(_)) => Quantity::Poly(self.as_poly() - other.as_poly()),
            _ => Quantity::from(self.as_poly().coeff(0) - other.as_poly().coeff(0)),
        }
    }
}

impl From<BigInt> for Quantity {
    fn from(n: BigInt) -> Self {
        Quantity::Int(n)
    }
}

impl From<i64> for Quantity {
    fn from(n: i64) -> Self {
        Quantity::Int(BigInt::from(n))
    }
}

impl From<BigRational> for Quantity {
    fn from(q: BigRational) -> Self {
        if q.is_integer() {
            Quantity::Int(q.to_integer())
        } else {
            Quantity::Rational(q)
        }
    }
}

impl From<Poly> for Quantity {
    fn from(p: Poly) -> Self {
        Quantity::Poly(p)
    }
}

fn scalar_to_json(q: &BigRational) -> Value {
    if q.is_integer() {
        let n = q.to_integer();
        match n.to_i64() {
            Some(small) => Value::from(small),
            None => Value::from(n.to_string()),
        }
    } else {
        Value::from(q.to_string())
    }
}

fn scalar_from_json(v: &Value) -> Result<BigRational, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(BigInt::from(i)))
            .ok_or_else(|| format!("non-integral number {n}")),
        Value::String(s) => s.parse().map_err(|_| format!("bad exact number `{s}`")),
        other => Err(format!("expected a number, got {other}")),
    }
}

/// Integers as a JSON array, falling back to strings beyond `i64`.
pub fn int_list_json(values: &[BigInt]) -> Value {
    Value::Array(
        values
            .iter()
            .map(|n| scalar_to_json(&BigRational::from_integer(n.clone())))
            .collect(),
    )
}

impl Quantity {
    pub fn to_json(&self) -> Value {
        match self {
            Quantity::Int(n) => scalar_to_json(&BigRational::from_integer(n.clone())),
            Quantity::Rational(q) => scalar_to_json(q),
            Quantity::Poly(p) => Value::Array(p.coeffs().iter().map(scalar_to_json).collect()),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self, String> {
        match v {
            Value::Array(items) => items
                .iter()
                .map(scalar_from_json)
                .collect::<Result<Vec<_>, _>>()
                .map(|c| Quantity::Poly(Poly::from_coeffs(c))),
            scalar => scalar_from_json(scalar).map(Quantity::from),
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quantity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        Quantity::from_json(&v).map_err(D::Error::custom)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Int(n) => write!(f, "{n}"),
            Quantity::Rational(q) => write!(f, "{q}"),
            Quantity::Poly(p) => {
                let parts: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
                write!(f, "[{}]", parts.join(", "))
            }
        }
    }
}

/// One index of an identity (a value of `j`, a color set, a polynomial
/// degree, ...).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub index: String,
    pub lhs: Quantity,
    pub rhs: Quantity,
    pub residual: Quantity,
    /// `false` for rows outside the range where the identity is claimed;
    /// such rows are reported but never fail the report.
    pub asserted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub identity: String,
    pub parameters: BTreeMap<String, Value>,
    pub per_index: Vec<Row>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(identity: impl Into<String>) -> Self {
        VerificationReport {
            schema: SCHEMA_VERSION,
            identity: identity.into(),
            parameters: BTreeMap::new(),
            per_index: Vec::new(),
            pass: true,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_owned(), value.into());
        self
    }

    /// Records an asserted row; the report fails if the sides differ.
    pub fn check(&mut self, index: impl Into<String>, lhs: impl Into<Quantity>, rhs: impl Into<Quantity>) {
        self.push(index.into(), lhs.into(), rhs.into(), true);
    }

    /// Records a row for information only.
    pub fn note(&mut self, index: impl Into<String>, lhs: impl Into<Quantity>, rhs: impl Into<Quantity>) {
        self.push(index.into(), lhs.into(), rhs.into(), false);
    }

    fn push(&mut self, index: String, lhs: Quantity, rhs: Quantity, asserted: bool) {
        let residual = lhs.minus(&rhs);
        if asserted && !residual.is_zero() {
            self.pass = false;
        }
        self.per_index.push(Row {
            index,
            lhs,
            rhs,
            residual,
            asserted,
        });
    }

    /// Appends the rows of `other`, prefixing their indices.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for row in other.per_index {
            let index = format!("{prefix}{}", row.index);
            self.push(index, row.lhs, row.rhs, row.asserted);
        }
        self.pass &= other.pass;
    }

    pub fn asserted_rows(&self) -> impl Iterator<Item = &Row> {
        self.per_index.iter().filter(|r| r.asserted)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Plain aligned table, one row per index.
    pub fn to_table(&self) -> String {
        let mut out = format!(
            "identity: {}\nresult:   {}\n",
            self.identity,
            if self.pass { "PASS" } else { "FAIL" }
        );
        for (k, v) in &self.parameters {
            out.push_str(&format!("{k}: {v}\n"));
        }
        let header = ["index", "lhs", "rhs", "residual", "asserted"];
        let cells: Vec<[String; 5]> = self
            .per_index
            .iter()
            .map(|r| {
                [
                    r.index.clone(),
                    r.lhs.to_string(),
                    r.rhs.to_string(),
                    r.residual.to_string(),
                    if r.asserted { "yes" } else { "no" }.to_owned(),
                ]
            })
            .collect();
        let widths: Vec<usize> = (0..5)
            .map(|c| {
                cells
                    .iter()
                    .map(|row| row[c].chars().count())
                    .chain([header[c].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let render = |row: &[&str]| {
            let padded: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:<w$}", w = *w))
                .collect();
            padded.join("  ").trim_end().to_owned() + "\n"
        };
        out.push_str(&render(&header));
        for row in &cells {
            let refs: Vec<&str> = row.iter().map(String::as_str).collect();
            out.push_str(&render(&refs));
        }
        out
    }
}

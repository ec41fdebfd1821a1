//! Shared JSON conventions: arbitrary-precision integers travel as decimal
//! strings; plain JSON integers are accepted on input. Ingestion failures
//! from any of the file formats surface as [`IngestError`].

use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use thiserror::Error;

use crate::ring::{ModelKind, RingModel};

/// Why an input file was rejected.
#[derive(Debug, Error)]
pub enum IngestError {
    #[error("malformed json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

impl IngestError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        IngestError::Invalid(msg.into())
    }
}

/// How a ring model is named in files.
#[derive(Serialize, Deserialize)]
pub struct ModelSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub n: u32,
}

pub fn model_from_spec(spec: &ModelSpec) -> Result<Arc<RingModel>, IngestError> {
    match spec.kind.as_str() {
        "projective" => Ok(RingModel::projective(spec.n)),
        "grassmannian" => {
            let k = spec
                .k
                .ok_or_else(|| IngestError::invalid("grassmannian model needs field `k`"))?;
            if !(1 <= k && k < spec.n) {
                return Err(IngestError::invalid(format!(
                    "grassmannian model needs 1 <= k < n, got k={k}, n={}",
                    spec.n
                )));
            }
            Ok(RingModel::grassmannian(k, spec.n))
        }
        other => Err(IngestError::invalid(format!("unknown model kind `{other}`"))),
    }
}

pub fn model_to_spec(model: &RingModel) -> ModelSpec {
    match model.kind() {
        ModelKind::Projective { n } => ModelSpec { kind: "projective".into(), k: None, n },
        ModelKind::Grassmannian { k, n } => {
            ModelSpec { kind: "grassmannian".into(), k: Some(k), n }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JsonInt(pub BigInt);

impl From<BigInt> for JsonInt {
    fn from(v: BigInt) -> Self {
        JsonInt(v)
    }
}

impl From<JsonInt> for BigInt {
    fn from(v: JsonInt) -> Self {
        v.0
    }
}

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

struct IntVisitor;

impl Visitor<'_> for IntVisitor {
    type Value = JsonInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "an integer or a decimal string")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
        BigInt::from_str(v.trim())
            .map(JsonInt)
            .map_err(|_| E::custom(format!("not a decimal integer: {v:?}")))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
        Ok(JsonInt(BigInt::from(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
        Ok(JsonInt(BigInt::from(v)))
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

pub fn to_json_ints(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

pub fn from_json_ints(v: Vec<JsonInt>) -> Vec<BigInt> {
    v.into_iter().map(|x| x.0).collect()
}

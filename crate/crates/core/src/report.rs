//! Uniform pass/fail records emitted by every verification routine.

use std::collections::BTreeMap;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Measured discrepancy of a check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CheckError {
    /// Decided by exact arithmetic.
    Exact,
    /// Largest absolute deviation seen.
    Abs(f64),
}

impl Serialize for CheckError {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            CheckError::Exact => s.serialize_str("exact"),
            CheckError::Abs(v) => s.serialize_f64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for CheckError {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::String(s) if s == "exact" => Ok(CheckError::Exact),
            Value::Number(n) => n
                .as_f64()
                .map(CheckError::Abs)
                .ok_or_else(|| de::Error::custom("bad error value")),
            Value::Null => Ok(CheckError::Abs(f64::NAN)),
            other => Err(de::Error::custom(format!("bad error value {other}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub error: CheckError,
    pub pass: bool,
    pub deviation_flags: Vec<String>,
}

impl CheckReport {
    /// Passes iff `error < tol` (a NaN error fails).
    pub fn numeric(check: &str, error: f64, tol: f64) -> Self {
        CheckReport {
            check: check.to_string(),
            params: BTreeMap::new(),
            error: CheckError::Abs(error),
            pass: error < tol,
            deviation_flags: Vec::new(),
        }
    }

    pub fn exact(check: &str, pass: bool) -> Self {
        CheckReport {
            check: check.to_string(),
            params: BTreeMap::new(),
            error: CheckError::Exact,
            pass,
            deviation_flags: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn flag(mut self, flag: &str) -> Self {
        if !self.deviation_flags.iter().any(|f| f == flag) {
            self.deviation_flags.push(flag.to_string());
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

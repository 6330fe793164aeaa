//! Hauptmodul descriptions loaded from JSON.

use serde::{Deserialize, Serialize};

use crate::arith::rational::serde_str;
use crate::arith::Rational;
use crate::error::{Error, Result};

const BUILTIN: &str = include_str!("../../data/moonshine.json");

/// `q^{lead} Π_{(a,e)} Π_n (1 − q^{an})^e + const`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HauptmodulSpec {
    #[serde(rename = "label")]
    pub class_label: String,
    #[serde(rename = "eta")]
    pub eta_factors: Vec<(u32, i64)>,
    #[serde(rename = "const", with = "serde_str")]
    pub additive_constant: Rational,
}

impl HauptmodulSpec {
    /// `Σ a·e / 24`, the exponent contributed by the eta factors.
    pub fn leading_exponent(&self) -> Rational {
        let s: i64 = self.eta_factors.iter().map(|(a, e)| *a as i64 * e).sum();
        Rational::new(s.into(), 24.into())
    }

    /// The Γ₀(N) level read off the largest eta scale.
    pub fn level(&self) -> u32 {
        self.eta_factors.iter().map(|(a, _)| *a).max().unwrap_or(1)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoonshineData {
    pub classes: Vec<HauptmodulSpec>,
    #[serde(default)]
    pub char_degrees_hint: Vec<u64>,
}

impl MoonshineData {
    pub fn builtin() -> Self {
        Self::from_json(BUILTIN).expect("bundled moonshine data parses")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let d: MoonshineData = serde_json::from_str(s)?;
        for c in &d.classes {
            if c.eta_factors.iter().any(|(a, _)| *a == 0) {
                return Err(Error::Parse(format!(
                    "class {}: eta scale must be positive",
                    c.class_label
                )));
            }
        }
        Ok(d)
    }

    pub fn class(&self, label: &str) -> Result<&HauptmodulSpec> {
        self.classes
            .iter()
            .find(|c| c.class_label == label)
            .ok_or_else(|| Error::UnknownClass(label.to_string()))
    }
}

//! JSON forms of [`Puiseux`] and [`LogQSeries`].

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LogQSeries, Puiseux};
use crate::arith::rational::{format_rational, parse_rational};
use crate::arith::CycQ;

#[derive(Serialize, Deserialize)]
struct PuiseuxJson {
    #[serde(rename = "T")]
    t: u32,
    leading: String,
    trunc: Option<String>,
    coeffs: Vec<CycQ>,
}

#[derive(Serialize, Deserialize)]
struct PartJson {
    log_power: usize,
    #[serde(flatten)]
    series: PuiseuxJson,
}

#[derive(Serialize, Deserialize)]
struct LogJson {
    #[serde(rename = "T")]
    t: u32,
    parts: Vec<PartJson>,
}

fn to_json(p: &Puiseux) -> PuiseuxJson {
    PuiseuxJson {
        t: p.branching(),
        leading: format_rational(p.leading_exponent()),
        trunc: p.trunc().map(format_rational),
        coeffs: p.coeffs().to_vec(),
    }
}

fn from_json(raw: PuiseuxJson) -> crate::Result<Puiseux> {
    if raw.t == 0 {
        return Err(crate::Error::Parse("branching T must be positive".into()));
    }
    let lead = parse_rational(&raw.leading)?;
    let trunc = raw.trunc.as_deref().map(parse_rational).transpose()?;
    Ok(Puiseux::new(raw.t, lead, raw.coeffs, trunc))
}

impl Serialize for Puiseux {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        to_json(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Puiseux {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        from_json(PuiseuxJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl Serialize for LogQSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LogJson {
            t: self.branching(),
            parts: self
                .parts()
                .iter()
                .enumerate()
                .map(|(i, p)| PartJson {
                    log_power: i,
                    series: to_json(p),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LogQSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = LogJson::deserialize(d)?;
        let len = raw.parts.iter().map(|p| p.log_power + 1).max().unwrap_or(0);
        let mut parts = vec![Puiseux::zero(None); len];
        for p in raw.parts {
            parts[p.log_power] = from_json(p.series).map_err(serde::de::Error::custom)?;
        }
        Ok(LogQSeries::new(raw.t, parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    #[test]
    fn puiseux_round_trip() {
        let s = Puiseux::new(
            2,
            rat(-1, 2),
            vec![CycQ::one(), CycQ::root(1, 3), CycQ::from_int(-7)],
            Some(int(1)),
        );
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.starts_with("{\"T\":2,\"leading\":\"-1/2\",\"trunc\":\"1\""));
        let back: Puiseux = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn log_series_round_trip() {
        let s = LogQSeries::new(
            3,
            vec![
                Puiseux::one(),
                Puiseux::monomial(CycQ::from_int(2), rat(1, 3), Some(int(2))),
            ],
        );
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.contains("\"log_power\":1"));
        let back: LogQSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}

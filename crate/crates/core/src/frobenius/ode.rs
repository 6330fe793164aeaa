//! `θ^m S + Σ_{i<m} r_i θ^i S = 0` with Puiseux coefficients.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::rational::ceil_to_i64;
use crate::arith::{CycQ, Rational};
use crate::error::{Error, Result};
use crate::series::{LogQSeries, Puiseux, ThetaScale};

/// A linear ODE in `θ` regular-singular at `q = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularSingularODE {
    pub order: usize,
    #[serde(rename = "T")]
    pub t: u32,
    pub coeffs: Vec<Puiseux>,
    #[serde(default)]
    pub theta: ThetaScale,
}

impl RegularSingularODE {
    pub fn new(t: u32, coeffs: Vec<Puiseux>) -> Result<Self> {
        let ode = RegularSingularODE {
            order: coeffs.len(),
            t,
            coeffs,
            theta: ThetaScale::Full,
        };
        ode.validate()?;
        Ok(ode)
    }

    pub fn with_theta(mut self, theta: ThetaScale) -> Self {
        self.theta = theta;
        self
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let ode: RegularSingularODE = serde_json::from_str(s)?;
        ode.validate()?;
        Ok(ode)
    }

    pub fn validate(&self) -> Result<()> {
        if self.t == 0 {
            return Err(Error::InvalidArgument(
                "branching T must be positive".into(),
            ));
        }
        if self.order == 0 || self.coeffs.len() != self.order {
            return Err(Error::InvalidArgument(format!(
                "order {} needs exactly that many coefficient series, got {}",
                self.order,
                self.coeffs.len()
            )));
        }
        for (i, r) in self.coeffs.iter().enumerate() {
            if r.leading_exponent().is_negative() {
                return Err(Error::InvalidArgument(format!(
                    "r_{i} has a negative exponent"
                )));
            }
            if !self.t.is_multiple_of(r.branching()) {
                return Err(Error::Incompatible(format!(
                    "r_{i} has branching {} not dividing T = {}",
                    r.branching(),
                    self.t
                )));
            }
            let lead_t = r.leading_exponent() * Rational::from_integer(BigInt::from(self.t));
            if !lead_t.is_integer() {
                return Err(Error::Incompatible(format!(
                    "r_{i} has exponents outside (1/T)Z"
                )));
            }
        }
        Ok(())
    }

    /// `θ(ℓ)` for `ℓ = log q_{1/T}`.
    pub(crate) fn kappa(&self) -> Rational {
        match self.theta {
            ThetaScale::Full => Rational::new(1.into(), BigInt::from(self.t)),
            ThetaScale::OneOverT => Rational::from_integer(1.into()),
        }
    }

    /// The eigenvalue of `θ` on `q^r`.
    pub(crate) fn theta_value(&self, r: &Rational) -> Rational {
        match self.theta {
            ThetaScale::Full => r.clone(),
            ThetaScale::OneOverT => r * Rational::from_integer(BigInt::from(self.t)),
        }
    }

    /// The exponent `r` with `θ q^r = x q^r`.
    pub(crate) fn exponent_of(&self, x: &Rational) -> Rational {
        match self.theta {
            ThetaScale::Full => x.clone(),
            ThetaScale::OneOverT => x / Rational::from_integer(BigInt::from(self.t)),
        }
    }

    /// Largest `q`-exponent below which every `r_i` is known (`None`: exact).
    pub(crate) fn coefficient_trunc(&self) -> Option<Rational> {
        self.coeffs.iter().filter_map(|r| r.trunc().cloned()).min()
    }

    /// `P_t(x) = [t = 0] x^m + Σ_i (coefficient of q^{t/T} in r_i) x^i` for `t < levels`.
    pub(crate) fn level_polys(&self, levels: usize) -> Vec<Vec<CycQ>> {
        let t = self.t;
        let fine: Vec<Puiseux> = self.coeffs.iter().map(|r| r.with_branching(t)).collect();
        (0..levels)
            .map(|n| {
                let e = Rational::new(BigInt::from(n), BigInt::from(t));
                let mut p: Vec<CycQ> = fine
                    .iter()
                    .map(|r| r.coefficient(&e).unwrap_or_else(|| CycQ::zero(1)))
                    .collect();
                p.push(if n == 0 { CycQ::one() } else { CycQ::zero(1) });
                p
            })
            .collect()
    }

    /// `x^m + Σ r_i(0) x^i`, ascending.
    pub fn indicial_polynomial(&self) -> Vec<CycQ> {
        self.level_polys(1).remove(0)
    }

    /// `θ^m s + Σ r_i θ^i s`.
    pub fn apply(&self, s: &LogQSeries) -> LogQSeries {
        let mut acc: Option<LogQSeries> = None;
        let mut power = LogQSeries::new(
            s.branching(),
            s.parts()
                .iter()
                .map(|p| p.with_branching(crate::arith::rational::lcm_u32(p.branching(), self.t)))
                .collect(),
        );
        for i in 0..=self.order {
            let term = if i == self.order {
                power.clone()
            } else {
                power.mul_puiseux(&self.coeffs[i])
            };
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
            if i < self.order {
                power = power.theta(self.theta);
            }
        }
        acc.expect("order >= 1")
    }

    /// Number of recursion levels covering relative order `trunc`.
    pub(crate) fn levels_for(&self, trunc: &Rational) -> usize {
        ceil_to_i64(&(trunc * Rational::from_integer(BigInt::from(self.t))))
            .max(0)
            .to_usize()
            .unwrap_or(0)
    }
}

pub fn apply_ode(ode: &RegularSingularODE, s: &LogQSeries) -> LogQSeries {
    ode.apply(s)
}

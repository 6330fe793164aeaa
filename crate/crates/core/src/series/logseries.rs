//! Polynomials in `ℓ = log q_{1/T}` with Puiseux coefficients.

use num_bigint::BigInt;

use super::{Puiseux, ThetaScale};
use crate::arith::Rational;

/// `Σ_{i=0}^{p} ℓ^i S_i` with `ℓ = log q_{1/T}` kept symbolic.
#[derive(Clone, Debug, PartialEq)]
pub struct LogQSeries {
    t: u32,
    parts: Vec<Puiseux>,
}

impl LogQSeries {
    pub fn new(t: u32, parts: Vec<Puiseux>) -> Self {
        let mut s = LogQSeries { t, parts };
        s.trim();
        s
    }

    pub fn from_puiseux(t: u32, s: Puiseux) -> Self {
        Self::new(t, vec![s])
    }

    /// `ℓ^power · s`.
    pub fn log_monomial(t: u32, power: usize, s: Puiseux) -> Self {
        let mut parts = vec![Puiseux::zero(s.trunc().cloned()); power];
        parts.push(s);
        Self::new(t, parts)
    }

    fn trim(&mut self) {
        while self.parts.len() > 1 && self.parts.last().is_some_and(Puiseux::is_zero) {
            self.parts.pop();
        }
    }

    pub fn branching(&self) -> u32 {
        self.t
    }

    pub fn parts(&self) -> &[Puiseux] {
        &self.parts
    }

    /// Highest power of `ℓ` with a nonzero coefficient series.
    pub fn log_degree(&self) -> usize {
        self.parts.len().saturating_sub(1)
    }

    pub fn part(&self, i: usize) -> Option<&Puiseux> {
        self.parts.get(i)
    }

    pub fn add(&self, other: &LogQSeries) -> LogQSeries {
        assert_eq!(self.t, other.t, "log bases differ");
        let len = self.parts.len().max(other.parts.len());
        let parts = (0..len)
            .map(|i| match (self.parts.get(i), other.parts.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        LogQSeries::new(self.t, parts)
    }

    pub fn neg(&self) -> LogQSeries {
        LogQSeries::new(self.t, self.parts.iter().map(Puiseux::neg).collect())
    }

    pub fn sub(&self, other: &LogQSeries) -> LogQSeries {
        self.add(&other.neg())
    }

    /// Multiplies every part by the (log-free) series `f`.
    pub fn mul_puiseux(&self, f: &Puiseux) -> LogQSeries {
        LogQSeries::new(self.t, self.parts.iter().map(|p| p.mul(f)).collect())
    }

    /// `q d/dq` or `q_{1/T} d/dq_{1/T}` applied termwise, using
    /// `q d/dq (ℓ^i f) = (i/T) ℓ^{i-1} f + ℓ^i q df/dq`.
    pub fn theta(&self, scale: ThetaScale) -> LogQSeries {
        let log_factor = match scale {
            ThetaScale::Full => Rational::new(1.into(), BigInt::from(self.t)),
            ThetaScale::OneOverT => Rational::from_integer(1.into()),
        };
        let mut parts: Vec<Puiseux> = self.parts.iter().map(|p| p.theta(scale)).collect();
        for i in 1..self.parts.len() {
            let extra =
                self.parts[i].scale(&(&log_factor * Rational::from_integer(BigInt::from(i))));
            parts[i - 1] = parts[i - 1].add(&extra);
        }
        LogQSeries::new(self.t, parts)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Puiseux::is_zero)
    }

    /// Smallest truncation order across the parts.
    pub fn trunc(&self) -> Option<Rational> {
        self.parts.iter().filter_map(|p| p.trunc().cloned()).min()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;
    use crate::arith::CycQ;

    #[test]
    fn theta_of_log() {
        // ℓ · 1 with T = 1: θℓ = 1, θ²ℓ = 0
        let ell = LogQSeries::log_monomial(1, 1, Puiseux::one());
        let d1 = ell.theta(ThetaScale::Full);
        assert_eq!(d1.log_degree(), 0);
        assert_eq!(d1.parts()[0].coefficient(&int(0)), Some(CycQ::one()));
        assert!(d1.theta(ThetaScale::Full).is_zero());
    }

    #[test]
    fn theta_of_log_with_branching() {
        // q d/dq (ℓ) = 1/T, q_{1/T} d/dq_{1/T} (ℓ) = 1
        let ell = LogQSeries::log_monomial(3, 1, Puiseux::one());
        let full = ell.theta(ThetaScale::Full);
        assert_eq!(
            full.parts()[0].coefficient(&int(0)),
            Some(CycQ::from_rational(&crate::arith::rat(1, 3)))
        );
        let fine = ell.theta(ThetaScale::OneOverT);
        assert_eq!(fine.parts()[0].coefficient(&int(0)), Some(CycQ::one()));
    }
}

//! Torsion points `(μ, λ) = (e^{2πi j/M}, e^{2πi l/N})` of `(Q/Z)²`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::GammaMat;
use crate::arith::rational::{frac_half_open, parse_rational};
use crate::arith::{CycQ, Rational};
use crate::error::{Error, Result};

/// A point of `(Q/Z)²` stored by its representatives in `(0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorsionPair {
    #[serde(with = "crate::arith::rational::serde_str")]
    j_over_m: Rational,
    #[serde(with = "crate::arith::rational::serde_str")]
    l_over_n: Rational,
}

impl TorsionPair {
    pub fn new(j_over_m: Rational, l_over_n: Rational) -> Self {
        TorsionPair {
            j_over_m: frac_half_open(&j_over_m),
            l_over_n: frac_half_open(&l_over_n),
        }
    }

    pub fn from_parts(j: i64, m: i64, l: i64, n: i64) -> Self {
        Self::new(
            Rational::new(BigInt::from(j), BigInt::from(m)),
            Rational::new(BigInt::from(l), BigInt::from(n)),
        )
    }

    /// Parses `"j/M,l/N"`.
    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected j/M,l/N, got {s:?}")))?;
        Ok(Self::new(parse_rational(a)?, parse_rational(b)?))
    }

    pub fn j_over_m(&self) -> &Rational {
        &self.j_over_m
    }

    pub fn l_over_n(&self) -> &Rational {
        &self.l_over_n
    }

    /// `(j, M)` with `1 <= j <= M` in lowest terms.
    pub fn jm(&self) -> (i64, u32) {
        split(&self.j_over_m)
    }

    /// `(l, N)` with `1 <= l <= N` in lowest terms.
    pub fn ln(&self) -> (i64, u32) {
        split(&self.l_over_n)
    }

    pub fn mu(&self) -> CycQ {
        CycQ::root_of_rational(&self.j_over_m)
    }

    pub fn lambda(&self) -> CycQ {
        CycQ::root_of_rational(&self.l_over_n)
    }

    /// `(μ, λ) = (1, 1)`.
    pub fn is_trivial(&self) -> bool {
        self.j_over_m.is_one() && self.l_over_n.is_one()
    }

    /// `(μ, λ)γ = (μ^a λ^c, μ^b λ^d)`.
    pub fn act(&self, g: &GammaMat) -> TorsionPair {
        let [a, b, c, d] = g.entries().map(|v| Rational::from_integer(BigInt::from(v)));
        TorsionPair::new(
            &self.j_over_m * &a + &self.l_over_n * &c,
            &self.j_over_m * &b + &self.l_over_n * &d,
        )
    }

    /// Orbit under the subgroup generated by `S` and `T`, in discovery order.
    pub fn orbit(&self) -> Vec<TorsionPair> {
        let mut seen = vec![self.clone()];
        let mut i = 0;
        while i < seen.len() {
            for g in [GammaMat::S, GammaMat::T] {
                let next = seen[i].act(&g);
                if !seen.contains(&next) {
                    seen.push(next);
                }
            }
            i += 1;
        }
        seen
    }
}

fn split(r: &Rational) -> (i64, u32) {
    (
        r.numer().to_i64().expect("numerator fits"),
        r.denom().to_u32().expect("denominator fits"),
    )
}

impl fmt::Display for TorsionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.j_over_m, self.l_over_n)
    }
}

//! Bernoulli numbers and polynomials from `t e^{tx}/(e^t − 1) = Σ B_k(x) t^k/k!`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::rational::{binomial, format_rational, int, rpow};
use crate::arith::Rational;

/// `B_k(0)` for `k = 0..=n`, with `B_1 = −1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    // Σ_{i=0}^{m} binom(m+1, i) B_i = 0 for m >= 1
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        let mut acc = Rational::zero();
        for (i, bi) in b.iter().enumerate() {
            acc += bi * Rational::from_integer(binomial(m as i64 + 1, i as i64));
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// `B_k(x) = Σ_i c_i x^i`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BernoulliPoly {
    #[serde(skip)]
    degree: usize,
    #[serde(rename = "poly", serialize_with = "ser_coeffs")]
    coeffs: Vec<Rational>,
}

fn ser_coeffs<S: serde::Serializer>(c: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(c.iter().map(format_rational))
}

impl BernoulliPoly {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient of `x^i`, lowest degree first.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + crate::arith::rational::to_f64(c))
    }
}

pub fn bernoulli_poly(k: usize) -> BernoulliPoly {
    let b = bernoulli_numbers(k);
    let coeffs = (0..=k)
        .map(|i| Rational::from_integer(binomial(k as i64, i as i64)) * &b[k - i])
        .collect();
    BernoulliPoly { degree: k, coeffs }
}

/// `B_k(x)`.
pub fn bernoulli_value(k: usize, x: &Rational) -> Rational {
    bernoulli_poly(k).eval(x)
}

/// Checks `Σ_{a<N} (a+x)^{k−1} = (B_k(x+N) − B_k(x))/k` and
/// `B_k(1−x) = (−1)^k B_k(x)` exactly.
pub fn bernoulli_identities_check(k: usize, x: &Rational, n: u32) -> bool {
    if k == 0 {
        return false;
    }
    let bk = bernoulli_poly(k);
    let lhs: Rational = (0..n)
        .map(|a| rpow(&(int(a as i64) + x), (k - 1) as u32))
        .sum();
    let rhs = (bk.eval(&(x + int(n as i64))) - bk.eval(x)) / int(k as i64);
    let sign = if k.is_multiple_of(2) { int(1) } else { int(-1) };
    let reflect = bk.eval(&(int(1) - x)) == sign * bk.eval(x);
    lhs == rhs && reflect
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn low_degrees() {
        assert_eq!(bernoulli_poly(0).coeffs(), &[int(1)]);
        assert_eq!(bernoulli_poly(1).coeffs(), &[rat(-1, 2), int(1)]);
        assert_eq!(bernoulli_poly(2).coeffs(), &[rat(1, 6), int(-1), int(1)]);
        assert_eq!(bernoulli_value(4, &int(0)), rat(-1, 30));
    }

    #[test]
    fn numbers_match_taylor_expansion() {
        // t/(e^t − 1) · (e^t − 1)/t = 1: convolve with 1/(i+1)!
        let b = bernoulli_numbers(16);
        for m in 1..=16usize {
            let mut acc = Rational::zero();
            let fact =
                |n: usize| Rational::from_integer(crate::arith::rational::factorial(n as u32));
            for (i, bi) in b.iter().enumerate().take(m + 1) {
                acc += bi / fact(i) / fact(m - i + 1);
            }
            assert!(acc.is_zero(), "order {m}");
        }
        assert_eq!(b[12], rat(-691, 2730));
    }

    #[test]
    fn identity_examples() {
        assert!(bernoulli_identities_check(2, &int(0), 3));
        assert!(bernoulli_identities_check(1, &rat(1, 2), 1));
        assert!(bernoulli_identities_check(3, &rat(1, 4), 5));
        assert_eq!(bernoulli_value(1, &rat(1, 2)), int(0));
        let json = serde_json::to_string(&bernoulli_poly(2)).unwrap();
        assert_eq!(json, r#"{"poly":["1/6","-1","1"]}"#);
    }
}

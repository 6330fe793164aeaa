//! Change-of-variable coefficients `c(p, i, m)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::rational::{binomial, factorial};
use crate::arith::Rational;

fn poly_mul(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `c(p, i, m)` as the coefficient of `z^m` in `binom(p − 1 + z, i)`.
pub fn zhu_coeff_binomial(p: i64, i: u32, m: u32) -> Rational {
    if m > i {
        return Rational::zero();
    }
    let mut poly = vec![Rational::one()];
    for t in 0..i as i64 {
        let c = Rational::from_integer(BigInt::from(p - 1 - t));
        let mut next = vec![Rational::zero(); poly.len() + 1];
        for (d, x) in poly.iter().enumerate() {
            next[d] += x * &c;
            next[d + 1] += x;
        }
        poly = next;
    }
    &poly[m as usize] / Rational::from_integer(factorial(i))
}

/// `c(p, i, m)` from `m! Σ_i c(p,i,m) z^i = (log(1+z))^m (1+z)^{p−1}`.
pub fn zhu_coeff(p: i64, i: u32, m: u32) -> Rational {
    if m > i {
        return Rational::zero();
    }
    let len = i as usize + 1;
    let log: Vec<Rational> = (0..len)
        .map(|n| {
            if n == 0 {
                Rational::zero()
            } else {
                let s = if n % 2 == 1 { 1 } else { -1 };
                Rational::new(BigInt::from(s), BigInt::from(n))
            }
        })
        .collect();
    let mut acc = vec![Rational::zero(); len];
    acc[0] = Rational::one();
    for _ in 0..m {
        acc = poly_mul(&acc, &log, len);
    }
    let pow: Vec<Rational> = (0..len)
        .map(|n| Rational::from_integer(binomial(p - 1, n as i64)))
        .collect();
    let full = poly_mul(&acc, &pow, len);
    &full[i as usize] / Rational::from_integer(factorial(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    #[test]
    fn examples() {
        assert_eq!(zhu_coeff(5, 3, 0), int(4));
        assert_eq!(zhu_coeff(2, 3, 3), rat(1, 6));
        for p in -3..6 {
            assert_eq!(zhu_coeff(p, 1, 1), int(1));
        }
        assert_eq!(zhu_coeff(1, 2, 3), int(0));
    }

    #[test]
    fn routes_agree() {
        for p in -4..=10 {
            for i in 0..=12 {
                for m in 0..=i {
                    assert_eq!(
                        zhu_coeff(p, i, m),
                        zhu_coeff_binomial(p, i, m),
                        "p={p} i={i} m={m}"
                    );
                }
            }
        }
    }
}

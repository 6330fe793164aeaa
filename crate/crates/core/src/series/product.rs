//! Infinite products `Π_{(a,e)} Π_{n>=1} (1 − q^{an})^e` with exact integer
//! coefficients.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::Puiseux;
use crate::arith::rational::ceil_to_i64;
use crate::arith::{CycQ, Rational};

/// Integer coefficients of the product below `q^len`.
///
/// Uses the logarithmic derivative: with `f = Π (1 − q^{an})^e`,
/// `θf = f · g` where `g = −Σ e·a·σ₁(m) q^{am}`, so
/// `k f_k = Σ_{i=1}^k g_i f_{k−i}`.
pub fn product_coefficients(factors: &[(u32, i64)], len: usize) -> Vec<BigInt> {
    if len == 0 {
        return Vec::new();
    }
    let sigma = divisor_sums(len);
    let mut g = vec![0i64; len];
    for &(a, e) in factors {
        assert!(a >= 1, "product step must be positive");
        let a = a as usize;
        let mut m = 1;
        while a * m < len {
            g[a * m] -= e * a as i64 * sigma[m];
            m += 1;
        }
    }
    let nz: Vec<(usize, BigInt)> = g
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != 0)
        .map(|(i, v)| (i, BigInt::from(*v)))
        .collect();
    let mut f: Vec<BigInt> = Vec::with_capacity(len);
    f.push(BigInt::from(1));
    for k in 1..len {
        let mut acc = BigInt::zero();
        for (i, gi) in &nz {
            if *i > k {
                break;
            }
            let prev = &f[k - i];
            if !prev.is_zero() {
                acc += gi * prev;
            }
        }
        f.push(acc / BigInt::from(k));
    }
    f
}

/// `σ₁(m)` for `m < len`.
pub fn divisor_sums(len: usize) -> Vec<i64> {
    let mut s = vec![0i64; len];
    for d in 1..len {
        let mut m = d;
        while m < len {
            s[m] += d as i64;
            m += d;
        }
    }
    s
}

/// The product as a truncated series in `q` (exponents below `trunc`).
pub fn product_expand(factors: &[(u32, i64)], trunc: &Rational) -> Puiseux {
    let len = ceil_to_i64(trunc).max(0).to_usize().unwrap_or(0);
    let coeffs = product_coefficients(factors, len)
        .into_iter()
        .map(|c| CycQ::from_rational(&Rational::from_integer(c)))
        .collect();
    Puiseux::new(1, Rational::zero(), coeffs, Some(trunc.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn pentagonal_partitions(n: usize) -> Vec<BigInt> {
        let mut p = vec![BigInt::zero(); n + 1];
        p[0] = BigInt::from(1);
        for m in 1..=n {
            let mut acc = BigInt::zero();
            let mut k: i64 = 1;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > m {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                acc += &p[m - g1] * sign;
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= m {
                    acc += &p[m - g2] * sign;
                }
                k += 1;
            }
            p[m] = acc;
        }
        p
    }

    #[test]
    fn partitions_match_pentagonal_recursion() {
        let f = product_coefficients(&[(1, -1)], 201);
        assert_eq!(f, pentagonal_partitions(200));
        assert_eq!(f[..5], [1, 1, 2, 3, 5].map(BigInt::from));
        assert_eq!(f[200].to_string(), "3972999029388");
    }

    #[test]
    fn delta_matches_repeated_multiplication() {
        let len = 40;
        let mut base = vec![BigInt::zero(); len];
        base[0] = BigInt::from(1);
        for n in 1..len {
            for k in (n..len).rev() {
                let v = base[k - n].clone();
                base[k] -= v;
            }
        }
        let mut acc = vec![BigInt::zero(); len];
        acc[0] = BigInt::from(1);
        for _ in 0..24 {
            let mut next = vec![BigInt::zero(); len];
            for i in 0..len {
                for j in 0..len - i {
                    next[i + j] += &acc[i] * &base[j];
                }
            }
            acc = next;
        }
        let f = product_coefficients(&[(1, 24)], len);
        assert_eq!(f, acc);
        assert_eq!(f[..4], [1, -24, 252, -1472].map(BigInt::from));
    }

    #[test]
    fn empty_and_mixed_products() {
        let one = product_expand(&[], &int(10));
        assert_eq!(one.coefficient(&int(0)), Some(CycQ::one()));
        assert!(one.coeffs()[1..].iter().all(CycQ::is_zero));
        // (1−q)/(1−q) in disguise: Π(1−q^n)(1−q^n)^{-1} = 1
        let trivial = product_coefficients(&[(1, 1), (1, -1)], 30);
        assert!(trivial[1..].iter().all(Zero::is_zero));
        // Π(1−q^{2n})^{-1}: partitions into even parts
        let even = product_coefficients(&[(2, -1)], 11);
        let p = pentagonal_partitions(5);
        for k in 0..=5 {
            assert_eq!(even[2 * k], p[k]);
            if 2 * k + 1 < 11 {
                assert!(even[2 * k + 1].is_zero());
            }
        }
    }
}

//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use orbiform::arith::rational::factorial;
use orbiform::arith::{int, rat, CycQ, Rational};
use orbiform::forms::bernoulli_value;

/// Coefficients of `q^{n/M}`, `n < len`, of `Q_k` from the divisor-sum rearrangement
/// of the lattice sum:
/// `M^{1−k}/(k−1)! [Σ_{d|n, d≡j} d^{k−1} λ^{n/d} + (−1)^k Σ_{d|n, d≡−j} d^{k−1} λ^{−n/d}]`
/// with constant term `−B_k(j/M)/k!`.
pub fn qk_divisor_oracle(k: u32, j: i64, m: i64, l: i64, n_den: u32, len: usize) -> Vec<CycQ> {
    let scale = Rational::new(BigInt::one(), BigInt::from(m).pow(k - 1) * factorial(k - 1));
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    let mut out = Vec::with_capacity(len);
    for n in 0..len as i64 {
        if n == 0 {
            let b = bernoulli_value(k as usize, &rat(j, m)) / Rational::from_integer(factorial(k));
            out.push(CycQ::from_rational(&-b));
            continue;
        }
        let mut acc = CycQ::zero(1);
        for d in 1..=n {
            if n % d != 0 {
                continue;
            }
            let w = Rational::from_integer(BigInt::from(d).pow(k - 1));
            if (d - j).rem_euclid(m) == 0 {
                acc = &acc + &CycQ::root(l * (n / d), n_den).scale(&w);
            }
            if (d + j).rem_euclid(m) == 0 {
                acc = &acc + &CycQ::root(-l * (n / d), n_den).scale(&(w * int(sign)));
            }
        }
        out.push(acc.scale(&scale));
    }
    out
}

/// `Σ_{m ≠ 0 or n ≠ 0} (mτ + n)^{-k}` by direct summation over `|n| ≤ r` with an
/// Euler–Maclaurin tail in `n`, for `|m| ≤ rows`.
pub fn lattice_sum(k: i32, tau: Complex64, rows: i64, r: i64) -> Complex64 {
    let kf = k as f64;
    let mut total = Complex64::zero();
    for m in -rows..=rows {
        let c = tau * m as f64;
        let f = |x: f64| (c + x).powi(-k);
        let mut row = Complex64::zero();
        for n in -r..=r {
            if m == 0 && n == 0 {
                continue;
            }
            row += f(n as f64);
        }
        // Σ_{n>r} g(n) ≈ ∫_r^∞ g − g(r)/2 − g'(r)/12 + g'''(r)/720 for g(x) = (c ± x)^{-k}
        for s in [1.0, -1.0] {
            let base = c * s + r as f64;
            let integral = base.powf(1.0 - kf) / (kf - 1.0);
            let g = base.powf(-kf);
            let g1 = -kf * base.powf(-kf - 1.0);
            let g3 = -kf * (kf + 1.0) * (kf + 2.0) * base.powf(-kf - 3.0);
            let tail = integral - g / 2.0 - g1 / 12.0 + g3 / 720.0;
            row += if k % 2 == 0 { tail } else { tail * s };
        }
        total += row;
    }
    total
}

/// `p(n)` for `n ≤ len` from Euler's pentagonal recursion.
pub fn pentagonal_partitions(len: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); len + 1];
    p[0] = BigInt::one();
    for n in 1..=len {
        let mut acc = BigInt::zero();
        let mut i: i64 = 1;
        loop {
            let g1 = (i * (3 * i - 1) / 2) as usize;
            if g1 > n {
                break;
            }
            let sign = if i % 2 == 1 { 1 } else { -1 };
            acc += &p[n - g1] * sign;
            let g2 = (i * (3 * i + 1) / 2) as usize;
            if g2 <= n {
                acc += &p[n - g2] * sign;
            }
            i += 1;
        }
        p[n] = acc;
    }
    p
}

//! Normalized Eisenstein series `E_k = G_k/(2πi)^k` and the operator `∂_k`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::bernoulli::bernoulli_value;
use crate::arith::rational::{ceil_to_i64, factorial};
use crate::arith::{CycQ, Rational};
use crate::error::{Error, Result};
use crate::series::{Puiseux, ThetaScale};

/// `σ_p(n)` for `n < len`.
pub fn sigma(p: u32, len: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); len];
    for d in 1..len {
        let dp = num_traits::pow(BigInt::from(d), p as usize);
        let mut m = d;
        while m < len {
            s[m] += &dp;
            m += d;
        }
    }
    s
}

/// `−B_k(0)/k! + (2/(k−1)!) Σ σ_{k−1}(n) q^n` for even `k >= 2`.
pub fn eisenstein(k: i64, trunc: &Rational) -> Result<Puiseux> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::BadWeight(k));
    }
    let ku = k as u32;
    let len = ceil_to_i64(trunc).max(0).to_usize().unwrap_or(0);
    let s = sigma(ku - 1, len.max(1));
    let two_over = Rational::new(BigInt::from(2), factorial(ku - 1));
    let mut coeffs: Vec<CycQ> = s
        .iter()
        .map(|v| CycQ::from_rational(&(&two_over * Rational::from_integer(v.clone()))))
        .collect();
    coeffs[0] = CycQ::from_rational(
        &(-bernoulli_value(k as usize, &Rational::zero()) / Rational::from_integer(factorial(ku))),
    );
    Ok(Puiseux::new(
        1,
        Rational::zero(),
        coeffs,
        Some(trunc.clone()),
    ))
}

/// `∂_k f = θf + k E₂ f`, with `E₂` expanded far enough to cover `f`'s window.
pub fn del_k(f: &Puiseux, k: i64) -> Puiseux {
    let theta = f.theta(ThetaScale::Full);
    if k == 0 {
        return theta;
    }
    let rel = match (f.trunc(), f.valuation()) {
        (Some(tr), Some(v)) => tr - v,
        (Some(tr), None) => tr - f.leading_exponent(),
        (None, _) => {
            // exact f: the product is only known to the E₂ truncation
            Rational::from_integer(BigInt::from(f.len() as i64 + 1))
        }
    };
    let e2 = eisenstein(2, &rel.ceil().max(Rational::zero())).expect("weight 2 is valid");
    let scaled = e2.mul(f).scale(&Rational::from_integer(BigInt::from(k)));
    theta.add(&scaled)
}

//! Fixed-point complex numbers for high-precision embeddings of cyclotomic
//! elements.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;

const GUARD_BITS: u32 = 32;

/// `(re + i·im) / 2^bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedComplex {
    pub re: BigInt,
    pub im: BigInt,
    pub bits: u32,
}

fn atan_inv(x: u64, prec: u32) -> BigInt {
    // atan(1/x) = Σ (-1)^k / ((2k+1) x^{2k+1})
    let one = BigInt::one() << prec;
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = &one / &x;
    let mut acc = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
        power /= &x2;
        k += 1;
    }
    acc
}

fn pi_fixed(prec: u32) -> BigInt {
    atan_inv(5, prec) * 16 - atan_inv(239, prec) * 4
}

/// `(cos a, sin a)` for a fixed-point angle `a` with `|a| <= π`.
fn cos_sin(angle: &BigInt, prec: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << prec;
    let a2 = (angle * angle) >> prec;
    let mut cos = BigInt::zero();
    let mut term = one;
    let mut k = 0u64;
    while !term.is_zero() {
        cos += &term;
        term = -((&term * &a2) >> prec) / BigInt::from((2 * k + 1) * (2 * k + 2));
        k += 1;
    }
    let mut sin = BigInt::zero();
    let mut term = angle.clone();
    let mut k = 0u64;
    while !term.is_zero() {
        sin += &term;
        term = -((&term * &a2) >> prec) / BigInt::from((2 * k + 2) * (2 * k + 3));
        k += 1;
    }
    (cos, sin)
}

impl FixedComplex {
    /// Embeds `Σ coeffs[e] ζ_n^e`.
    pub fn embed(coeffs: &[Rational], n: u32, bits: u32) -> Self {
        let prec = bits + GUARD_BITS;
        let pi = pi_fixed(prec);
        let mut re = BigInt::zero();
        let mut im = BigInt::zero();
        for (e, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // reduce e/n into (-1/2, 1/2] so the angle stays within [-π, π]
            let mut e = e as i64;
            if 2 * e > n as i64 {
                e -= n as i64;
            }
            let angle = (&pi * BigInt::from(2 * e)) / BigInt::from(n);
            let (cos, sin) = cos_sin(&angle, prec);
            re += (c.numer() * cos) / c.denom();
            im += (c.numer() * sin) / c.denom();
        }
        FixedComplex {
            re: round_shift(&re, GUARD_BITS),
            im: round_shift(&im, GUARD_BITS),
            bits,
        }
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            scaled_to_f64(&self.re, self.bits),
            scaled_to_f64(&self.im, self.bits),
        )
    }

    pub fn re_rational(&self) -> Rational {
        Rational::new(self.re.clone(), BigInt::one() << self.bits)
    }

    pub fn im_rational(&self) -> Rational {
        Rational::new(self.im.clone(), BigInt::one() << self.bits)
    }

    /// Decimal rendering of both parts with `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        (
            decimal(&self.re, self.bits, digits),
            decimal(&self.im, self.bits, digits),
        )
    }
}

fn round_shift(v: &BigInt, s: u32) -> BigInt {
    let half = BigInt::one() << (s - 1);
    if v.is_negative() {
        -((-v + half) >> s)
    } else {
        (v + half) >> s
    }
}

fn scaled_to_f64(v: &BigInt, bits: u32) -> f64 {
    let excess = v.bits().saturating_sub(60) as u32;
    let shift = excess.min(bits);
    let m = (v >> shift).to_f64().unwrap_or(0.0);
    m * 2f64.powi(shift as i32 - bits as i32)
}

fn decimal(v: &BigInt, bits: u32, digits: usize) -> String {
    let neg = v.is_negative();
    let scaled = (v.abs() * num_traits::pow(BigInt::from(10), digits)) >> bits;
    let s = format!("{:0>width$}", scaled.to_string(), width = digits + 1);
    let (int_part, frac_part) = s.split_at(s.len() - digits);
    format!("{}{}.{}", if neg { "-" } else { "" }, int_part, frac_part)
}

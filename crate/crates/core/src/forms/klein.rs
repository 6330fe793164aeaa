//! Klein forms `g_a` and Hecke forms `h_a / (2πi)` for `a = (j/M, l/N)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::bernoulli::bernoulli_value;
use super::qk::GeometricAccumulator;
use crate::arith::rational::ceil_to_i64;
use crate::arith::{CycQ, Rational};
use crate::error::{Error, Result};
use crate::modular::TorsionPair;
use crate::series::Puiseux;

/// Multiplies the dense series `a` (step `1/T`) by `1 − c·q^{shift/T}` in place.
fn mul_binomial(a: &mut [CycQ], shift: usize, c: &CycQ) {
    if shift == 0 {
        let f = CycQ::one() - c;
        for x in a.iter_mut() {
            *x = &*x * &f;
        }
        return;
    }
    for i in (shift..a.len()).rev() {
        if !a[i - shift].is_zero() {
            let t = &a[i - shift] * c;
            a[i] = &a[i] - &t;
        }
    }
}

/// `g_a(τ)` to relative order `trunc` past its leading exponent `B₂(a₁)/2`.
pub fn klein_series(pair: &TorsionPair, trunc: &Rational) -> Result<Puiseux> {
    if pair.is_trivial() {
        return Err(Error::UndefinedAtLatticePoint);
    }
    let (j, m) = pair.jm();
    let (l, n) = pair.ln();
    let a1 = Rational::new(BigInt::from(j), BigInt::from(m));
    let lead = bernoulli_value(2, &a1) / Rational::from_integer(BigInt::from(2));
    let len = ceil_to_i64(&(trunc * Rational::from_integer(BigInt::from(m)))).max(1) as usize;
    let lam = pair.lambda();
    let lam_inv = lam.inv()?;
    let mut coeffs = vec![CycQ::zero(1); len];
    coeffs[0] = -CycQ::root(l * (j - m as i64), 2 * m * n);
    let (mu, ju) = (m as usize, j as usize);
    mul_binomial(&mut coeffs, ju, &lam);
    let mut s = 1usize;
    while s * mu - ju < len {
        if s * mu + ju < len {
            mul_binomial(&mut coeffs, s * mu + ju, &lam);
        }
        mul_binomial(&mut coeffs, s * mu - ju, &lam_inv);
        s += 1;
    }
    let end = &lead + trunc;
    Ok(Puiseux::new(m, lead, coeffs, Some(end)))
}

/// `h_a(τ) / (2πi)` to exponents below `trunc`.
pub fn hecke_series(pair: &TorsionPair, trunc: &Rational) -> Result<Puiseux> {
    if pair.is_trivial() {
        return Err(Error::UndefinedAtLatticePoint);
    }
    let (j, m) = pair.jm();
    let (l, n) = pair.ln();
    let a1 = Rational::new(BigInt::from(j), BigInt::from(m));
    let mut acc = GeometricAccumulator::new(m, n, trunc);
    acc.add_constant(&CycQ::from_rational(
        &(&a1 - Rational::new(1.into(), 2.into())),
    ));
    let minus = -Rational::one();
    acc.add_geometric(&minus, l, &a1)?;
    let mut s = 1i64;
    loop {
        let sr = Rational::from_integer(BigInt::from(s));
        let lo = &sr - &a1;
        if lo >= *trunc {
            break;
        }
        acc.add_geometric(&minus, l, &(&sr + &a1))?;
        acc.add_geometric(&Rational::one(), -l, &lo)?;
        s += 1;
    }
    Ok(acc.finish(Rational::zero()))
}

/// Both forms at once.
pub fn klein_hecke_series(pair: &TorsionPair, trunc: &Rational) -> Result<(Puiseux, Puiseux)> {
    Ok((klein_series(pair, trunc)?, hecke_series(pair, trunc)?))
}

/// `θ(g)/g`, the q-logarithmic derivative of the Klein form.
pub fn klein_log_derivative(pair: &TorsionPair, trunc: &Rational) -> Result<Puiseux> {
    let g = klein_series(pair, trunc)?;
    let dg = g.theta(crate::series::ThetaScale::Full);
    Ok(dg.mul(&g.inv()?).truncate(trunc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use crate::forms::qk_series;

    #[test]
    fn leading_exponent_at_half() {
        let p = TorsionPair::from_parts(1, 2, 0, 1);
        let g = klein_series(&p, &int(5)).unwrap();
        assert_eq!(g.valuation(), Some(rat(-1, 24)));
        assert!(matches!(
            klein_series(&TorsionPair::from_parts(0, 1, 0, 1), &int(5)),
            Err(Error::UndefinedAtLatticePoint)
        ));
    }

    #[test]
    fn hecke_is_minus_q1() {
        for p in [
            TorsionPair::from_parts(1, 2, 0, 1),
            TorsionPair::from_parts(1, 3, 1, 3),
            TorsionPair::from_parts(1, 1, 1, 4),
            TorsionPair::from_parts(3, 4, 1, 2),
        ] {
            let h = hecke_series(&p, &int(12)).unwrap();
            let q1 = qk_series(1, &p, &int(12)).unwrap();
            assert!(h.agrees_with(&q1.neg()), "{p}");
        }
    }

    #[test]
    fn klein_log_derivative_is_minus_q2() {
        for p in [
            TorsionPair::from_parts(1, 3, 1, 3),
            TorsionPair::from_parts(1, 2, 0, 1),
            TorsionPair::from_parts(1, 1, 1, 2),
        ] {
            let d = klein_log_derivative(&p, &int(10)).unwrap();
            let q2 = qk_series(2, &p, &int(10)).unwrap();
            assert!(d.agrees_with(&q2.neg()), "{p}: {d} vs {q2}");
        }
    }
}

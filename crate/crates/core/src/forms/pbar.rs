//! `P̄_k(μ, λ, w, τ)` as a series in `w` with q-series coefficients, and the
//! residue identity linking it to `Q_k`.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::bernoulli::bernoulli_value;
use super::qk::qk_series;
use crate::arith::rational::{ceil_to_i64, factorial, rpow};
use crate::arith::{CycQ, Rational};
use crate::error::{Error, Result};
use crate::modular::TorsionPair;
use crate::series::{BiSeries, Iota, Puiseux, TailBound};

/// `1/(1 − λ q^n)` expanded in nonnegative powers of `q` (the rewrite
/// `−Σ_{s>=1} λ^{−s} q^{s|n|}` for `n < 0`), times `scale`.
fn geometric_coefficient(
    scale: &Rational,
    n: &Rational,
    l: i64,
    big_n: u32,
    t: u32,
    trunc: &Rational,
) -> Result<Puiseux> {
    let lead = Rational::zero();
    if n.is_zero() {
        let lam = CycQ::root(l, big_n);
        let inv = (CycQ::one() - lam)
            .inv()
            .map_err(|_| Error::UndefinedAtTrivialPair)?;
        return Ok(Puiseux::constant(inv.scale(scale), Some(trunc.clone())));
    }
    let (first, dir, e) = if n.is_positive() {
        (0i64, 1i64, n.clone())
    } else {
        (1i64, -1i64, -n)
    };
    let sign = if dir > 0 { scale.clone() } else { -scale };
    let len = ceil_to_i64(&(trunc * Rational::from_integer(BigInt::from(t)))).max(0) as usize;
    let mut coeffs = vec![CycQ::zero(1); len.max(1)];
    let mut s = first;
    loop {
        let exp = &e * Rational::from_integer(BigInt::from(s));
        if exp >= *trunc {
            break;
        }
        let idx = (exp * Rational::from_integer(BigInt::from(t)))
            .to_integer()
            .to_usize()
            .expect("index");
        coeffs[idx] = &coeffs[idx] + &CycQ::root(dir * l * s, big_n).scale(&sign);
        s += 1;
    }
    Ok(Puiseux::new(t, lead, coeffs, Some(trunc.clone())))
}

/// `(1/(k−1)!) Σ′_{n ∈ j/M + Z} n^{k−1} w^n / (1 − λ q^n)` for the offsets
/// `n − j/M ∈ window`, each coefficient to exponents below `trunc`.
pub fn pbar_series(
    k: u32,
    pair: &TorsionPair,
    window: RangeInclusive<i64>,
    trunc: &Rational,
) -> Result<BiSeries> {
    let below = TailBound::new(Rational::zero(), Rational::one());
    let above = TailBound::new(Rational::zero(), Rational::zero());
    let (j, m) = pair.jm();
    let jm = Rational::new(BigInt::from(j), BigInt::from(m));
    if k == 0 {
        return Ok(BiSeries::new(
            jm,
            0,
            Vec::new(),
            Some(trunc.clone()),
            below.clone(),
            below,
        ));
    }
    if window.is_empty() {
        return Err(Error::WindowTooSmall("empty w-window".into()));
    }
    let (l, big_n) = pair.ln();
    let kf = Rational::from_integer(factorial(k - 1));
    let trivial = pair.is_trivial();
    let lo = *window.start();
    let coeffs = window
        .map(|r| {
            let n = &jm + Rational::from_integer(BigInt::from(r));
            if n.is_zero() && trivial {
                return Ok(Puiseux::zero(Some(trunc.clone())));
            }
            let c = rpow(&n, k - 1) / &kf;
            if c.is_zero() {
                return Ok(Puiseux::zero(Some(trunc.clone())));
            }
            geometric_coefficient(&c, &n, l, big_n, m, trunc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BiSeries::new(
        jm,
        lo,
        coeffs,
        Some(trunc.clone()),
        below,
        above,
    ))
}

/// Both sides of the residue identity for `Q_k`.
#[derive(Clone, Debug)]
pub struct ResidueIdentity {
    /// `Res₁ − λ Res₂ − Q_k`, a series that should be the constant below.
    pub residues_minus_q: Puiseux,
    /// `B_k(1 − m + j/M)/k!`.
    pub expected_constant: Rational,
}

impl ResidueIdentity {
    pub fn holds(&self) -> bool {
        let c = Puiseux::constant(
            CycQ::from_rational(&self.expected_constant),
            self.residues_minus_q.trunc().cloned(),
        );
        self.residues_minus_q.agrees_with(&c)
    }
}

/// Evaluates
/// `Res_z ι_{z,z₁}(z−z₁)^{-1} z₁^{m−j/M} z^{−m+j/M} P̄_k(z₁/z) −
///  Res_z λ ι_{z₁,z}(z−z₁)^{-1} z₁^{m−j/M} z^{−m+j/M} P̄_k(z₁q/z) − Q_k`
/// to exponents below `trunc`, with the normalization `B_k(1−m+j/M)/k!`.
pub fn residue_identity(
    k: u32,
    pair: &TorsionPair,
    m: i64,
    trunc: &Rational,
) -> Result<ResidueIdentity> {
    if pair.is_trivial() {
        return Err(Error::UndefinedAtTrivialPair);
    }
    let (j, big_m) = pair.jm();
    let jm = Rational::new(BigInt::from(j), BigInt::from(big_m));
    let mi = Rational::from_integer(BigInt::from(m));
    let a = &mi - &jm;
    let b = &jm - &mi;
    let reach = ceil_to_i64(trunc) + m.abs() + 2;
    let pbar = pbar_series(k, pair, -reach..=reach, trunc)?;
    let q = qk_series(k, pair, trunc)?;
    let expected = bernoulli_value(k as usize, &(Rational::one() - &mi + &jm))
        / Rational::from_integer(factorial(k));
    if k == 0 {
        return Ok(ResidueIdentity {
            residues_minus_q: q.neg(),
            expected_constant: expected,
        });
    }
    let (e1, r1) = pbar.ratio_residue(Iota::ZFirst, &a, &b)?;
    let shifted = pbar.shift_q(&Rational::one()).scale(&pair.lambda());
    let (e2, r2) = shifted.ratio_residue(Iota::Z1First, &a, &b)?;
    debug_assert!(e1.is_zero() && e2.is_zero());
    Ok(ResidueIdentity {
        residues_minus_q: r1.sub(&r2).sub(&q).truncate(trunc),
        expected_constant: expected,
    })
}

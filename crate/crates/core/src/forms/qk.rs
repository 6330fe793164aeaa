//! Twisted Eisenstein series `Q_k(μ, λ, τ)` as exact Puiseux series.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::bernoulli::bernoulli_value;
use crate::arith::rational::{ceil_to_i64, factorial, rpow};
use crate::arith::{CycQ, Rational, RootSum};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::modular::TorsionPair;
use crate::series::Puiseux;

/// Deviation flag: the first denominator is taken as `1 − λq^{n+j/M}`.
pub const QK_DENOMINATOR_FLAG: &str = "qk_first_denominator_uses_n_plus_j_over_M";

/// Accumulates `c · x/(1 − x)` terms with `x = λ^r q^e` onto the grid `q^{i/T}`.
pub(crate) struct GeometricAccumulator {
    t: u32,
    n: u32,
    trunc: Rational,
    grid: Vec<RootSum>,
    constant: CycQ,
}

impl GeometricAccumulator {
    pub(crate) fn new(t: u32, n: u32, trunc: &Rational) -> Self {
        let len = ceil_to_i64(&(trunc * Rational::from_integer(BigInt::from(t)))).max(0) as usize;
        GeometricAccumulator {
            t,
            n,
            trunc: trunc.clone(),
            grid: (0..len).map(|_| RootSum::new(n)).collect(),
            constant: CycQ::zero(n),
        }
    }

    fn index(&self, e: &Rational) -> Option<usize> {
        if e >= &self.trunc {
            return None;
        }
        let i = e * Rational::from_integer(BigInt::from(self.t));
        debug_assert!(i.is_integer(), "exponent off the grid");
        i.to_integer().to_usize()
    }

    pub(crate) fn add_constant(&mut self, c: &CycQ) {
        self.constant = &self.constant + c;
    }

    /// Adds `c · x/(1 − x)` for `x = ζ_n^r q^e`, expanded in nonnegative powers of `q`.
    pub(crate) fn add_geometric(&mut self, c: &Rational, r: i64, e: &Rational) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        if e.is_zero() {
            let x = CycQ::root(r, self.n);
            let denom = CycQ::one() - &x;
            if denom.is_zero() {
                return Err(Error::UndefinedAtTrivialPair);
            }
            self.constant = &self.constant + &(&x * &denom.inv()?).scale(c);
            return Ok(());
        }
        let (sign, r, e) = if e.is_negative() {
            // x/(1−x) = −1 − Σ_{s>=1} x^{−s}
            self.constant = &self.constant - &CycQ::from_rational(c);
            (-1, -r, -e)
        } else {
            (1, r, e.clone())
        };
        let c = if sign < 0 { -c } else { c.clone() };
        let mut s = 1i64;
        loop {
            let exp = &e * Rational::from_integer(BigInt::from(s));
            match self.index(&exp) {
                Some(i) => self.grid[i].add(r * s, &c),
                None => break,
            }
            s += 1;
        }
        Ok(())
    }

    pub(crate) fn finish(self, lead: Rational) -> Puiseux {
        let mut coeffs = Exec::default().map(&self.grid, |rs| {
            if rs.is_zero() {
                CycQ::zero(1)
            } else {
                rs.to_cycq()
            }
        });
        if coeffs.is_empty() {
            coeffs.push(CycQ::zero(1));
        }
        coeffs[0] = &coeffs[0] + &self.constant;
        Puiseux::new(self.t, lead, coeffs, Some(self.trunc))
    }
}

/// `Q_k(μ, λ, τ)` to exponents below `trunc` (in `q`), branching `M`.
pub fn qk_series(k: u32, pair: &TorsionPair, trunc: &Rational) -> Result<Puiseux> {
    let (j, m) = pair.jm();
    qk_series_rep(k, j, m, pair.l_over_n(), trunc)
}

/// `Q_k` built from an arbitrary integer representative `j` of `j/M`.
pub fn qk_series_rep(
    k: u32,
    j: i64,
    m: u32,
    l_over_n: &Rational,
    trunc: &Rational,
) -> Result<Puiseux> {
    if m == 0 {
        return Err(Error::InvalidArgument("M must be positive".into()));
    }
    let trivial_mu = j.rem_euclid(m as i64) == 0;
    if trivial_mu && l_over_n.is_integer() {
        return Err(Error::UndefinedAtTrivialPair);
    }
    if k == 0 {
        return Ok(Puiseux::constant(CycQ::from_int(-1), Some(trunc.clone())));
    }
    let n: u32 = l_over_n.denom().to_u32().expect("N fits");
    let l: i64 = (l_over_n.numer() % l_over_n.denom())
        .to_i64()
        .expect("l fits");
    let jm = Rational::new(BigInt::from(j), BigInt::from(m));
    let kf = Rational::from_integer(factorial(k - 1));
    let sign_k = if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };
    let mut acc = GeometricAccumulator::new(m, n, trunc);

    // Σ_{n>=0} λ (n+j/M)^{k−1} q^{n+j/M} / (1 − λ q^{n+j/M})
    let mut i = 0i64;
    loop {
        let e = Rational::from_integer(BigInt::from(i)) + &jm;
        if e >= *trunc {
            break;
        }
        let c = rpow(&e, k - 1) / &kf;
        acc.add_geometric(&c, l, &e)?;
        i += 1;
    }
    // (−1)^k Σ_{n>=1} λ^{-1} (n−j/M)^{k−1} q^{n−j/M} / (1 − λ^{-1} q^{n−j/M})
    let mut i = 1i64;
    loop {
        let e = Rational::from_integer(BigInt::from(i)) - &jm;
        if e >= *trunc {
            break;
        }
        let c = &sign_k * rpow(&e, k - 1) / &kf;
        acc.add_geometric(&c, -l, &e)?;
        i += 1;
    }
    let bk = bernoulli_value(k as usize, &jm) / Rational::from_integer(factorial(k));
    acc.add_constant(&CycQ::from_rational(&-bk));
    Ok(acc.finish(Rational::zero()))
}

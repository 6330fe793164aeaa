//! Truncated Puiseux series `Σ_n a_n q^{λ₀ + n/T}` with cyclotomic coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::rational::{ceil_to_i64, format_rational};
use crate::arith::{CycQ, Rational};
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Products where both operands exceed this many terms switch from
/// schoolbook convolution to Karatsuba.
pub const KARATSUBA_THRESHOLD: usize = 2048;

/// Which derivation `theta` applies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ThetaScale {
    /// `q d/dq`: `a_r q^r ↦ r a_r q^r`.
    #[default]
    #[serde(rename = "full")]
    Full,
    /// `q_{1/T} d/dq_{1/T}`: `a_r q^r ↦ rT a_r q^r`.
    #[serde(rename = "one_over_T")]
    OneOverT,
}

/// Truncated Puiseux series.
///
/// `coeffs[n]` is the coefficient of `q^{lead + n/t}`. With `trunc = Some(r)`
/// every exponent `>= r` is unknown and `coeffs` covers exactly the grid
/// points below `r`; with `trunc = None` the series is an exact finite sum.
#[derive(Clone, PartialEq)]
pub struct Puiseux {
    t: u32,
    lead: Rational,
    coeffs: Vec<CycQ>,
    trunc: Option<Rational>,
}

fn min_trunc(a: &Option<Rational>, b: &Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (None, None) => None,
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (Some(x), Some(y)) => Some(x.min(y).clone()),
    }
}

fn lcm_with_denom(t: u32, r: &Rational) -> u32 {
    let d: u32 = r.denom().try_into().expect("branching fits in u32");
    t.lcm(&d)
}

impl Puiseux {
    /// Builds a series, trimming or zero-padding `coeffs` to the truncation window.
    pub fn new(t: u32, lead: Rational, mut coeffs: Vec<CycQ>, trunc: Option<Rational>) -> Self {
        assert!(t >= 1, "branching must be positive");
        if let Some(tr) = &trunc {
            let len = Self::window_len(t, &lead, tr);
            coeffs.resize(len, CycQ::zero(1));
        }
        Puiseux {
            t,
            lead,
            coeffs,
            trunc,
        }
    }

    /// Builds `Σ_{n} f(n) q^{lead + n/t}` over the window below `trunc`.
    pub fn from_fn(t: u32, lead: Rational, trunc: Rational, f: impl Fn(usize) -> CycQ) -> Self {
        let len = Self::window_len(t, &lead, &trunc);
        let coeffs = (0..len).map(f).collect();
        Self::new(t, lead, coeffs, Some(trunc))
    }

    fn window_len(t: u32, lead: &Rational, trunc: &Rational) -> usize {
        let span = (trunc - lead) * Rational::from_integer(BigInt::from(t));
        ceil_to_i64(&span).max(0) as usize
    }

    pub fn zero(trunc: Option<Rational>) -> Self {
        Self::new(1, Rational::zero(), Vec::new(), trunc)
    }

    pub fn constant(c: CycQ, trunc: Option<Rational>) -> Self {
        Self::new(1, Rational::zero(), vec![c], trunc)
    }

    pub fn one() -> Self {
        Self::constant(CycQ::one(), None)
    }

    /// `c · q^exp`, exact unless `trunc` is given.
    pub fn monomial(c: CycQ, exp: Rational, trunc: Option<Rational>) -> Self {
        let t: u32 = exp.denom().try_into().expect("branching fits in u32");
        Self::new(t, exp, vec![c], trunc)
    }

    pub fn branching(&self) -> u32 {
        self.t
    }

    pub fn leading_exponent(&self) -> &Rational {
        &self.lead
    }

    pub fn trunc(&self) -> Option<&Rational> {
        self.trunc.as_ref()
    }

    pub fn coeffs(&self) -> &[CycQ] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    /// Exponent of `coeffs[n]`.
    pub fn exponent(&self, n: usize) -> Rational {
        &self.lead + Rational::new(BigInt::from(n), BigInt::from(self.t))
    }

    /// Iterates over `(exponent, coefficient)` for nonzero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, &CycQ)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(n, c)| (self.exponent(n), c))
    }

    /// Coefficient of `q^exp`; `None` when `exp` lies at or beyond the truncation.
    pub fn coefficient(&self, exp: &Rational) -> Option<CycQ> {
        if let Some(tr) = &self.trunc {
            if exp >= tr {
                return None;
            }
        }
        let offset = (exp - &self.lead) * Rational::from_integer(BigInt::from(self.t));
        if !offset.is_integer() || offset < Rational::zero() {
            return Some(CycQ::zero(1));
        }
        let n = offset.to_integer().to_usize().unwrap_or(usize::MAX);
        Some(self.coeffs.get(n).cloned().unwrap_or_else(|| CycQ::zero(1)))
    }

    /// Least exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<Rational> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|n| self.exponent(n))
    }

    /// Lowest exponent the product bookkeeping may rely on: the valuation, or the
    /// truncation order for a series with no known nonzero term.
    fn order_bound(&self) -> Option<Rational> {
        self.valuation().or_else(|| self.trunc.clone())
    }

    /// lcm of the coefficient conductors.
    pub fn conductor(&self) -> u32 {
        self.coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .fold(1u32, |acc, c| acc.lcm(&c.conductor()))
    }

    /// Drops leading zero coefficients.
    pub fn normalized(&self) -> Self {
        let skip = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len());
        if skip == 0 {
            return self.clone();
        }
        let lead = match (skip == self.coeffs.len(), &self.trunc) {
            (true, Some(tr)) => tr.clone(),
            (true, None) => Rational::zero(),
            _ => self.exponent(skip),
        };
        Self::new(
            self.t,
            lead,
            self.coeffs[skip..].to_vec(),
            self.trunc.clone(),
        )
    }

    /// Re-expresses the series on a finer grid `q^{1/t'}`, `t | t'`.
    pub fn with_branching(&self, t: u32) -> Self {
        if t == self.t {
            return self.clone();
        }
        assert!(
            t.is_multiple_of(self.t),
            "branching {t} is not a multiple of {}",
            self.t
        );
        let step = (t / self.t) as usize;
        let mut coeffs = vec![CycQ::zero(1); self.coeffs.len().saturating_sub(1) * step + 1];
        if self.coeffs.is_empty() {
            coeffs.clear();
        }
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs[n * step] = c.clone();
        }
        Self::new(t, self.lead.clone(), coeffs, self.trunc.clone())
    }

    /// Moves the grid origin down to `lead`, prepending zeros.
    fn with_lead(&self, lead: &Rational) -> Self {
        let shift = (&self.lead - lead) * Rational::from_integer(BigInt::from(self.t));
        assert!(
            shift.is_integer() && shift >= Rational::zero(),
            "incompatible grid"
        );
        let k = shift.to_integer().to_usize().expect("shift fits");
        if k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![CycQ::zero(1); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(self.t, lead.clone(), coeffs, self.trunc.clone())
    }

    /// Brings two series onto one grid with a shared branching and origin.
    fn align(a: &Puiseux, b: &Puiseux) -> (Puiseux, Puiseux) {
        let diff = &a.lead - &b.lead;
        let t = lcm_with_denom(a.t.lcm(&b.t), &diff);
        let lead = a.lead.clone().min(b.lead.clone());
        (
            a.with_branching(t).with_lead(&lead),
            b.with_branching(t).with_lead(&lead),
        )
    }

    fn add_sub(&self, other: &Puiseux, sign: i32) -> Puiseux {
        let (a, b) = Self::align(self, other);
        let trunc = min_trunc(&a.trunc, &b.trunc);
        let len = a.coeffs.len().max(b.coeffs.len());
        let zero = CycQ::zero(1);
        let coeffs = (0..len)
            .map(|n| {
                let x = a.coeffs.get(n).unwrap_or(&zero);
                let y = b.coeffs.get(n).unwrap_or(&zero);
                if sign > 0 {
                    x + y
                } else {
                    x - y
                }
            })
            .collect();
        Puiseux::new(a.t, a.lead, coeffs, trunc)
    }

    pub fn add(&self, other: &Puiseux) -> Puiseux {
        self.add_sub(other, 1)
    }

    pub fn sub(&self, other: &Puiseux) -> Puiseux {
        self.add_sub(other, -1)
    }

    pub fn neg(&self) -> Puiseux {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, r: &Rational) -> Puiseux {
        let coeffs = self.coeffs.iter().map(|c| c.scale(r)).collect();
        Puiseux::new(self.t, self.lead.clone(), coeffs, self.trunc.clone())
    }

    pub fn scalar_mul(&self, c: &CycQ) -> Puiseux {
        let coeffs = self.coeffs.iter().map(|x| x * c).collect();
        Puiseux::new(self.t, self.lead.clone(), coeffs, self.trunc.clone())
    }

    /// Multiplies by `q^r`.
    pub fn shift(&self, r: &Rational) -> Puiseux {
        let t = lcm_with_denom(self.t, r);
        let s = self.with_branching(t);
        Puiseux::new(t, &s.lead + r, s.coeffs, s.trunc.as_ref().map(|tr| tr + r))
    }

    /// Substitutes `q ↦ q^k` (e.g. `f(τ) ↦ f(kτ)`).
    pub fn dilate(&self, k: u32) -> Puiseux {
        let kk = Rational::from_integer(BigInt::from(k));
        let mut coeffs = vec![CycQ::zero(1); self.coeffs.len().saturating_sub(1) * k as usize + 1];
        if self.coeffs.is_empty() {
            coeffs.clear();
        }
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs[n * k as usize] = c.clone();
        }
        Puiseux::new(
            self.t,
            &self.lead * &kk,
            coeffs,
            self.trunc.as_ref().map(|tr| tr * &kk),
        )
    }

    /// Restricts to exponents below `trunc` (never extends).
    pub fn truncate(&self, trunc: &Rational) -> Puiseux {
        let tr = min_trunc(&self.trunc, &Some(trunc.clone()));
        let mut coeffs = self.coeffs.clone();
        if let Some(tr) = &tr {
            coeffs.truncate(Self::window_len(self.t, &self.lead, tr));
        }
        Puiseux::new(self.t, self.lead.clone(), coeffs, tr)
    }

    pub fn mul(&self, other: &Puiseux) -> Puiseux {
        self.mul_with(other, Exec::default())
    }

    /// Product with an explicit execution strategy for the convolution.
    pub fn mul_with(&self, other: &Puiseux, exec: Exec) -> Puiseux {
        let t = self.t.lcm(&other.t);
        let a = self.with_branching(t);
        let b = other.with_branching(t);
        let lead = &a.lead + &b.lead;
        let trunc = match (&a.trunc, &b.trunc) {
            (None, None) => None,
            (Some(ta), None) => Some(ta + b.order_bound().unwrap_or_else(|| ta.clone())),
            (None, Some(tb)) => Some(tb + a.order_bound().unwrap_or_else(|| tb.clone())),
            (Some(ta), Some(tb)) => {
                let x = ta
                    + b.order_bound()
                        .expect("truncated series has an order bound");
                let y = tb
                    + a.order_bound()
                        .expect("truncated series has an order bound");
                Some(x.min(y))
            }
        };
        let full_len = if a.coeffs.is_empty() || b.coeffs.is_empty() {
            0
        } else {
            a.coeffs.len() + b.coeffs.len() - 1
        };
        let out_len = match &trunc {
            Some(tr) => Self::window_len(t, &lead, tr).min(full_len),
            None => full_len,
        };
        let m = a.conductor().lcm(&b.conductor());
        let la: Vec<CycQ> = a.coeffs.iter().take(out_len).map(|c| c.lift(m)).collect();
        let lb: Vec<CycQ> = b.coeffs.iter().take(out_len).map(|c| c.lift(m)).collect();
        let coeffs = if la.len().min(lb.len()) > KARATSUBA_THRESHOLD {
            let mut full = karatsuba(&la, &lb, 64, m);
            full.truncate(out_len);
            full
        } else {
            convolve(&la, &lb, out_len, exec, m)
        };
        Puiseux::new(t, lead, coeffs, trunc)
    }

    /// Multiplicative inverse; requires an invertible leading coefficient.
    pub fn inv(&self) -> Result<Puiseux> {
        let s = self.normalized();
        let a0 = s.coeffs.first().ok_or(Error::NonInvertibleLeadingTerm)?;
        if a0.is_zero() {
            return Err(Error::NonInvertibleLeadingTerm);
        }
        let tr = match &s.trunc {
            Some(tr) => tr.clone(),
            None if s.coeffs.len() == 1 => {
                return Ok(Puiseux::new(s.t, -&s.lead, vec![a0.inv()?], None));
            }
            None => {
                return Err(Error::TruncationTooSmall(
                    "inverse of an exact non-monomial series needs a truncation".into(),
                ))
            }
        };
        let rel = &tr - &s.lead;
        let lead = -&s.lead;
        let new_trunc = &lead + &rel;
        let len = Self::window_len(s.t, &lead, &new_trunc);
        let m = s.conductor();
        let a: Vec<CycQ> = s.coeffs.iter().map(|c| c.lift(m)).collect();
        let inv0 = a[0].inv()?;
        let mut b: Vec<CycQ> = Vec::with_capacity(len);
        for n in 0..len {
            if n == 0 {
                b.push(inv0.clone());
                continue;
            }
            let mut acc = CycQ::zero(m);
            for k in 1..=n.min(a.len() - 1) {
                if !a[k].is_zero() && !b[n - k].is_zero() {
                    acc = acc + &a[k] * &b[n - k];
                }
            }
            b.push(-(&acc * &inv0));
        }
        Ok(Puiseux::new(s.t, lead, b, Some(new_trunc)))
    }

    pub fn checked_div(&self, other: &Puiseux) -> Result<Puiseux> {
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power; negative exponents go through [`Puiseux::inv`].
    pub fn pow(&self, e: i64) -> Result<Puiseux> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Puiseux::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    pub fn theta(&self, scale: ThetaScale) -> Puiseux {
        let factor = match scale {
            ThetaScale::Full => Rational::one(),
            ThetaScale::OneOverT => Rational::from_integer(BigInt::from(self.t)),
        };
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if c.is_zero() {
                    c.clone()
                } else {
                    c.scale(&(self.exponent(n) * &factor))
                }
            })
            .collect();
        Puiseux::new(self.t, self.lead.clone(), coeffs, self.trunc.clone())
    }

    /// True when every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycQ::is_zero)
    }

    /// Equality of the known coefficients up to `min` of both truncations.
    pub fn agrees_with(&self, other: &Puiseux) -> bool {
        self.sub(other).is_zero()
    }

    /// All coefficients rational and all exponents integral.
    pub fn has_integral_exponents(&self) -> bool {
        self.terms().all(|(e, _)| e.is_integer())
    }
}

fn convolve(a: &[CycQ], b: &[CycQ], out_len: usize, exec: Exec, m: u32) -> Vec<CycQ> {
    if a.is_empty() || b.is_empty() {
        return vec![CycQ::zero(m); out_len];
    }
    exec.map_range(out_len, |k| {
        let lo = k.saturating_sub(b.len() - 1);
        let hi = k.min(a.len() - 1);
        let mut acc = CycQ::zero(m);
        if lo <= hi {
            for i in lo..=hi {
                let (x, y) = (&a[i], &b[k - i]);
                if !x.is_zero() && !y.is_zero() {
                    acc = acc + x * y;
                }
            }
        }
        acc
    })
}

/// Full product `a * b` by Karatsuba splitting, schoolbook below `base`.
pub(crate) fn karatsuba(a: &[CycQ], b: &[CycQ], base: usize, m: u32) -> Vec<CycQ> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a.len().max(b.len());
    if a.len().min(b.len()) <= base {
        return convolve(a, b, a.len() + b.len() - 1, Exec::Sequential, m);
    }
    let half = n / 2;
    let split = |v: &[CycQ]| -> (Vec<CycQ>, Vec<CycQ>) {
        let lo = v[..half.min(v.len())].to_vec();
        let hi = if v.len() > half {
            v[half..].to_vec()
        } else {
            Vec::new()
        };
        (lo, hi)
    };
    let (a0, a1) = split(a);
    let (b0, b1) = split(b);
    let add = |x: &[CycQ], y: &[CycQ]| -> Vec<CycQ> {
        let len = x.len().max(y.len());
        (0..len)
            .map(|i| match (x.get(i), y.get(i)) {
                (Some(p), Some(q)) => p + q,
                (Some(p), None) | (None, Some(p)) => p.clone(),
                (None, None) => unreachable!(),
            })
            .collect()
    };
    let z0 = karatsuba(&a0, &b0, base, m);
    let z2 = karatsuba(&a1, &b1, base, m);
    let z1 = karatsuba(&add(&a0, &a1), &add(&b0, &b1), base, m);
    let mut out = vec![CycQ::zero(m); a.len() + b.len() - 1];
    for (i, c) in z0.iter().enumerate() {
        out[i] = &out[i] + c;
    }
    for (i, c) in z2.iter().enumerate() {
        out[i + 2 * half] = &out[i + 2 * half] + c;
    }
    for i in 0..z1.len() {
        let mut mid = z1[i].clone();
        if let Some(c) = z0.get(i) {
            mid = mid - c;
        }
        if let Some(c) = z2.get(i) {
            mid = mid - c;
        }
        if i + half < out.len() {
            out[i + half] = &out[i + half] + &mid;
        } else {
            debug_assert!(mid.is_zero());
        }
    }
    out
}

impl fmt::Debug for Puiseux {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Puiseux {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})q^{}", format_rational(&e))?;
        }
        if first {
            write!(f, "0")?;
        }
        match &self.trunc {
            Some(tr) => write!(f, " + O(q^{})", format_rational(tr)),
            None => Ok(()),
        }
    }
}

impl One for Puiseux {
    fn one() -> Self {
        Puiseux::one()
    }
}

impl std::ops::Mul for Puiseux {
    type Output = Puiseux;
    fn mul(self, rhs: Puiseux) -> Puiseux {
        Puiseux::mul(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use proptest::prelude::*;

    fn series(t: u32, lead: Rational, vals: &[i64], trunc: Option<Rational>) -> Puiseux {
        Puiseux::new(
            t,
            lead,
            vals.iter().map(|&v| CycQ::from_int(v)).collect(),
            trunc,
        )
    }

    #[test]
    fn half_powers_multiply() {
        let h = Puiseux::monomial(CycQ::one(), rat(1, 2), None);
        let p = h.mul(&h);
        assert_eq!(p.coefficient(&int(1)), Some(CycQ::one()));
        assert_eq!(p.valuation(), Some(int(1)));
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_q = series(1, int(0), &[1, -1], Some(int(10)));
        let g = one_minus_q.pow(-1).unwrap();
        assert_eq!(g.len(), 10);
        assert!(g.coeffs().iter().all(|c| c.is_one()));
        let back = g.mul(&one_minus_q);
        assert!(back.agrees_with(&Puiseux::constant(CycQ::one(), Some(int(10)))));
        assert_eq!(back.trunc(), Some(&int(10)));
    }

    #[test]
    fn zero_leading_term_cannot_invert() {
        let z = Puiseux::zero(Some(int(5)));
        assert_eq!(z.pow(-1).unwrap_err(), Error::NonInvertibleLeadingTerm);
    }

    #[test]
    fn theta_examples() {
        let q3 = Puiseux::monomial(CycQ::one(), int(3), None);
        assert_eq!(
            q3.theta(ThetaScale::Full).coefficient(&int(3)),
            Some(CycQ::from_int(3))
        );
        let h = Puiseux::monomial(CycQ::one(), rat(1, 2), None);
        assert_eq!(
            h.theta(ThetaScale::OneOverT).coefficient(&rat(1, 2)),
            Some(CycQ::one())
        );
        let c = Puiseux::constant(CycQ::from_int(5), None);
        assert!(c.theta(ThetaScale::Full).is_zero());
    }

    #[test]
    fn truncation_is_propagated() {
        let a = series(1, int(-1), &[1, 2, 3], Some(int(2)));
        let b = series(2, int(0), &[1, 0, 1, 0], Some(int(2)));
        let p = a.mul(&b);
        // min(2 + 0, 2 + (-1)) = 1
        assert_eq!(p.trunc(), Some(&int(1)));
        assert_eq!(p.branching(), 2);
        let s = a.add(&b);
        assert_eq!(s.trunc(), Some(&int(2)));
        assert_eq!(s.leading_exponent(), &int(-1));
    }

    #[test]
    fn dilation_and_shift() {
        let a = series(1, int(0), &[1, 2, 3], Some(int(3)));
        let d = a.dilate(2);
        assert_eq!(d.coefficient(&int(4)), Some(CycQ::from_int(3)));
        assert_eq!(d.coefficient(&int(3)), Some(CycQ::zero(1)));
        assert_eq!(d.trunc(), Some(&int(6)));
        let s = a.shift(&rat(-1, 3));
        assert_eq!(s.coefficient(&rat(2, 3)), Some(CycQ::from_int(2)));
        assert_eq!(s.coefficient(&rat(8, 3)), None);
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let a: Vec<CycQ> = (0..150).map(|i| CycQ::from_int((i * 7 % 13) - 6)).collect();
        let b: Vec<CycQ> = (0..97)
            .map(|i| CycQ::root(i, 5).scale(&rat(1, 1 + (i % 3))))
            .collect();
        let m = 5;
        let a: Vec<CycQ> = a.iter().map(|c| c.lift(m)).collect();
        let b: Vec<CycQ> = b.iter().map(|c| c.lift(m)).collect();
        let slow = convolve(&a, &b, a.len() + b.len() - 1, Exec::Sequential, m);
        let fast = karatsuba(&a, &b, 8, m);
        assert_eq!(slow, fast);
    }

    fn arb_series() -> impl Strategy<Value = Puiseux> {
        (
            1u32..=3,
            -2i64..=2,
            proptest::collection::vec((-5i64..=5, 0i64..6), 1..8),
        )
            .prop_map(|(t, lead, vals)| {
                let coeffs = vals
                    .iter()
                    .map(|&(v, r)| CycQ::root(r, 6).scale(&int(v)))
                    .collect();
                Puiseux::new(t, rat(lead, t as i64), coeffs, Some(int(4)))
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn distributive(a in arb_series(), b in arb_series(), c in arb_series()) {
            let lhs = a.add(&b).mul(&c);
            let rhs = a.mul(&c).add(&b.mul(&c));
            prop_assert!(lhs.agrees_with(&rhs));
        }

        #[test]
        fn theta_is_a_derivation(a in arb_series(), b in arb_series()) {
            let lhs = a.mul(&b).theta(ThetaScale::Full);
            let rhs = a.theta(ThetaScale::Full).mul(&b).add(&a.mul(&b.theta(ThetaScale::Full)));
            prop_assert!(lhs.agrees_with(&rhs));
        }
    }
}

//! Series in an outer variable `w` with q-series coefficients, and finite
//! two-variable Laurent expansions with residues.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Puiseux;
use crate::arith::rational::{binomial, ceil_to_i64, floor_to_i64, format_rational};
use crate::arith::{CycQ, Rational};
use crate::error::{Error, Result};

/// Lower bound on the q-valuation of coefficients outside a window:
/// the coefficient of `w^e` has valuation `>= offset + slope·|e|`.
#[derive(Clone, Debug, PartialEq)]
pub struct TailBound {
    pub offset: Rational,
    pub slope: Rational,
}

impl TailBound {
    pub fn new(offset: Rational, slope: Rational) -> Self {
        TailBound { offset, slope }
    }

    /// No information: missing coefficients may be anything.
    pub fn unknown() -> Self {
        TailBound {
            offset: Rational::zero(),
            slope: Rational::zero(),
        }
    }

    pub fn at(&self, e: &Rational) -> Rational {
        &self.offset + &self.slope * e.abs()
    }
}

/// `Σ_{n ∈ base + Z} c_n w^n`, known for `n = base + lo + i`, `0 <= i < coeffs.len()`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries {
    base: Rational,
    lo: i64,
    coeffs: Vec<Puiseux>,
    trunc: Option<Rational>,
    below: TailBound,
    above: TailBound,
}

/// Which side of `(z - z₁)^m` is expanded in nonnegative powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Iota {
    /// `ι_{z,z₁}`: nonnegative powers of `z₁`.
    ZFirst,
    /// `ι_{z₁,z}`: nonnegative powers of `z`.
    Z1First,
}

impl BiSeries {
    /// `base` is reduced into `[0, 1)` and `lo` adjusted to match.
    pub fn new(
        base: Rational,
        lo: i64,
        coeffs: Vec<Puiseux>,
        trunc: Option<Rational>,
        below: TailBound,
        above: TailBound,
    ) -> Self {
        let fl = base.floor();
        let shift = fl.to_integer().to_i64().expect("window offset fits");
        BiSeries {
            base: base - fl,
            lo: lo + shift,
            coeffs,
            trunc,
            below,
            above,
        }
    }

    pub fn zero(trunc: Option<Rational>) -> Self {
        Self::new(
            Rational::zero(),
            0,
            Vec::new(),
            trunc,
            TailBound::new(Rational::zero(), Rational::zero()),
            TailBound::new(Rational::zero(), Rational::zero()),
        )
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn trunc(&self) -> Option<&Rational> {
        self.trunc.as_ref()
    }

    /// Inclusive range of known `w`-exponents, or `None` if empty.
    pub fn window(&self) -> Option<(Rational, Rational)> {
        if self.coeffs.is_empty() {
            return None;
        }
        let lo = &self.base + Rational::from_integer(BigInt::from(self.lo));
        let hi = &lo + Rational::from_integer(BigInt::from(self.coeffs.len() as i64 - 1));
        Some((lo, hi))
    }

    pub fn terms(&self) -> impl Iterator<Item = (Rational, &Puiseux)> + '_ {
        self.coeffs.iter().enumerate().map(move |(i, c)| {
            (
                &self.base + Rational::from_integer(BigInt::from(self.lo + i as i64)),
                c,
            )
        })
    }

    fn is_negligible(&self, v: &Rational) -> bool {
        matches!(&self.trunc, Some(tr) if v >= tr)
    }

    /// Coefficient of `w^e`. Outside the window it is zero if the tail bound
    /// pushes it past the truncation, otherwise `WindowTooSmall`.
    pub fn coefficient(&self, e: &Rational) -> Result<Puiseux> {
        let offset = e - &self.base;
        if !offset.is_integer() {
            return Ok(Puiseux::zero(self.trunc.clone()));
        }
        let idx = offset.to_integer().to_i64().expect("exponent fits") - self.lo;
        if idx >= 0 && (idx as usize) < self.coeffs.len() {
            return Ok(self.coeffs[idx as usize].clone());
        }
        let bound = if idx < 0 { &self.below } else { &self.above };
        if self.is_negligible(&bound.at(e)) {
            Ok(Puiseux::zero(self.trunc.clone()))
        } else {
            Err(Error::WindowTooSmall(format!(
                "w-exponent {} outside the computed window",
                format_rational(e)
            )))
        }
    }

    /// Coefficient of `w^{-1}`.
    pub fn residue_w(&self) -> Result<Puiseux> {
        self.coefficient(&-Rational::one())
    }

    /// Substitutes `w ↦ w q^s`.
    pub fn shift_q(&self, s: &Rational) -> BiSeries {
        let coeffs = self.terms().map(|(e, c)| c.shift(&(&e * s))).collect();
        BiSeries {
            base: self.base.clone(),
            lo: self.lo,
            coeffs,
            trunc: self.trunc.clone(),
            below: TailBound::new(self.below.offset.clone(), &self.below.slope - s),
            above: TailBound::new(self.above.offset.clone(), &self.above.slope + s),
        }
    }

    pub fn scale(&self, c: &CycQ) -> BiSeries {
        BiSeries {
            coeffs: self.coeffs.iter().map(|p| p.scalar_mul(c)).collect(),
            ..self.clone()
        }
    }

    /// For `f(w) = self` computes
    /// `Res_z ι(z − z₁)^{-1} z₁^{a} z^{b} f(z₁/z)`.
    ///
    /// Returns the exponent of `z₁` carried by every surviving term together
    /// with its q-series coefficient. Summation stops once the tail bound
    /// exceeds the truncation order.
    pub fn ratio_residue(
        &self,
        iota: Iota,
        a: &Rational,
        b: &Rational,
    ) -> Result<(Rational, Puiseux)> {
        let tr = self.trunc.clone().ok_or_else(|| {
            Error::TruncationTooSmall("ratio residue needs a truncated series".into())
        })?;
        let z1_exp = a + b;
        // ZFirst: Σ_{i>=0} z₁^i z^{-i-1}, picks n = b - i.
        // Z1First: -Σ_{i>=0} z^i z₁^{-i-1}, picks n = b + 1 + i.
        let (start, step, sign): (Rational, i64, i64) = match iota {
            Iota::ZFirst => (b.clone(), -1, 1),
            Iota::Z1First => (b + Rational::one(), 1, -1),
        };
        let mut acc = Puiseux::zero(Some(tr.clone()));
        let offset = &start - &self.base;
        if !offset.is_integer() {
            return Ok((z1_exp, acc));
        }
        let (lo_e, hi_e) = match self.window() {
            Some(w) => w,
            None => (start.clone() + Rational::one(), start.clone()),
        };
        let mut n = start;
        loop {
            let inside = n >= lo_e && n <= hi_e;
            if !inside {
                let bound = if n < lo_e { &self.below } else { &self.above };
                let moving_away = (step < 0 && n < lo_e) || (step > 0 && n > hi_e);
                let abs_grows = (step < 0 && !n.is_positive()) || (step > 0 && !n.is_negative());
                if moving_away
                    && abs_grows
                    && !bound.slope.is_negative()
                    && self.is_negligible(&bound.at(&n))
                {
                    break;
                }
            }
            acc = acc.add(&self.coefficient(&n)?);
            n += Rational::from_integer(BigInt::from(step));
        }
        if sign < 0 {
            acc = acc.neg();
        }
        Ok((z1_exp, acc.truncate(&tr)))
    }
}

/// Variable selector for [`Laurent2`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// Exponents of a variable for which coefficients are complete; `None` means
/// unbounded on that side.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Window {
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
}

impl Window {
    pub fn full() -> Self {
        Window { lo: None, hi: None }
    }

    pub fn contains(&self, e: &Rational) -> bool {
        self.lo.as_ref().is_none_or(|l| e >= l) && self.hi.as_ref().is_none_or(|h| e <= h)
    }
}

/// Finite sum `Σ x^a y^b c_{a,b}(q)` with per-variable completeness windows.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent2 {
    terms: BTreeMap<(Rational, Rational), Puiseux>,
    windows: [Window; 2],
}

fn idx(v: Var) -> usize {
    match v {
        Var::X => 0,
        Var::Y => 1,
    }
}

impl Laurent2 {
    pub fn zero() -> Self {
        Laurent2 {
            terms: BTreeMap::new(),
            windows: [Window::full(), Window::full()],
        }
    }

    /// `c · x^a y^b`, exact.
    pub fn monomial(a: Rational, b: Rational, c: Puiseux) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        Laurent2 {
            terms,
            windows: [Window::full(), Window::full()],
        }
    }

    /// `ι((x − y)^m)` expanded in nonnegative powers of the second variable
    /// named by `iota` (`ZFirst`: powers of `y`), keeping `terms` terms.
    pub fn iota(m: i64, iota: Iota, terms: usize) -> Self {
        let mut out = BTreeMap::new();
        let mi = Rational::from_integer(BigInt::from(m));
        for i in 0..terms as i64 {
            let c: BigInt = binomial(m, i) * BigInt::from(if i % 2 == 0 { 1 } else { -1 });
            if c.is_zero() {
                continue;
            }
            let ii = Rational::from_integer(BigInt::from(i));
            let (ex, ey, c) = match iota {
                // x^{m-i} (-y)^i
                Iota::ZFirst => (&mi - &ii, ii.clone(), c),
                // (-1)^m (y - x)^m = (-1)^m Σ binom(m,i) y^{m-i} (-x)^i
                Iota::Z1First => (ii.clone(), &mi - &ii, if m % 2 == 0 { c } else { -c }),
            };
            out.insert(
                (ex, ey),
                Puiseux::constant(CycQ::from_rational(&Rational::from_integer(c)), None),
            );
        }
        let last = Rational::from_integer(BigInt::from(terms as i64 - 1));
        let windows = if m >= 0 && (terms as i64) > m {
            [Window::full(), Window::full()]
        } else {
            match iota {
                Iota::ZFirst => [
                    Window {
                        lo: Some(&mi - &last),
                        hi: None,
                    },
                    Window {
                        lo: None,
                        hi: Some(last),
                    },
                ],
                Iota::Z1First => [
                    Window {
                        lo: None,
                        hi: Some(last.clone()),
                    },
                    Window {
                        lo: Some(&mi - &last),
                        hi: None,
                    },
                ],
            }
        };
        Laurent2 {
            terms: out,
            windows,
        }
    }

    pub fn window(&self, v: Var) -> &Window {
        &self.windows[idx(v)]
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Rational, Rational), &Puiseux)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, a: &Rational, b: &Rational) -> Option<&Puiseux> {
        self.terms.get(&(a.clone(), b.clone()))
    }

    fn extent(&self, v: Var) -> Option<(Rational, Rational)> {
        let mut it = self
            .terms
            .keys()
            .map(|k| if v == Var::X { &k.0 } else { &k.1 });
        let first = it.next()?.clone();
        Some(it.fold((first.clone(), first), |(lo, hi), e| {
            (lo.min(e.clone()), hi.max(e.clone()))
        }))
    }

    fn is_complete(&self) -> bool {
        self.windows
            .iter()
            .all(|w| w.lo.is_none() && w.hi.is_none())
    }

    /// Product. The window rule assumes each factor's missing terms lie
    /// beyond its window on the side where the window is bounded.
    pub fn mul(&self, other: &Laurent2) -> Laurent2 {
        let mut terms: BTreeMap<(Rational, Rational), Puiseux> = BTreeMap::new();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                let key = (a1 + a2, b1 + b2);
                let p = c1.mul(c2);
                match terms.get_mut(&key) {
                    Some(e) => *e = e.add(&p),
                    None => {
                        terms.insert(key, p);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        let mut windows = [Window::full(), Window::full()];
        for v in [Var::X, Var::Y] {
            let (wa, wb) = (self.window(v), other.window(v));
            let (ea, eb) = (self.extent(v), other.extent(v));
            let bound =
                |w: &Option<Rational>, e: &Option<(Rational, Rational)>, low: bool| match (w, e) {
                    (Some(x), Some((lo, hi))) => Some(if low { x + lo } else { x + hi }),
                    (Some(x), None) => Some(x.clone()),
                    _ => None,
                };
            let lo = [bound(&wa.lo, &eb, true), bound(&wb.lo, &ea, true)]
                .into_iter()
                .flatten()
                .max();
            let hi = [bound(&wa.hi, &eb, false), bound(&wb.hi, &ea, false)]
                .into_iter()
                .flatten()
                .min();
            windows[idx(v)] = Window { lo, hi };
        }
        if self.is_complete() && other.is_complete() {
            windows = [Window::full(), Window::full()];
        }
        Laurent2 { terms, windows }
    }

    /// Coefficient of `v^{-1}`, as a Laurent expansion in the other variable
    /// (stored with exponent 0 in `v`).
    pub fn residue(&self, v: Var) -> Result<Laurent2> {
        let m1 = -Rational::one();
        if !self.window(v).contains(&m1) {
            return Err(Error::WindowTooSmall(format!(
                "exponent -1 of {v:?} lies outside the expansion window"
            )));
        }
        let mut terms = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            let (hit, rest) = match v {
                Var::X => (a, b),
                Var::Y => (b, a),
            };
            if *hit == m1 {
                let key = match v {
                    Var::X => (Rational::zero(), rest.clone()),
                    Var::Y => (rest.clone(), Rational::zero()),
                };
                terms.insert(key, c.clone());
            }
        }
        let mut windows = self.windows.clone();
        windows[idx(v)] = Window::full();
        Ok(Laurent2 { terms, windows })
    }
}

/// Number of integer points in `[lo, hi]` when both are finite, used for
/// sizing expansions.
pub fn span_len(lo: &Rational, hi: &Rational) -> usize {
    (floor_to_i64(hi) - ceil_to_i64(lo) + 1).max(0) as usize
}

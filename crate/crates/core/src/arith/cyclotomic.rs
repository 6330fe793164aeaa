//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` modulo the
//! cyclotomic polynomial `Φ_N`, as integer numerators over one positive common
//! denominator. Operands with different conductors are lifted to the lcm of
//! the two conductors; results are not pushed back down to a minimal conductor
//! except when they are rational.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::fixed::FixedComplex;
use super::rational::{format_rational, parse_rational, to_f64, Rational};
use crate::error::{Error, Result};

/// Precomputed data for one conductor.
#[derive(Debug)]
pub struct CyclotomicField {
    n: u32,
    phi: usize,
    /// `ζ^e mod Φ_n` for `e in 0..n`, each of length `phi`.
    powers: Vec<Vec<BigInt>>,
    /// `e^{2πi e/n}` for `e in 0..n`.
    embed: Vec<Complex64>,
}

impl CyclotomicField {
    fn build(n: u32) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let poly = cyclotomic_polynomial(n);
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![BigInt::zero(); phi];
        cur[0] = BigInt::one();
        if phi == 0 {
            unreachable!("Φ_n has positive degree");
        }
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by ζ, then fold ζ^phi = -Σ poly_i ζ^i
            let top = cur[phi - 1].clone();
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for (c, p) in cur.iter_mut().zip(poly.iter()) {
                    *c -= &top * p;
                }
            }
        }
        let embed = (0..n)
            .map(|e| Complex64::from_polar(1.0, std::f64::consts::TAU * e as f64 / n as f64))
            .collect();
        CyclotomicField {
            n,
            phi,
            powers,
            embed,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Shared, lazily built field for conductor `n`.
    pub fn get(n: u32) -> Arc<CyclotomicField> {
        static CACHE: OnceLock<RwLock<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.read().expect("field cache poisoned").get(&n) {
            return f.clone();
        }
        let built = Arc::new(CyclotomicField::build(n));
        cache
            .write()
            .expect("field cache poisoned")
            .entry(n)
            .or_insert(built)
            .clone()
    }

    fn power(&self, e: i64) -> &[BigInt] {
        &self.powers[e.rem_euclid(self.n as i64) as usize]
    }
}

/// Coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    // Φ_n = (x^n - 1) / Π_{d | n, d < n} Φ_d
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = poly_exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = &den[dd];
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let q = &rem[i + dd] / lead;
        for (j, c) in den.iter().enumerate() {
            rem[i + j] -= &q * c;
        }
        quot[i] = q;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// Element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct CycQ {
    field: Arc<CyclotomicField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycQ {
    fn from_parts(field: Arc<CyclotomicField>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut out = CycQ { field, num, den };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn zero(n: u32) -> Self {
        let field = CyclotomicField::get(n);
        let phi = field.phi;
        CycQ {
            field,
            num: vec![BigInt::zero(); phi],
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(&Rational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(r: &Rational) -> Self {
        CycQ {
            field: CyclotomicField::get(1),
            num: vec![r.numer().clone()],
            den: r.denom().clone(),
        }
    }

    /// Element `Σ coeffs[i] ζ_n^i` (power-basis coordinates, `len == φ(n)`).
    pub fn from_coeffs(n: u32, coeffs: &[Rational]) -> Result<Self> {
        let field = CyclotomicField::get(n);
        if coeffs.len() != field.phi {
            return Err(Error::InvalidArgument(format!(
                "conductor {n} needs {} coefficients, got {}",
                field.phi,
                coeffs.len()
            )));
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Self::from_parts(field, num, den))
    }

    /// `ζ_m^j`, expressed at the minimal conductor.
    pub fn root(j: i64, m: u32) -> Self {
        assert!(m >= 1, "root order must be positive");
        let g = j.gcd(&(m as i64)).max(1);
        let mut j = (j / g).rem_euclid(m as i64 / g);
        let mut n = (m as i64 / g) as u32;
        let mut sign = BigInt::one();
        if n % 4 == 2 {
            // ζ_{2k}^j with k odd, j odd: -ζ_k^{(j+k)/2}
            let k = (n / 2) as i64;
            j = ((j + k) / 2).rem_euclid(k);
            n /= 2;
            sign = -sign;
        }
        let field = CyclotomicField::get(n);
        let num = field.power(j).iter().map(|c| c * &sign).collect();
        Self::from_parts(field, num, BigInt::one())
    }

    /// `e^{2πi r}` for rational `r`.
    pub fn root_of_rational(r: &Rational) -> Self {
        let den: u32 = r
            .denom()
            .try_into()
            .expect("root of unity order fits in u32");
        let num: i64 = (r.numer() % r.denom())
            .try_into()
            .expect("root exponent fits in i64");
        Self::root(num, den)
    }

    pub fn conductor(&self) -> u32 {
        self.field.n
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// Power-basis coordinates.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, when the element lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Drops to conductor 1 when the value is rational.
    pub fn simplify(self) -> Self {
        if self.field.n != 1 {
            if let Some(r) = self.to_rational() {
                return Self::from_rational(&r);
            }
        }
        self
    }

    /// Same element, viewed in `Q(ζ_m)` for a multiple `m` of the conductor.
    pub fn lift(&self, m: u32) -> Self {
        let n = self.field.n;
        if m == n {
            return self.clone();
        }
        if self.is_zero() {
            return CycQ::zero(m);
        }
        assert!(m.is_multiple_of(n), "cannot lift conductor {n} to {m}");
        let field = CyclotomicField::get(m);
        let step = (m / n) as i64;
        let mut num = vec![BigInt::zero(); field.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (dst, p) in num.iter_mut().zip(field.power(i as i64 * step)) {
                *dst += c * p;
            }
        }
        Self::from_parts(field, num, self.den.clone())
    }

    fn align(a: &CycQ, b: &CycQ) -> (CycQ, CycQ) {
        if a.field.n == b.field.n {
            (a.clone(), b.clone())
        } else {
            let m = a.field.n.lcm(&b.field.n);
            (a.lift(m), b.lift(m))
        }
    }

    fn combine(a: &CycQ, b: &CycQ, sign: i32) -> CycQ {
        if a.field.n != b.field.n {
            let (x, y) = Self::align(a, b);
            return Self::combine(&x, &y, sign);
        }
        let l = a.den.lcm(&b.den);
        let fa = &l / &a.den;
        let fb = &l / &b.den;
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| {
                if sign > 0 {
                    x * &fa + y * &fb
                } else {
                    x * &fa - y * &fb
                }
            })
            .collect();
        Self::from_parts(a.field.clone(), num, l)
    }

    fn product(a: &CycQ, b: &CycQ) -> CycQ {
        if a.field.n != b.field.n {
            let (x, y) = Self::align(a, b);
            return Self::product(&x, &y);
        }
        let field = a.field.clone();
        let phi = field.phi;
        if phi == 1 {
            return Self::from_parts(field, vec![&a.num[0] * &b.num[0]], &a.den * &b.den);
        }
        let mut conv = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let mut num = conv[..phi].to_vec();
        for (e, c) in conv.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (dst, p) in num.iter_mut().zip(field.power(e as i64)) {
                *dst += c * p;
            }
        }
        Self::from_parts(field, num, &a.den * &b.den)
    }

    pub fn scale(&self, r: &Rational) -> CycQ {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::from_parts(self.field.clone(), num, &self.den * r.denom())
    }

    /// Multiplicative inverse, by solving the multiplication-matrix system.
    pub fn inv(&self) -> Result<CycQ> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi = self.field.phi;
        if phi == 1 {
            return Ok(Self::from_parts(
                self.field.clone(),
                vec![self.den.clone()],
                self.num[0].clone(),
            ));
        }
        // column i = coordinates of self * ζ^i
        let mut cols = Vec::with_capacity(phi);
        let mut basis = CycQ::zero(self.field.n);
        for i in 0..phi {
            for (k, c) in basis.num.iter_mut().enumerate() {
                *c = if k == i {
                    BigInt::one()
                } else {
                    BigInt::zero()
                };
            }
            basis.den = BigInt::one();
            cols.push(Self::product(self, &basis).coeffs());
        }
        let mut mat: Vec<Vec<Rational>> = (0..phi)
            .map(|r| {
                let mut row: Vec<Rational> = (0..phi).map(|c| cols[c][r].clone()).collect();
                row.push(if r == 0 {
                    Rational::one()
                } else {
                    Rational::zero()
                });
                row
            })
            .collect();
        let x = solve_augmented(&mut mat).ok_or(Error::DivisionByZero)?;
        Self::from_coeffs(self.field.n, &x)
    }

    pub fn checked_div(&self, other: &CycQ) -> Result<CycQ> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<CycQ> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycQ::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Double-precision complex embedding `ζ_N ↦ e^{2πi/N}`.
    pub fn embed(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = to_f64(&Rational::new(c.clone(), self.den.clone()));
            acc += self.field.embed[i] * v;
        }
        acc
    }

    /// Complex embedding carried out in fixed point with `bits` fractional bits.
    pub fn embed_with_precision(&self, bits: u32) -> FixedComplex {
        let bits = bits.max(53);
        FixedComplex::embed(&self.coeffs(), self.field.n, bits)
    }
}

fn solve_augmented(mat: &mut [Vec<Rational>]) -> Option<Vec<Rational>> {
    let n = mat.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !mat[r][col].is_zero())?;
        mat.swap(col, pivot);
        let p = mat[col][col].clone();
        for v in mat[col].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..n {
            if r != col && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                let pivot_row = mat[col].clone();
                for (v, pv) in mat[r].iter_mut().zip(pivot_row.iter()) {
                    *v -= &f * pv;
                }
            }
        }
    }
    Some(mat.iter().map(|row| row[n].clone()).collect())
}

impl PartialEq for CycQ {
    fn eq(&self, other: &Self) -> bool {
        if self.field.n == other.field.n {
            self.den == other.den && self.num == other.num
        } else {
            let (a, b) = Self::align(self, other);
            a.den == b.den && a.num == b.num
        }
    }
}

impl Eq for CycQ {}

impl fmt::Debug for CycQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{}", format_rational(&r));
        }
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", format_rational(c))?,
                _ => write!(f, "({})*z{}^{}", format_rational(c), self.field.n, i)?,
            }
        }
        Ok(())
    }
}

impl Default for CycQ {
    fn default() -> Self {
        CycQ::zero(1)
    }
}

impl Neg for &CycQ {
    type Output = CycQ;
    fn neg(self) -> CycQ {
        CycQ {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycQ {
    type Output = CycQ;
    fn neg(self) -> CycQ {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&CycQ> for &CycQ {
            type Output = CycQ;
            fn $method(self, rhs: &CycQ) -> CycQ {
                $body(self, rhs)
            }
        }
        impl $tr<CycQ> for CycQ {
            type Output = CycQ;
            fn $method(self, rhs: CycQ) -> CycQ {
                $body(&self, &rhs)
            }
        }
        impl $tr<&CycQ> for CycQ {
            type Output = CycQ;
            fn $method(self, rhs: &CycQ) -> CycQ {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| CycQ::combine(a, b, 1));
forward_binop!(Sub, sub, |a, b| CycQ::combine(a, b, -1));
forward_binop!(Mul, mul, CycQ::product);

impl std::iter::Sum for CycQ {
    fn sum<I: Iterator<Item = CycQ>>(iter: I) -> Self {
        iter.fold(CycQ::zero(1), |a, b| a + b)
    }
}

#[derive(Serialize, Deserialize)]
struct CycQJson {
    conductor: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if let Some(r) = self.to_rational() {
            return s.serialize_str(&format_rational(&r));
        }
        CycQJson {
            conductor: self.field.n,
            coeffs: self.coeffs().iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Rational(String),
            Integer(i64),
            Full(CycQJson),
        }
        let raw = match Raw::deserialize(d)? {
            Raw::Rational(s) => {
                return parse_rational(&s)
                    .map(|r| CycQ::from_rational(&r))
                    .map_err(serde::de::Error::custom)
            }
            Raw::Integer(v) => return Ok(CycQ::from_int(v)),
            Raw::Full(raw) => raw,
        };
        let coeffs = raw
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        CycQ::from_coeffs(raw.conductor, &coeffs).map_err(serde::de::Error::custom)
    }
}

/// Accumulates `Σ c_e ζ_n^e` with exponents reduced mod `n` before a single
/// conversion into the power basis.
#[derive(Clone, Debug)]
pub struct RootSum {
    n: u32,
    buckets: Vec<Rational>,
}

impl RootSum {
    pub fn new(n: u32) -> Self {
        RootSum {
            n,
            buckets: vec![Rational::zero(); n as usize],
        }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn add(&mut self, exponent: i64, c: &Rational) {
        let e = exponent.rem_euclid(self.n as i64) as usize;
        self.buckets[e] += c;
    }

    pub fn merge(&mut self, other: &RootSum) {
        assert_eq!(self.n, other.n);
        for (a, b) in self.buckets.iter_mut().zip(&other.buckets) {
            *a += b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.buckets.iter().all(Zero::is_zero)
    }

    pub fn to_cycq(&self) -> CycQ {
        let field = CyclotomicField::get(self.n);
        let den = self
            .buckets
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num = vec![BigInt::zero(); field.phi];
        for (e, c) in self.buckets.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let scaled = c.numer() * (&den / c.denom());
            for (dst, p) in num.iter_mut().zip(field.power(e as i64)) {
                *dst += &scaled * p;
            }
        }
        CycQ::from_parts(field, num, den).simplify()
    }
}

//! Roots of the indicial polynomial.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::rational::format_rational;
use crate::arith::{CycQ, Rational};

/// A root of `x^m + Σ r_i(0) x^i`, exact when rational.
#[derive(Clone, Debug, PartialEq)]
pub struct IndicialRoot {
    pub value: Complex64,
    pub exact: Option<Rational>,
}

impl Serialize for IndicialRoot {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(2))?;
        match &self.exact {
            Some(r) => m.serialize_entry("exact", &format_rational(r))?,
            None => m.serialize_entry("exact", &Option::<String>::None)?,
        }
        m.serialize_entry("value", &[self.value.re, self.value.im])?;
        m.end()
    }
}

fn horner(c: &[Complex64], x: Complex64) -> Complex64 {
    c.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, a| acc * x + a)
}

/// Durand–Kerner iteration on a monic polynomial (`c` ascending, `c[m] = 1`).
pub fn durand_kerner(c: &[Complex64]) -> Vec<Complex64> {
    let m = c.len() - 1;
    if m == 0 {
        return Vec::new();
    }
    if m == 1 {
        return vec![-c[0]];
    }
    let seed = Complex64::new(0.4, 0.9);
    let scale = 1.0 + c[..m].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..m).map(|k| seed.powi(k as i32) * scale).collect();
    for _ in 0..2000 {
        let mut change: f64 = 0.0;
        for i in 0..m {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..m {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(1e-300, 0.0);
            }
            let step = horner(c, z[i]) / den;
            z[i] -= step;
            change = change.max(step.norm());
        }
        if change < 1e-16 {
            break;
        }
    }
    // Newton polish
    let dc: Vec<Complex64> = (1..=m).map(|i| c[i] * i as f64).collect();
    for r in z.iter_mut() {
        for _ in 0..3 {
            let d = horner(&dc, *r);
            if d.norm() < 1e-12 {
                break;
            }
            let step = horner(c, *r) / d;
            if !step.norm().is_finite() {
                break;
            }
            *r -= step;
        }
    }
    z
}

/// Continued-fraction convergents of `x` with denominators up to `max_den`.
fn convergents(x: f64, max_den: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut v = x;
    for _ in 0..40 {
        let a = v.floor();
        if !a.is_finite() || a.abs() > 1e15 {
            break;
        }
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > BigInt::from(max_den) {
            break;
        }
        out.push(Rational::new(h2.clone(), k2.clone()));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let f = v - a;
        if f.abs() < 1e-15 {
            break;
        }
        v = 1.0 / f;
    }
    out
}

fn eval_exact(c: &[Rational], x: &Rational) -> Rational {
    c.iter().rev().fold(Rational::zero(), |acc, a| acc * x + a)
}

/// Divides by `(x − r)`, assuming `r` is a root.
fn deflate(c: &[Rational], r: &Rational) -> Vec<Rational> {
    let m = c.len() - 1;
    let mut q = vec![Rational::zero(); m];
    let mut carry = Rational::zero();
    for i in (0..m).rev() {
        carry = &c[i + 1] + &carry * r;
        q[i] = carry.clone();
    }
    q
}

/// All `m` roots with multiplicity, rational ones recovered exactly.
pub fn polynomial_roots(coeffs: &[CycQ]) -> Vec<IndicialRoot> {
    let numeric: Vec<Complex64> = coeffs.iter().map(CycQ::embed).collect();
    let rational: Option<Vec<Rational>> = coeffs.iter().map(CycQ::to_rational).collect();
    let Some(mut exact) = rational else {
        return durand_kerner(&numeric)
            .into_iter()
            .map(|value| IndicialRoot { value, exact: None })
            .collect();
    };
    let mut found = Vec::new();
    for z in durand_kerner(&numeric) {
        if z.im.abs() > 1e-6 {
            continue;
        }
        for r in convergents(z.re, 1_000_000) {
            while exact.len() > 1 && eval_exact(&exact, &r).is_zero() {
                exact = deflate(&exact, &r);
                found.push(r.clone());
            }
        }
    }
    let rest: Vec<Complex64> = exact
        .iter()
        .map(|r| Complex64::new(crate::arith::rational::to_f64(r), 0.0))
        .collect();
    let mut roots: Vec<IndicialRoot> = found
        .into_iter()
        .map(|r| IndicialRoot {
            value: Complex64::new(crate::arith::rational::to_f64(&r), 0.0),
            exact: Some(r),
        })
        .collect();
    roots.extend(
        durand_kerner(&rest)
            .into_iter()
            .map(|value| IndicialRoot { value, exact: None }),
    );
    roots.sort_by(|a, b| {
        b.value
            .re
            .total_cmp(&a.value.re)
            .then(b.value.im.total_cmp(&a.value.im))
    });
    roots
}

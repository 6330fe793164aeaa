//! The Frobenius recursion, homogeneous and inhomogeneous.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::ode::RegularSingularODE;
use super::roots::{polynomial_roots, IndicialRoot};
use super::scalar::{Scalar, NUMERIC_ZERO};
use crate::arith::{CycQ, Rational};
use crate::error::{Error, Result};
use crate::series::{LogQSeries, Puiseux};

/// Flag set when some exponent class had to be solved in floating point.
pub const NUMERIC_CLASS_FLAG: &str = "numeric_indicial_roots_clustered_at_1e-9";

/// Coefficient rows of a solution: `rows[N][i]` multiplies `ℓ^i q^{ρ + N/T}`.
type Rows<F> = Vec<Vec<F>>;

/// The recursion data over a field `F`.
struct Recursion<F> {
    polys: Vec<Vec<F>>,
    kappa: F,
    base: F,
    step: F,
}

impl<F: Scalar> Recursion<F> {
    fn new(ode: &RegularSingularODE, levels: usize, base: F) -> Self {
        let polys = ode
            .level_polys(levels)
            .iter()
            .map(|p| p.iter().map(F::from_cycq).collect())
            .collect();
        let step =
            F::from_rational(&ode.theta_value(&Rational::new(1.into(), BigInt::from(ode.t))));
        Recursion {
            polys,
            kappa: F::from_rational(&ode.kappa()),
            base,
            step,
        }
    }

    fn s_at(&self, n: usize) -> F {
        self.base.add(&self.step.mul(&F::from_usize(n)))
    }

    /// `b_d = κ^d P^{(d)}(s)/d!`, so that `P(s + κ∂) = Σ_d b_d ∂^d`.
    fn shifted(&self, poly: &[F], s: &F) -> Vec<F> {
        let mut c = poly.to_vec();
        let m = c.len();
        // Taylor shift by repeated synthetic division
        for d in 0..m {
            for i in (d..m - 1).rev() {
                let t = c[i + 1].mul(s);
                c[i] = c[i].add(&t);
            }
        }
        let mut kp = F::one();
        for x in c.iter_mut() {
            *x = x.mul(&kp);
            kp = kp.mul(&self.kappa);
        }
        c
    }

    /// `Σ_d b_d ∂^d p`.
    fn apply_shifted(b: &[F], p: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); p.len()];
        for (d, bd) in b.iter().enumerate() {
            if bd.is_zero() {
                continue;
            }
            for i in 0..p.len().saturating_sub(d) {
                // ∂^d ℓ^{i+d} = (i+d)!/i! ℓ^i
                let mut f = F::one();
                for t in (i + 1)..=(i + d) {
                    f = f.mul(&F::from_usize(t));
                }
                out[i] = out[i].add(&bd.mul(&p[i + d]).mul(&f));
            }
        }
        out
    }

    /// Solves `Σ_d b_d ∂^d p = g` with the kernel part set to `seed`.
    fn solve_level(b: &[F], g: &[F], seed: &[F]) -> Vec<F> {
        let mu = b.iter().position(|x| !x.is_zero()).expect("monic operator");
        let top = g.len().max(1) - 1;
        let mut p = vec![F::zero(); top + 1 + mu];
        for (j, v) in seed.iter().enumerate().take(mu) {
            p[j] = v.clone();
        }
        for i in (0..g.len()).rev() {
            let mut rhs = g[i].clone();
            for d in (mu + 1)..b.len() {
                if i + d < p.len() && !b[d].is_zero() {
                    let mut f = F::one();
                    for t in (i + 1)..=(i + d) {
                        f = f.mul(&F::from_usize(t));
                    }
                    rhs = rhs.sub(&b[d].mul(&p[i + d]).mul(&f));
                }
            }
            let mut f = F::one();
            for t in (i + 1)..=(i + mu) {
                f = f.mul(&F::from_usize(t));
            }
            p[i + mu] = rhs.div(&b[mu].mul(&f));
        }
        while p.len() > 1 && p.last().is_some_and(|x| x.is_zero()) {
            p.pop();
        }
        p
    }

    /// Runs levels `0..levels`; `seed` places `ℓ^u` in the kernel at level `n`,
    /// `forcing[N]` is added to the left side at level `N`.
    fn run(
        &self,
        levels: usize,
        seed: Option<(usize, usize)>,
        forcing: Option<&Rows<F>>,
    ) -> Rows<F> {
        let mut rows: Rows<F> = Vec::with_capacity(levels);
        for n in 0..levels {
            let mut g: Vec<F> = forcing
                .and_then(|f| f.get(n))
                .map(|row| row.iter().map(|x| F::zero().sub(x)).collect())
                .unwrap_or_default();
            for t in 1..=n.min(self.polys.len() - 1) {
                let prev = &rows[n - t];
                if prev.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let b = self.shifted(&self.polys[t], &self.s_at(n - t));
                let contrib = Self::apply_shifted(&b, prev);
                if g.len() < contrib.len() {
                    g.resize(contrib.len(), F::zero());
                }
                for (gi, ci) in g.iter_mut().zip(contrib) {
                    *gi = gi.sub(&ci);
                }
            }
            if g.is_empty() {
                g.push(F::zero());
            }
            let b0 = self.shifted(&self.polys[0], &self.s_at(n));
            let mut kernel = Vec::new();
            if let Some((sn, u)) = seed {
                if sn == n {
                    kernel = vec![F::zero(); u + 1];
                    kernel[u] = F::one();
                }
            }
            rows.push(Self::solve_level(&b0, &g, &kernel));
        }
        rows
    }

    /// Largest coefficient of the residual `L S + f`, computed from the rows.
    fn residual(&self, rows: &Rows<F>, forcing: Option<&Rows<F>>) -> Vec<Vec<F>> {
        let levels = rows.len();
        (0..levels)
            .map(|n| {
                let mut acc: Vec<F> = forcing.and_then(|f| f.get(n)).cloned().unwrap_or_default();
                for t in 0..=n.min(self.polys.len() - 1) {
                    let b = self.shifted(&self.polys[t], &self.s_at(n - t));
                    let c = Self::apply_shifted(&b, &rows[n - t]);
                    if acc.len() < c.len() {
                        acc.resize(c.len(), F::zero());
                    }
                    for (a, x) in acc.iter_mut().zip(c) {
                        *a = a.add(&x);
                    }
                }
                acc
            })
            .collect()
    }
}

/// A solution whose exponents are not rational.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericSolution {
    /// Leading exponent (in `q`).
    pub exponent: [f64; 2],
    #[serde(rename = "T")]
    pub t: u32,
    /// `parts[i][N]` multiplies `ℓ^i q^{exponent + N/T}`.
    pub parts: Vec<Vec<[f64; 2]>>,
    /// Largest residual coefficient magnitude.
    pub residual: f64,
}

/// One basis element.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Solution {
    Exact(LogQSeries),
    Numeric(NumericSolution),
}

impl Solution {
    pub fn log_degree(&self) -> usize {
        match self {
            Solution::Exact(s) => s.log_degree(),
            Solution::Numeric(s) => s.parts.len().saturating_sub(1),
        }
    }
}

/// The seed of a basis element: the coefficient of `ℓ^log_power q^exponent` is 1
/// and no other basis element is seeded at the same place.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolutionMarker {
    pub exponent: IndicialRoot,
    pub log_power: usize,
}

/// Indicial roots grouped by congruence mod `(1/T)Z`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentClass {
    pub roots: Vec<IndicialRoot>,
}

/// `m` independent solutions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrobeniusBasis {
    pub exponent_classes: Vec<ExponentClass>,
    pub solutions: Vec<Solution>,
    pub markers: Vec<SolutionMarker>,
    pub max_log_power: usize,
    pub flags: Vec<String>,
}

/// Roots of the indicial polynomial, exact where rational.
pub fn indicial_roots(ode: &RegularSingularODE) -> Vec<IndicialRoot> {
    polynomial_roots(&ode.indicial_polynomial())
}

fn exponent_step_units(ode: &RegularSingularODE) -> f64 {
    crate::arith::rational::to_f64(&ode.theta_value(&Rational::new(1.into(), BigInt::from(ode.t))))
}

fn same_class(ode: &RegularSingularODE, a: &IndicialRoot, b: &IndicialRoot) -> bool {
    match (&a.exact, &b.exact) {
        (Some(x), Some(y)) => {
            let d = ode.exponent_of(&(x - y)) * Rational::from_integer(BigInt::from(ode.t));
            d.is_integer()
        }
        (None, None) => {
            let d = (a.value - b.value) / exponent_step_units(ode);
            d.im.abs() < NUMERIC_ZERO && (d.re - d.re.round()).abs() < NUMERIC_ZERO
        }
        _ => false,
    }
}

/// Groups roots into classes, each sorted by decreasing real part.
fn classes(ode: &RegularSingularODE, roots: Vec<IndicialRoot>) -> Vec<ExponentClass> {
    let mut out: Vec<ExponentClass> = Vec::new();
    for r in roots {
        match out.iter_mut().find(|c| same_class(ode, &c.roots[0], &r)) {
            Some(c) => c.roots.push(r),
            None => out.push(ExponentClass { roots: vec![r] }),
        }
    }
    for c in out.iter_mut() {
        c.roots.sort_by(|a, b| {
            b.value
                .re
                .total_cmp(&a.value.re)
                .then(b.value.im.total_cmp(&a.value.im))
        });
    }
    out
}

fn rows_to_log_series(
    ode: &RegularSingularODE,
    rows: &Rows<CycQ>,
    base_exp: &Rational,
    trunc_abs: &Rational,
) -> LogQSeries {
    let degree = rows.iter().map(|r| r.len()).max().unwrap_or(1);
    let parts = (0..degree)
        .map(|i| {
            let coeffs: Vec<CycQ> = rows
                .iter()
                .map(|r| r.get(i).cloned().unwrap_or_else(|| CycQ::zero(1)))
                .collect();
            Puiseux::new(ode.t, base_exp.clone(), coeffs, Some(trunc_abs.clone())).normalized()
        })
        .collect();
    LogQSeries::new(ode.t, parts)
}

/// Relative order actually reachable, given the coefficient truncations.
fn effective_trunc(ode: &RegularSingularODE, trunc: &Rational) -> Result<Rational> {
    let step = Rational::new(1.into(), BigInt::from(ode.t));
    if *trunc < step {
        return Err(Error::TruncationTooSmall(format!(
            "truncation must be at least 1/T = 1/{}",
            ode.t
        )));
    }
    Ok(match ode.coefficient_trunc() {
        Some(c) if c < *trunc => c,
        _ => trunc.clone(),
    })
}

/// A basis of solutions to relative order `trunc` past each class's lowest exponent.
pub fn frobenius_solve(ode: &RegularSingularODE, trunc: &Rational) -> Result<FrobeniusBasis> {
    ode.validate()?;
    let rel = effective_trunc(ode, trunc)?;
    let levels = ode.levels_for(&rel);
    let cls = classes(ode, indicial_roots(ode));
    let mut solutions: Vec<(f64, f64, usize, Solution, IndicialRoot)> = Vec::new();
    let mut flags = Vec::new();
    for class in &cls {
        let lowest = class.roots.last().expect("nonempty class");
        // (root, offset in levels, multiplicity)
        let mut distinct: Vec<(&IndicialRoot, usize)> = Vec::new();
        for r in &class.roots {
            match distinct
                .iter_mut()
                .find(|(d, _)| match (&d.exact, &r.exact) {
                    (Some(a), Some(b)) => a == b,
                    _ => (d.value - r.value).norm() < NUMERIC_ZERO,
                }) {
                Some((_, k)) => *k += 1,
                None => distinct.push((r, 1)),
            }
        }
        match &lowest.exact {
            Some(base_x) => {
                let base_exp = ode.exponent_of(base_x);
                let rec: Recursion<CycQ> = Recursion::new(ode, levels, CycQ::from_rational(base_x));
                for (root, mult) in &distinct {
                    let x = root.exact.as_ref().expect("class is rational");
                    let off = ((ode.exponent_of(x) - &base_exp)
                        * Rational::from_integer(BigInt::from(ode.t)))
                    .to_integer()
                    .to_usize()
                    .expect("offset fits");
                    let trunc_abs = &base_exp + &rel;
                    for u in 0..*mult {
                        let rows = rec.run(levels, Some((off, u)), None);
                        let s = rows_to_log_series(ode, &rows, &base_exp, &trunc_abs);
                        let marker = IndicialRoot {
                            value: crate::arith::rational::to_f64(&ode.exponent_of(x)).into(),
                            exact: Some(ode.exponent_of(x)),
                        };
                        solutions.push((
                            root.value.re,
                            root.value.im,
                            u,
                            Solution::Exact(s),
                            marker,
                        ));
                    }
                }
            }
            None => {
                if !flags.iter().any(|f| f == NUMERIC_CLASS_FLAG) {
                    flags.push(NUMERIC_CLASS_FLAG.to_string());
                }
                let step = exponent_step_units(ode);
                let rec: Recursion<Complex64> = Recursion::new(ode, levels, lowest.value);
                let to_exp = |x: Complex64| x / (step * ode.t as f64);
                for (root, mult) in &distinct {
                    let off = ((root.value - lowest.value) / step).re.round() as usize;
                    for u in 0..*mult {
                        let rows = rec.run(levels, Some((off, u)), None);
                        let residual = rec
                            .residual(&rows, None)
                            .iter()
                            .flatten()
                            .map(|x| x.norm())
                            .fold(0.0, f64::max);
                        let degree = rows.iter().map(|r| r.len()).max().unwrap_or(1);
                        let parts = (0..degree)
                            .map(|i| {
                                rows.iter()
                                    .skip(off)
                                    .map(|r| r.get(i).map(|c| [c.re, c.im]).unwrap_or([0.0, 0.0]))
                                    .collect()
                            })
                            .collect();
                        let e = to_exp(root.value);
                        solutions.push((
                            root.value.re,
                            root.value.im,
                            u,
                            Solution::Numeric(NumericSolution {
                                exponent: [e.re, e.im],
                                t: ode.t,
                                parts,
                                residual,
                            }),
                            IndicialRoot {
                                value: e,
                                exact: None,
                            },
                        ));
                    }
                }
            }
        }
    }
    solutions.sort_by(|a, b| {
        b.0.total_cmp(&a.0)
            .then(b.1.total_cmp(&a.1))
            .then(a.2.cmp(&b.2))
    });
    let max_log_power = solutions
        .iter()
        .map(|s| s.3.log_degree())
        .max()
        .unwrap_or(0);
    let markers = solutions
        .iter()
        .map(|s| SolutionMarker {
            exponent: s.4.clone(),
            log_power: s.2,
        })
        .collect();
    Ok(FrobeniusBasis {
        exponent_classes: cls,
        markers,
        solutions: solutions.into_iter().map(|s| s.3).collect(),
        max_log_power,
        flags,
    })
}

/// A particular solution of `L S + f = 0`, to relative order `trunc`.
pub fn solve_inhomogeneous(
    ode: &RegularSingularODE,
    f: &LogQSeries,
    trunc: &Rational,
) -> Result<LogQSeries> {
    ode.validate()?;
    let mut rel = effective_trunc(ode, trunc)?;
    if f.is_zero() {
        return Ok(LogQSeries::new(ode.t, vec![Puiseux::zero(Some(rel))]));
    }
    if f.log_degree() > 0 && f.branching() != ode.t {
        return Err(Error::Incompatible(format!(
            "forcing uses log q_(1/{}) but the equation uses log q_(1/{})",
            f.branching(),
            ode.t
        )));
    }
    let base = f
        .parts()
        .iter()
        .filter_map(|p| p.valuation())
        .min()
        .expect("nonzero forcing has a valuation");
    let tr = Rational::from_integer(BigInt::from(ode.t));
    for p in f.parts() {
        for (e, c) in p.terms() {
            if !c.is_zero() && !((&e - &base) * &tr).is_integer() {
                return Err(Error::Incompatible(
                    "forcing exponents are not in one class mod 1/T".into(),
                ));
            }
        }
        if let Some(ft) = p.trunc() {
            let avail = ft - &base;
            if avail < rel {
                rel = avail;
            }
        }
    }
    if rel <= Rational::zero() {
        return Err(Error::TruncationTooSmall(
            "forcing carries no known terms".into(),
        ));
    }
    let levels = ode.levels_for(&rel);
    let forcing: Rows<CycQ> = (0..levels)
        .map(|n| {
            let e = &base + Rational::new(BigInt::from(n), BigInt::from(ode.t));
            f.parts()
                .iter()
                .map(|p| p.coefficient(&e).unwrap_or_else(|| CycQ::zero(1)))
                .collect()
        })
        .collect();
    let rec: Recursion<CycQ> =
        Recursion::new(ode, levels, CycQ::from_rational(&ode.theta_value(&base)));
    let rows = rec.run(levels, None, Some(&forcing));
    Ok(rows_to_log_series(ode, &rows, &base, &(&base + &rel)))
}

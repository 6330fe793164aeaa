//! Numeric verification of the transformation laws on a grid of `τ` values.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use serde_json::json;

use super::{GammaMat, TorsionPair};
use crate::arith::rational::to_f64;
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::forms::{
    del_k, eisenstein, g2_eval, pk_eval, pk_eval_continued, plambda_eval, qk_series, wp1_eval,
    SumControl, QK_DENOMINATOR_FLAG,
};
use crate::report::CheckReport;
use crate::series::{qx, NumericSeries, Puiseux};

const TWO_PI_I: Complex64 = Complex64::new(0.0, 2.0 * PI);

/// Flag recorded when a `P_k` value had to come from the continued evaluator.
pub const PK_CONTINUATION_FLAG: &str = "pk_meromorphic_continuation_outside_region";
/// Flag recorded by checks involving `P_λ`, whose `n = 0` term is omitted.
pub const PLAMBDA_FLAG: &str = "plambda_omits_n_equals_zero";

/// `{i, 1/2 + i, 0.3 + 1.7i}`.
pub fn default_tau_grid() -> Vec<Complex64> {
    vec![
        Complex64::new(0.0, 1.0),
        Complex64::new(0.5, 1.0),
        Complex64::new(0.3, 1.7),
    ]
}

/// A point inside `|q_τ| < |q_z| < 1`.
pub fn default_z(tau: Complex64) -> Complex64 {
    Complex64::new(0.1, 0.37 * tau.im)
}

/// Identifiers of the checkable laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    PInvariance,
    PDerivative,
    QModularity,
    G2Quasimodular,
    Wp1Laws,
    PlambdaLemma,
    KleinHecke,
    DelkCommutes,
}

impl Law {
    pub const ALL: [Law; 8] = [
        Law::PInvariance,
        Law::PDerivative,
        Law::QModularity,
        Law::G2Quasimodular,
        Law::Wp1Laws,
        Law::PlambdaLemma,
        Law::KleinHecke,
        Law::DelkCommutes,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Law::PInvariance => "P_invariance",
            Law::PDerivative => "P_derivative",
            Law::QModularity => "Q_modularity",
            Law::G2Quasimodular => "G2_quasimodular",
            Law::Wp1Laws => "wp1_laws",
            Law::PlambdaLemma => "Plambda_lemma",
            Law::KleinHecke => "klein_hecke",
            Law::DelkCommutes => "delk_commutes",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Law {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Law::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Law::ALL.iter().map(|l| l.as_str()).collect();
                Error::Parse(format!(
                    "unknown law {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// Inputs shared by the laws; each law reads the fields it needs.
#[derive(Clone, Debug, PartialEq)]
pub struct LawParams {
    pub k: u32,
    pub pair: TorsionPair,
    pub gamma: GammaMat,
    /// Fixed `z`; `None` picks [`default_z`] per grid point.
    pub z: Option<Complex64>,
    /// Number of `q_{1/M}` coefficients kept in exact series.
    pub terms: usize,
}

impl Default for LawParams {
    fn default() -> Self {
        LawParams {
            k: 1,
            pair: TorsionPair::from_parts(1, 2, 1, 3),
            gamma: GammaMat::S,
            z: None,
            terms: 400,
        }
    }
}

pub fn format_complex(z: Complex64) -> String {
    if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Parses `a+bi`, `a-bi`, `bi`, `a` or `a,b`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::Parse(format!("bad complex number {s:?}"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some((a, b)) = t.split_once(',') {
        return Ok(Complex64::new(
            a.parse().map_err(|_| bad())?,
            b.parse().map_err(|_| bad())?,
        ));
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(t.parse().map_err(|_| bad())?, 0.0));
    };
    let split = body
        .char_indices()
        .skip(1)
        .filter(|(i, c)| (*c == '+' || *c == '-') && !body[..*i].ends_with(['e', 'E']))
        .map(|(i, _)| i)
        .last();
    let imag = |x: &str| -> Result<f64> {
        match x {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => x.parse().map_err(|_| bad()),
        }
    };
    match split {
        Some(i) => Ok(Complex64::new(
            body[..i].parse().map_err(|_| bad())?,
            imag(&body[i..])?,
        )),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

struct Probe {
    error: f64,
    flags: Vec<&'static str>,
}

impl Probe {
    fn new(error: f64) -> Self {
        Probe {
            error,
            flags: Vec::new(),
        }
    }
}

fn guard(e: crate::series::Evaluation, tol: f64) -> Result<Complex64> {
    if e.tail_bound > tol / 10.0 {
        return Err(Error::TruncationInsufficient {
            bound: e.tail_bound,
            limit: tol / 10.0,
        });
    }
    Ok(e.value)
}

fn series_trunc(terms: usize, m: u32) -> Rational {
    Rational::new(BigInt::from(terms), BigInt::from(m))
}

/// Numeric `Q_k(t, τ)` from the exact series with `terms` coefficients.
pub fn qk_numeric(k: u32, pair: &TorsionPair, terms: usize) -> Result<NumericSeries> {
    let (_, m) = pair.jm();
    Ok(NumericSeries::new(&qk_series(
        k,
        pair,
        &series_trunc(terms, m),
    )?))
}

fn pk_any(
    k: u32,
    pair: &TorsionPair,
    z: Complex64,
    tau: Complex64,
    ctl: &SumControl,
    flags: &mut Vec<&'static str>,
) -> Result<Complex64> {
    match pk_eval(k, pair, z, tau, ctl) {
        Ok(e) => Ok(e.value),
        Err(Error::OutsideRegion(_)) => {
            flags.push(PK_CONTINUATION_FLAG);
            Ok(pk_eval_continued(k, pair, z, tau, ctl)?.value)
        }
        Err(e) => Err(e),
    }
}

/// Five-point central difference of `f` at `x` with step `h`.
fn derivative(
    f: impl Fn(Complex64) -> Result<Complex64>,
    x: Complex64,
    h: Complex64,
) -> Result<Complex64> {
    let a = f(x + h * 2.0)?;
    let b = f(x + h)?;
    let c = f(x - h)?;
    let d = f(x - h * 2.0)?;
    Ok((-a + b * 8.0 - c * 8.0 + d) / (h * 12.0))
}

/// `g_a(τ)` from its defining product, evaluated in floating point.
fn klein_numeric(pair: &TorsionPair, tau: Complex64, cut: usize) -> Complex64 {
    let a1 = to_f64(pair.j_over_m());
    let a2 = to_f64(pair.l_over_n());
    let b2 = a1 * a1 - a1 + 1.0 / 6.0;
    let x = qx(tau * a1 + a2);
    let q = qx(tau);
    let mut v = -qx(tau * (b2 / 2.0)) * qx(Complex64::new(a2 * (a1 - 1.0) / 2.0, 0.0)) * (1.0 - x);
    let mut qn = Complex64::new(1.0, 0.0);
    for _ in 1..=cut {
        qn *= q;
        v *= (1.0 - qn * x) * (1.0 - qn / x);
    }
    v
}

/// `h_a(τ)` from its defining sum, evaluated in floating point.
fn hecke_numeric(pair: &TorsionPair, tau: Complex64, cut: usize) -> Complex64 {
    let a1 = to_f64(pair.j_over_m());
    let a2 = to_f64(pair.l_over_n());
    let x = qx(tau * a1 + a2);
    let q = qx(tau);
    let mut s = Complex64::new(a1 - 0.5, 0.0) - x / (1.0 - x);
    let mut qm = Complex64::new(1.0, 0.0);
    for _ in 1..=cut {
        qm *= q;
        s -= qm * x / (1.0 - qm * x) - qm / x / (1.0 - qm / x);
    }
    TWO_PI_I * s
}

fn probe_point(law: Law, p: &LawParams, tau: Complex64, tol: f64) -> Result<Probe> {
    let ctl = SumControl {
        tol: tol / 100.0,
        ..SumControl::default()
    };
    let g = &p.gamma;
    let j = g.j_factor(tau);
    let gt = g.apply(tau);
    let z = p.z.unwrap_or_else(|| default_z(tau));
    match law {
        Law::PInvariance => {
            let mut flags = Vec::new();
            let lhs = pk_any(p.k, &p.pair, z / j, gt, &ctl, &mut flags)?;
            let rhs = pk_any(p.k, &p.pair.act(g), z, tau, &ctl, &mut flags)?;
            let mut pr = Probe::new((lhs - j.powi(p.k as i32) * rhs).norm());
            pr.flags = flags;
            Ok(pr)
        }
        Law::PDerivative => {
            let mut flags = Vec::new();
            let h = Complex64::new(1e-4, 0.0);
            let d = derivative(
                |w| pk_any(p.k, &p.pair, w, tau, &ctl, &mut Vec::new()),
                z,
                h,
            )?;
            let next = pk_any(p.k + 1, &p.pair, z, tau, &ctl, &mut flags)?;
            let mut pr = Probe::new((d - TWO_PI_I * p.k as f64 * next).norm());
            pr.flags = flags;
            Ok(pr)
        }
        Law::QModularity => {
            let lhs = guard(qk_numeric(p.k, &p.pair, p.terms)?.eval(gt)?, tol)?;
            let rhs = guard(qk_numeric(p.k, &p.pair.act(g), p.terms)?.eval(tau)?, tol)?;
            let mut pr = Probe::new((lhs - j.powi(p.k as i32) * rhs).norm());
            pr.flags.push(QK_DENOMINATOR_FLAG);
            Ok(pr)
        }
        Law::G2Quasimodular => {
            let lhs = g2_eval(gt, &ctl)?.value;
            let rhs = j * j * g2_eval(tau, &ctl)?.value - TWO_PI_I * g.c() as f64 * j;
            Ok(Probe::new((lhs - rhs).norm()))
        }
        Law::Wp1Laws => {
            let g2 = g2_eval(tau, &ctl)?.value;
            let w = wp1_eval(z, tau, &ctl)?.value;
            let e1 = (wp1_eval(z + 1.0, tau, &ctl)?.value - w - g2).norm();
            let e2 = (wp1_eval(z + tau, tau, &ctl)?.value - w - (g2 * tau - TWO_PI_I)).norm();
            let e3 = (wp1_eval(z / j, gt, &ctl)?.value - j * w).norm();
            Ok(Probe::new(e1.max(e2).max(e3)))
        }
        Law::PlambdaLemma => {
            let (l, n) = p.pair.ln();
            let lam = qx(Complex64::new(l as f64 / n as f64, 0.0));
            let lhs = plambda_eval(z, tau, lam, &ctl)?.value;
            let nt = tau * n as f64;
            let g2n = g2_eval(nt, &ctl)?.value;
            let mut rhs = Complex64::zero();
            let mut lk = Complex64::new(1.0, 0.0);
            for kk in 0..n {
                let w = z + tau * kk as f64;
                rhs += lk * (g2n * w - wp1_eval(w, nt, &ctl)?.value - Complex64::new(0.0, PI));
                lk *= lam;
            }
            let mut pr = Probe::new((lhs - rhs).norm());
            pr.flags.push(PLAMBDA_FLAG);
            Ok(pr)
        }
        Law::KleinHecke => {
            if p.pair.is_trivial() {
                return Err(Error::UndefinedAtLatticePoint);
            }
            let cut = 400;
            let q1 = guard(qk_numeric(1, &p.pair, p.terms)?.eval(tau)?, tol)?;
            let q2 = guard(qk_numeric(2, &p.pair, p.terms)?.eval(tau)?, tol)?;
            let e1 = (hecke_numeric(&p.pair, tau, cut) + TWO_PI_I * q1).norm();
            let h = Complex64::new(1e-4, 0.0);
            let dg = derivative(|t| Ok(klein_numeric(&p.pair, t, cut)), tau, h)?;
            let e2 = (dg / klein_numeric(&p.pair, tau, cut) + TWO_PI_I * q2).norm();
            let mut pr = Probe::new(e1.max(e2));
            pr.flags.push(QK_DENOMINATOR_FLAG);
            Ok(pr)
        }
        Law::DelkCommutes => {
            let e4 = eisenstein(4, &series_trunc(p.terms, 1))?;
            let (_, m) = p.pair.jm();
            let q2 = qk_series(2, &p.pair, &series_trunc(p.terms, m))?;
            let mut worst: f64 = 0.0;
            for (f, k) in [(e4, 4i64), (q2, 2i64)] {
                worst = worst.max(delk_error(&f, k, g, tau, tol, &ctl)?);
            }
            let mut pr = Probe::new(worst);
            pr.flags.push(QK_DENOMINATOR_FLAG);
            Ok(pr)
        }
    }
}

/// `|(∂_k f)|_{k+2}γ − ∂_k(f|_k γ)|` at `τ`, the right side by finite differences.
fn delk_error(
    f: &Puiseux,
    k: i64,
    g: &GammaMat,
    tau: Complex64,
    tol: f64,
    ctl: &SumControl,
) -> Result<f64> {
    let fs = NumericSeries::new(f);
    let dfs = NumericSeries::new(&del_k(f, k));
    let j = g.j_factor(tau);
    let lhs = j.powi(-(k as i32 + 2)) * guard(dfs.eval(g.apply(tau))?, tol)?;
    let slashed = |t: Complex64| -> Result<Complex64> {
        Ok(g.j_factor(t).powi(-(k as i32)) * guard(fs.eval(g.apply(t))?, tol)?)
    };
    let h = Complex64::new(5e-4, 0.0);
    let d = derivative(slashed, tau, h)?;
    let e2 = g2_eval(tau, ctl)?.value / (TWO_PI_I * TWO_PI_I);
    let rhs = d / TWO_PI_I + e2 * k as f64 * slashed(tau)?;
    Ok((lhs - rhs).norm())
}

/// Checks `law` at every grid point and reports the largest discrepancy.
pub fn verify_law(
    law: Law,
    params: &LawParams,
    grid: &[Complex64],
    tol: f64,
) -> Result<CheckReport> {
    let probes = Exec::default().map(grid, |&tau| probe_point(law, params, tau, tol));
    let mut error: f64 = 0.0;
    let mut flags: Vec<&'static str> = Vec::new();
    for pr in probes {
        let pr = pr?;
        error = if pr.error.is_nan() {
            f64::NAN
        } else {
            error.max(pr.error)
        };
        for f in pr.flags {
            if !flags.contains(&f) {
                flags.push(f);
            }
        }
    }
    let mut report = CheckReport::numeric(law.as_str(), error, tol)
        .param(
            "tau_grid",
            json!(grid.iter().map(|t| format_complex(*t)).collect::<Vec<_>>()),
        )
        .param("tol", tol);
    report = match law {
        Law::PInvariance | Law::PDerivative => report
            .param("k", params.k)
            .param("pair", params.pair.to_string())
            .param("gamma", params.gamma.to_string()),
        Law::QModularity => report
            .param("k", params.k)
            .param("pair", params.pair.to_string())
            .param("gamma", params.gamma.to_string())
            .param("terms", params.terms),
        Law::G2Quasimodular => report.param("gamma", params.gamma.to_string()),
        Law::Wp1Laws => report.param("gamma", params.gamma.to_string()),
        Law::PlambdaLemma => report.param("pair", params.pair.to_string()),
        Law::KleinHecke => report
            .param("pair", params.pair.to_string())
            .param("terms", params.terms),
        Law::DelkCommutes => report
            .param("pair", params.pair.to_string())
            .param("gamma", params.gamma.to_string())
            .param("terms", params.terms),
    };
    if let Some(z) = params.z {
        report = report.param("z", format_complex(z));
    }
    for f in flags {
        report = report.flag(f);
    }
    Ok(report)
}

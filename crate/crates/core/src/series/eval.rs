//! Numeric evaluation of q-series on the upper half-plane.

use num_complex::Complex64;
use num_traits::Zero;

use super::{LogQSeries, Puiseux};
use crate::arith::rational::to_f64;
use crate::error::{Error, Result};

const TWO_PI_I: Complex64 = Complex64::new(0.0, std::f64::consts::TAU);

/// A value together with an estimate of the neglected tail.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    pub tail_bound: f64,
}

/// `e^{2πi x}`.
pub fn qx(x: Complex64) -> Complex64 {
    (TWO_PI_I * x).exp()
}

/// A Puiseux series with coefficients already embedded in `C`, for repeated
/// evaluation.
#[derive(Clone, Debug)]
pub struct NumericSeries {
    t: u32,
    lead: f64,
    coeffs: Vec<Complex64>,
    trunc: Option<f64>,
    max_abs: f64,
}

impl NumericSeries {
    pub fn new(s: &Puiseux) -> Self {
        let coeffs: Vec<Complex64> = s.coeffs().iter().map(|c| c.embed()).collect();
        let max_abs = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        NumericSeries {
            t: s.branching(),
            lead: to_f64(s.leading_exponent()),
            coeffs,
            trunc: s.trunc().map(to_f64),
            max_abs,
        }
    }

    pub fn eval(&self, tau: Complex64) -> Result<Evaluation> {
        if tau.im <= 0.0 {
            return Err(Error::NotConvergent(tau.im));
        }
        let step = qx(tau / self.t as f64);
        let mut power = qx(tau * self.lead);
        let mut acc = Complex64::zero();
        for c in &self.coeffs {
            if !c.is_zero() {
                acc += c * power;
            }
            power *= step;
        }
        let tail_bound = match self.trunc {
            None => 0.0,
            Some(tr) => {
                let r = (-std::f64::consts::TAU * tau.im).exp();
                let rt = r.powf(1.0 / self.t as f64);
                r.powf(tr) / (1.0 - rt) * self.max_abs
            }
        };
        Ok(Evaluation {
            value: acc,
            tail_bound,
        })
    }
}

pub fn eval_puiseux(s: &Puiseux, tau: Complex64) -> Result<Evaluation> {
    NumericSeries::new(s).eval(tau)
}

/// Evaluates `Σ_i ℓ^i S_i(τ)` with `ℓ = log q_{1/T} = 2πiτ/T` on the principal branch.
pub fn eval_log_series(s: &LogQSeries, tau: Complex64) -> Result<Evaluation> {
    let ell = TWO_PI_I * tau / s.branching() as f64;
    let mut value = Complex64::zero();
    let mut tail = 0.0;
    let mut power = Complex64::new(1.0, 0.0);
    for part in s.parts() {
        let e = eval_puiseux(part, tau)?;
        value += power * e.value;
        tail += power.norm() * e.tail_bound;
        power *= ell;
    }
    Ok(Evaluation {
        value,
        tail_bound: tail,
    })
}

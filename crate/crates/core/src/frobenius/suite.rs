//! A fixed collection of equations whose solutions are checked by residual.

use super::ode::RegularSingularODE;
use super::solve::{frobenius_solve, solve_inhomogeneous, Solution};
use crate::arith::rational::{int, rat};
use crate::arith::{CycQ, Rational};
use crate::error::Result;
use crate::forms::eisenstein;
use crate::report::CheckReport;
use crate::series::{divisor_sums, LogQSeries, Puiseux, ThetaScale};

/// One equation, optionally with forcing term `f` in `L S + f = 0`.
#[derive(Clone, Debug)]
pub struct SuiteCase {
    pub name: &'static str,
    pub ode: RegularSingularODE,
    pub forcing: Option<LogQSeries>,
    pub trunc: Rational,
}

fn c(v: i64) -> Puiseux {
    Puiseux::constant(CycQ::from_int(v), None)
}

fn cr(n: i64, d: i64) -> Puiseux {
    Puiseux::constant(CycQ::from_rational(&rat(n, d)), None)
}

fn mono(coef: i64, exp: Rational) -> Puiseux {
    Puiseux::monomial(CycQ::from_int(coef), exp, None)
}

fn ode(t: u32, coeffs: Vec<Puiseux>) -> RegularSingularODE {
    RegularSingularODE::new(t, coeffs).expect("suite equations are well formed")
}

/// Ten equations covering distinct roots, resonance, logarithms, branching,
/// series coefficients, cyclotomic data and a forcing term. Each case is solved
/// to 60 coefficients of `q_{1/T}`.
pub fn standard_suite() -> Vec<SuiteCase> {
    let terms = 60i64;
    let tr = |t: i64| rat(terms, t);
    let coeff_trunc = int(terms + 2);
    // Σ σ₁(n) qⁿ
    let sig: Vec<CycQ> = divisor_sums(terms as usize + 2)
        .iter()
        .map(|v| CycQ::from_int(*v))
        .collect();
    let sigma_series = Puiseux::new(1, int(0), sig, Some(coeff_trunc.clone()));
    let e2 = eisenstein(2, &coeff_trunc).expect("weight 2");
    let zeta3 = Puiseux::monomial(CycQ::root(1, 3), int(1), None);
    let half = rat(1, 2);
    vec![
        SuiteCase {
            name: "half_integer_pair",
            ode: ode(1, vec![cr(-1, 4), c(0)]),
            forcing: None,
            trunc: tr(1),
        },
        SuiteCase {
            name: "double_root_log",
            ode: ode(1, vec![c(0), c(0)]),
            forcing: None,
            trunc: tr(1),
        },
        SuiteCase {
            name: "partition_product",
            ode: ode(1, vec![sigma_series.neg()]),
            forcing: None,
            trunc: tr(1),
        },
        SuiteCase {
            name: "weight_two_eisenstein_coefficient",
            ode: ode(1, vec![c(0), e2.neg()]),
            forcing: None,
            trunc: tr(1),
        },
        SuiteCase {
            name: "half_integer_exponents_branching_two",
            ode: ode(2, vec![cr(-1, 4).add(&mono(1, half.clone())), c(0)]),
            forcing: None,
            trunc: tr(2),
        },
        SuiteCase {
            name: "fine_theta_branching_two",
            ode: ode(2, vec![c(-1).add(&mono(1, half.clone())), mono(1, int(1))])
                .with_theta(ThetaScale::OneOverT),
            forcing: None,
            trunc: tr(2),
        },
        SuiteCase {
            name: "triple_root_logs",
            ode: ode(1, vec![mono(1, int(2)), mono(1, int(1)), c(0)]),
            forcing: None,
            trunc: tr(1),
        },
        SuiteCase {
            name: "resonant_integer_roots",
            ode: ode(1, vec![mono(1, int(1)), c(-1)]),
            forcing: None,
            trunc: tr(1),
        },
        SuiteCase {
            name: "cyclotomic_coefficients",
            ode: ode(1, vec![cr(-1, 9), zeta3]),
            forcing: None,
            trunc: tr(1),
        },
        SuiteCase {
            name: "inhomogeneous_resonant_forcing",
            ode: ode(2, vec![cr(-1, 4), c(0)]),
            forcing: Some(LogQSeries::from_puiseux(
                2,
                Puiseux::new(2, half.clone(), vec![CycQ::one(); 200], Some(int(100))),
            )),
            trunc: tr(2),
        },
    ]
}

/// Solves `case` and checks every residual coefficient is exactly zero.
pub fn run_case(case: &SuiteCase) -> Result<CheckReport> {
    let mut worst_numeric: f64 = 0.0;
    let mut exact_ok = true;
    let mut count = 0usize;
    let mut max_log = 0usize;
    match &case.forcing {
        Some(f) => {
            let s = solve_inhomogeneous(&case.ode, f, &case.trunc)?;
            max_log = s.log_degree();
            exact_ok &= case.ode.apply(&s).add(f).is_zero();
            count = 1;
        }
        None => {
            let basis = frobenius_solve(&case.ode, &case.trunc)?;
            max_log = max_log.max(basis.max_log_power);
            for sol in &basis.solutions {
                count += 1;
                match sol {
                    Solution::Exact(s) => exact_ok &= case.ode.apply(s).is_zero(),
                    Solution::Numeric(n) => worst_numeric = worst_numeric.max(n.residual),
                }
            }
            exact_ok &= count == case.ode.order;
        }
    }
    let pass = exact_ok && worst_numeric < 1e-9;
    Ok(CheckReport::exact("frobenius_residual", pass)
        .param("ode", case.name)
        .param("order", case.ode.order)
        .param("T", case.ode.t)
        .param("solutions", count)
        .param("max_log_power", max_log))
}

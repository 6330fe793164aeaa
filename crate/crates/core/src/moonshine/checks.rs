//! Exact and numeric consistency gates for the moonshine series.

use num_complex::Complex64;

use super::data::MoonshineData;
use super::series::{
    char_solve, default_combos, delta_j_j, hauptmodul_for, theta_trace, twisted_weight4,
    weight4_onepoint,
};
use crate::arith::rational::int;
use crate::arith::{CycQ, Rational};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::modular::{format_complex, slash_eval, GammaMat};
use crate::report::CheckReport;
use crate::series::{NumericSeries, Puiseux};

/// Tolerance for the numeric modularity checks.
pub const MODULARITY_TOL: f64 = 1e-6;

fn eval_checked(s: &NumericSeries, tau: Complex64, tol: f64) -> Result<Complex64> {
    let e = s.eval(tau)?;
    if e.tail_bound > tol / 10.0 {
        return Err(Error::TruncationInsufficient {
            bound: e.tail_bound,
            limit: tol / 10.0,
        });
    }
    Ok(e.value)
}

/// `max_τ |(f|_k γ)(τ) − f(τ)|`.
fn invariance_error(
    f: &Puiseux,
    k: i32,
    g: &GammaMat,
    taus: &[Complex64],
    tol: f64,
) -> Result<f64> {
    let s = NumericSeries::new(f);
    let mut worst: f64 = 0.0;
    for &tau in taus {
        let lhs = slash_eval(|t| eval_checked(&s, t, tol), k, g, tau)?;
        let rhs = eval_checked(&s, tau, tol)?;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

fn modularity_report(
    name: &str,
    f: &Puiseux,
    k: i32,
    g: &GammaMat,
    taus: &[Complex64],
) -> Result<CheckReport> {
    let err = invariance_error(f, k, g, taus, MODULARITY_TOL)?;
    Ok(CheckReport::numeric(name, err, MODULARITY_TOL)
        .param("weight", k)
        .param("gamma", g.to_string())
        .param(
            "tau",
            taus.iter().map(|t| format_complex(*t)).collect::<Vec<_>>(),
        ))
}

/// The exact braces and character identities.
pub fn exact_checks(trunc: &Rational) -> Result<Vec<CheckReport>> {
    let (_, braces) = weight4_onepoint(trunc)?;
    let (z, _) = weight4_onepoint(trunc)?;
    let c1 = braces.coefficient(&int(1));
    let c2 = braces.coefficient(&int(2));
    let mut out = vec![
        CheckReport::exact(
            "braces_coefficients",
            c1 == Some(CycQ::from_int(141444)) && c2 == Some(CycQ::from_int(68234240)),
        )
        .param("q1", c1.map(|c| c.to_string()).unwrap_or_default())
        .param("q2", c2.map(|c| c.to_string()).unwrap_or_default()),
        CheckReport::exact("weight4_integral_exponents", z.has_integral_exponents()),
    ];
    let (_, _, big_j) = delta_j_j(trunc)?;
    out.push(CheckReport::exact(
        "J_head",
        big_j.coefficient(&int(-1)) == Some(CycQ::one())
            && big_j.coefficient(&int(0)) == Some(CycQ::zero(1))
            && big_j.coefficient(&int(1)) == Some(CycQ::from_int(196884)),
    ));
    let chars = char_solve(&braces, &default_combos());
    let hint = MoonshineData::builtin().char_degrees_hint;
    let report = match chars {
        Ok(c) => {
            let agrees = hint.iter().zip(&c.degrees).all(|(a, b)| a == b);
            CheckReport::exact("char_solve", c.degrees == [1, 196883, 21296876] && agrees)
                .param("degrees", c.degrees.clone())
        }
        Err(e) => CheckReport::exact("char_solve", false).param("error", e.to_string()),
    };
    out.push(report);
    Ok(out)
}

/// Numeric modularity of `Z`, the twisted forms, the hauptmoduln and `θJ`.
pub fn modularity_checks(trunc: &Rational, exec: Exec) -> Result<Vec<CheckReport>> {
    let i = Complex64::new(0.0, 1.0);
    let taus_full = [i, Complex64::new(0.0, 1.2)];
    let st = GammaMat::S.mul(&GammaMat::T);
    let g0 = |n: i64| GammaMat::new(1, 0, n, 1).expect("unimodular");
    // Im(γτ) = 2/9 for both Γ₀(3) points, keeping cancellation mild
    let taus_three = [Complex64::new(-1.0 / 3.0, 0.5)];

    let (z, _) = weight4_onepoint(trunc)?;
    let tw2 = twisted_weight4("2B", trunc)?;
    let tw3 = twisted_weight4("3B", trunc)?;
    let t2 = hauptmodul_for("2B", trunc)?;
    let t3 = hauptmodul_for("3B", trunc)?;
    let tj = theta_trace("1A", trunc)?;

    type Job<'a> = (&'static str, &'a Puiseux, i32, GammaMat, Vec<Complex64>);
    let jobs: Vec<Job> = vec![
        ("weight4_Z", &z, 4, GammaMat::S, taus_full.to_vec()),
        ("weight4_Z", &z, 4, GammaMat::T, taus_full.to_vec()),
        ("weight4_Z", &z, 4, st, taus_full.to_vec()),
        ("twisted_2B", &tw2, 4, GammaMat::T, vec![i]),
        ("twisted_2B", &tw2, 4, g0(2), vec![i]),
        ("twisted_3B", &tw3, 4, GammaMat::T, taus_three.to_vec()),
        ("twisted_3B", &tw3, 4, g0(3), taus_three.to_vec()),
        ("hauptmodul_2B", &t2, 0, GammaMat::T, vec![i]),
        ("hauptmodul_2B", &t2, 0, g0(2), vec![i]),
        ("hauptmodul_3B", &t3, 0, GammaMat::T, taus_three.to_vec()),
        ("hauptmodul_3B", &t3, 0, g0(3), taus_three.to_vec()),
        ("theta_J_weight2", &tj, 2, GammaMat::S, taus_full.to_vec()),
        ("theta_J_weight2", &tj, 2, GammaMat::T, taus_full.to_vec()),
    ];
    exec.map(&jobs, |(name, f, k, g, taus)| {
        modularity_report(name, f, *k, g, taus)
    })
    .into_iter()
    .collect()
}

/// Every moonshine gate, exact ones first.
pub fn moonshine_checks(trunc: &Rational, exec: Exec) -> Result<Vec<CheckReport>> {
    let mut out = exact_checks(trunc)?;
    out.extend(modularity_checks(trunc, exec)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_gates_pass() {
        let reports = moonshine_checks(&int(200), Exec::default()).unwrap();
        for r in &reports {
            assert!(r.pass, "{}", serde_json::to_string(r).unwrap());
        }
        assert_eq!(reports.len(), 17);
    }

    #[test]
    fn wrong_weight_is_detected() {
        let (z, _) = weight4_onepoint(&int(120)).unwrap();
        let err = invariance_error(
            &z,
            2,
            &GammaMat::S,
            &[Complex64::new(0.0, 1.2)],
            MODULARITY_TOL,
        )
        .unwrap();
        assert!(err > 1.0, "{err}");
    }
}

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use orbiform::arith::{format_rational, int, parse_rational, Rational};
use orbiform::exec::Exec;
use orbiform::forms::{
    bernoulli_identities_check, bernoulli_poly, eisenstein, pk_eval, pk_eval_continued, qk_series,
    residue_identity, zhu_coeff, zhu_coeff_binomial, SumControl, QK_DENOMINATOR_FLAG,
};
use orbiform::frobenius::{
    frobenius_solve, run_case, solve_inhomogeneous, standard_suite, RegularSingularODE,
};
use orbiform::modular::{
    default_tau_grid, format_complex, parse_complex, reduce_cyclic_pair, verify_law, GammaMat, Law,
    LawParams, TorsionPair, PK_CONTINUATION_FLAG,
};
use orbiform::moonshine::{
    char_solve, default_combos, delta_j_j, hauptmodul, moonshine_checks, theta_trace_in,
    twisted_weight4_in, weight4_onepoint, MoonshineData,
};
use orbiform::series::LogQSeries;
use orbiform::{CheckReport, Error};
use serde_json::{json, Value};

use crate::args::{Cli, Command, MoonshineCmd, PairsCmd, VerifyArgs};

/// Validated global options.
#[derive(Debug)]
pub struct RunConfig {
    pub command: String,
    pub trunc: Rational,
    pub tol: f64,
    pub output_path: Option<PathBuf>,
    pub data_file: Option<PathBuf>,
}

enum Outcome {
    Value(Value, String),
    Checks(Vec<CheckReport>),
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn config(cli: &Cli) -> Result<RunConfig, Error> {
    let trunc = parse_rational(&cli.global.trunc)?;
    if trunc <= int(0) {
        return Err(usage("--trunc must be a positive rational"));
    }
    if cli.global.tol.is_nan() || cli.global.tol <= 0.0 {
        return Err(usage("--tol must be positive"));
    }
    Ok(RunConfig {
        command: command_name(&cli.command).to_string(),
        trunc,
        tol: cli.global.tol,
        output_path: cli.global.output.clone(),
        data_file: cli
            .global
            .data
            .clone()
            .or_else(|| std::env::var_os("ORBIFORM_DATA").map(PathBuf::from)),
    })
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Bernoulli { .. } => "bernoulli",
        Command::Eisenstein { .. } => "eisenstein",
        Command::Qk { .. } => "qk",
        Command::PkEval { .. } => "pk-eval",
        Command::ZhuCoeff { .. } => "zhu-coeff",
        Command::Verify(_) => "verify",
        Command::Frobenius { .. } => "frobenius",
        Command::Moonshine { .. } => "moonshine",
        Command::Pairs { .. } => "pairs",
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn moonshine_data(cfg: &RunConfig) -> Result<MoonshineData, Error> {
    match &cfg.data_file {
        Some(p) => MoonshineData::from_json(&read(p)?),
        None => Ok(MoonshineData::builtin()),
    }
}

fn pair(j: &str, l: &str) -> Result<TorsionPair, Error> {
    Ok(TorsionPair::new(parse_rational(j)?, parse_rational(l)?))
}

fn cval(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn run(cli: Cli) -> u8 {
    let cfg = match config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let outcome = match dispatch(&cli.command, &cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let (text, summary, code) = match outcome {
        Outcome::Value(v, summary) => (format!("{v}\n"), summary, 0),
        Outcome::Checks(reports) => {
            let mut text = String::new();
            for r in &reports {
                text.push_str(&r.to_json());
                text.push('\n');
            }
            let passed = reports.iter().filter(|r| r.pass).count();
            let failed: Vec<&str> = reports
                .iter()
                .filter(|r| !r.pass)
                .map(|r| r.check.as_str())
                .collect();
            let mut summary = format!("{passed}/{} checks passed", reports.len());
            if !failed.is_empty() {
                summary.push_str(&format!("; failing: {}", failed.join(", ")));
            }
            (text, summary, if failed.is_empty() { 0 } else { 1 })
        }
    };
    match &cfg.output_path {
        Some(p) => {
            if let Err(e) = fs::write(p, &text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    eprintln!("{}: {summary}", cfg.command);
    code
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Outcome, Error> {
    match cmd {
        Command::Bernoulli { k, x } => {
            let p = bernoulli_poly(*k);
            let poly: Vec<String> = p.coeffs().iter().map(format_rational).collect();
            let mut v = json!({ "poly": poly });
            let mut summary = format!("B_{k} has degree {}", p.degree());
            if let Some(x) = x {
                let x = parse_rational(x)?;
                let val = format_rational(&p.eval(&x));
                summary = format!("B_{k}({}) = {val}", format_rational(&x));
                v["value"] = json!(val);
            }
            Ok(Outcome::Value(v, summary))
        }
        Command::Eisenstein { k } => {
            let s = eisenstein(*k, &cfg.trunc)?;
            Ok(Outcome::Value(
                json!(s),
                format!("{} coefficients", s.len()),
            ))
        }
        Command::Qk {
            k,
            j_over_m,
            l_over_n,
        } => {
            let p = pair(j_over_m, l_over_n)?;
            let s = qk_series(*k, &p, &cfg.trunc)?;
            let n = s.len();
            Ok(Outcome::Value(
                json!({ "series": s, "deviation_flags": [QK_DENOMINATOR_FLAG] }),
                format!("{n} coefficients"),
            ))
        }
        Command::PkEval {
            k,
            j_over_m,
            l_over_n,
            z,
            tau,
            cutoff,
        } => {
            let p = pair(j_over_m, l_over_n)?;
            let (z, tau) = (parse_complex(z)?, parse_complex(tau)?);
            let ctl = SumControl {
                cutoff: (*cutoff).max(1),
                ..SumControl::default()
            };
            let mut flags: Vec<&str> = Vec::new();
            let e = match pk_eval(*k, &p, z, tau, &ctl) {
                Err(Error::OutsideRegion(_)) => {
                    flags.push(PK_CONTINUATION_FLAG);
                    pk_eval_continued(*k, &p, z, tau, &ctl)?
                }
                other => other?,
            };
            Ok(Outcome::Value(
                json!({ "value": cval(e.value), "tail_bound": e.tail_bound, "deviation_flags": flags }),
                format!("P_{k} = {}", format_complex(e.value)),
            ))
        }
        Command::ZhuCoeff { p, i, m } => {
            let a = zhu_coeff(*p, *i, *m);
            let b = zhu_coeff_binomial(*p, *i, *m);
            let agree = a == b;
            Ok(Outcome::Value(
                json!({ "value": format_rational(&a), "binomial_route": format_rational(&b), "agree": agree }),
                format!("c({p},{i},{m}) = {}", format_rational(&a)),
            ))
        }
        Command::Verify(v) => verify(v, cfg),
        Command::Frobenius { ode, forcing } => {
            let eq = RegularSingularODE::from_json(&read(ode)?)?;
            match forcing {
                Some(f) => {
                    let f: LogQSeries = serde_json::from_str(&read(f)?)?;
                    let s = solve_inhomogeneous(&eq, &f, &cfg.trunc)?;
                    let zero = eq.apply(&s).add(&f).is_zero();
                    Ok(Outcome::Value(
                        json!({ "solution": s, "residual_zero": zero }),
                        format!("particular solution with log degree {}", s.log_degree()),
                    ))
                }
                None => {
                    let b = frobenius_solve(&eq, &cfg.trunc)?;
                    let summary = format!(
                        "{} solutions, max log power {}",
                        b.solutions.len(),
                        b.max_log_power
                    );
                    Ok(Outcome::Value(json!(b), summary))
                }
            }
        }
        Command::Moonshine { what } => moonshine(what, cfg),
        Command::Pairs { what } => match what {
            PairsCmd::Reduce { a, c, n } => {
                let (g, e) = reduce_cyclic_pair(*a, *c, *n)?;
                let [ga, gb, gc, gd] = g.entries();
                Ok(Outcome::Value(
                    json!({ "gamma": [[ga, gb], [gc, gd]], "e": e }),
                    format!("({a},{c}) {g} = (0,{e}) mod {n}"),
                ))
            }
            PairsCmd::Orbit { j_over_m, l_over_n } => {
                let orbit = pair(j_over_m, l_over_n)?.orbit();
                let items: Vec<String> = orbit
                    .iter()
                    .map(|p| {
                        format!(
                            "{},{}",
                            format_rational(p.j_over_m()),
                            format_rational(p.l_over_n())
                        )
                    })
                    .collect();
                let n = items.len();
                Ok(Outcome::Value(
                    json!({ "orbit": items }),
                    format!("orbit of size {n}"),
                ))
            }
        },
    }
}

fn verify(v: &VerifyArgs, cfg: &RunConfig) -> Result<Outcome, Error> {
    match (&v.suite, &v.law) {
        (Some(s), _) if s == "all" => Ok(Outcome::Checks(suite_all(cfg.tol))),
        (Some(s), _) => Err(usage(format!(
            "unknown suite {s:?}; the only suite is \"all\""
        ))),
        (None, None) => Err(usage("give a law identifier or --suite all")),
        (None, Some(law)) => {
            let law: Law = law.parse()?;
            let params = LawParams {
                k: v.k,
                pair: TorsionPair::parse(&v.pair)?,
                gamma: GammaMat::parse(&v.gamma)?,
                z: v.z.as_deref().map(parse_complex).transpose()?,
                terms: v.terms,
            };
            let grid = match &v.tau {
                Some(t) => t
                    .split(',')
                    .map(parse_complex)
                    .collect::<Result<Vec<_>, _>>()?,
                None => default_tau_grid(),
            };
            let report = verify_law(law, &params, &grid, cfg.tol).unwrap_or_else(|e| {
                CheckReport::exact(law.as_str(), false).param("error", e.to_string())
            });
            Ok(Outcome::Checks(vec![report]))
        }
    }
}

type Job = Box<dyn Fn() -> Vec<CheckReport> + Send + Sync>;

fn failed(check: &str, e: Error) -> Vec<CheckReport> {
    vec![CheckReport::exact(check, false).param("error", e.to_string())]
}

/// Every batch check, run concurrently and merged in a fixed order.
fn suite_all(tol: f64) -> Vec<CheckReport> {
    let mut jobs: Vec<Job> = Vec::new();
    let gammas = [
        GammaMat::S,
        GammaMat::T,
        GammaMat::new(2, 1, 1, 1).expect("unimodular"),
    ];
    for law in Law::ALL {
        for g in gammas {
            jobs.push(Box::new(move || {
                let params = LawParams {
                    k: 2,
                    pair: TorsionPair::from_parts(1, 3, 1, 4),
                    gamma: g,
                    z: None,
                    terms: 200,
                };
                vec![
                    verify_law(law, &params, &default_tau_grid(), tol).unwrap_or_else(|e| {
                        CheckReport::exact(law.as_str(), false).param("error", e.to_string())
                    }),
                ]
            }));
        }
    }
    jobs.push(Box::new(|| {
        let xs = [
            int(0),
            orbiform::arith::rat(1, 2),
            orbiform::arith::rat(1, 3),
            orbiform::arith::rat(2, 5),
        ];
        let ok = (1..=20)
            .all(|k| (1..=10).all(|n| xs.iter().all(|x| bernoulli_identities_check(k, x, n))));
        vec![CheckReport::exact("bernoulli_identities", ok)
            .param("k_max", 20)
            .param("N_max", 10)]
    }));
    jobs.push(Box::new(|| {
        let ok = (-4..=10).all(|p| {
            (0..=12).all(|i| (0..=3).all(|m| zhu_coeff(p, i, m) == zhu_coeff_binomial(p, i, m)))
        });
        vec![CheckReport::exact("zhu_coeff_routes", ok)
            .param("p_max", 10)
            .param("i_max", 12)]
    }));
    jobs.push(Box::new(|| {
        let mut ok = true;
        for k in 0..=4u32 {
            for m in 1..=4i64 {
                for j in 1..=m {
                    let p = TorsionPair::from_parts(j, m, 1, 3);
                    for shift in -1..=3 {
                        match residue_identity(k, &p, shift, &int(30)) {
                            Ok(r) => ok &= r.holds(),
                            Err(e) => return failed("residue_identity", e),
                        }
                    }
                }
            }
        }
        vec![CheckReport::exact("residue_identity", ok)
            .param("k_max", 4)
            .param("M_max", 4)]
    }));
    for case in standard_suite() {
        jobs.push(Box::new(move || match run_case(&case) {
            Ok(r) => vec![r],
            Err(e) => failed("frobenius_residual", e),
        }));
    }
    jobs.push(Box::new(|| {
        moonshine_checks(&int(200), Exec::Sequential).unwrap_or_else(|e| failed("moonshine", e))
    }));
    Exec::default()
        .map(&jobs, |job| job())
        .into_iter()
        .flatten()
        .collect()
}

fn series_value(name: &str, s: &orbiform::series::Puiseux) -> Outcome {
    Outcome::Value(json!(s), format!("{name}: {} coefficients", s.len()))
}

fn moonshine(what: &MoonshineCmd, cfg: &RunConfig) -> Result<Outcome, Error> {
    let trunc = &cfg.trunc;
    Ok(match what {
        MoonshineCmd::J => {
            let (d, j, big_j) = delta_j_j(trunc)?;
            Outcome::Value(
                json!({ "delta": d, "j": j, "J": big_j }),
                "delta, j and J".into(),
            )
        }
        MoonshineCmd::Hauptmodul { label } => {
            let data = moonshine_data(cfg)?;
            series_value(
                &format!("T_{label}"),
                &hauptmodul(data.class(label)?, trunc)?,
            )
        }
        MoonshineCmd::Weight4 => {
            let (z, braces) = weight4_onepoint(trunc)?;
            Outcome::Value(
                json!({ "Z": z, "braces": braces }),
                "Z(v) and braces series".into(),
            )
        }
        MoonshineCmd::Twisted4 { label } => {
            let data = moonshine_data(cfg)?;
            series_value(
                &format!("Z(v,1,{label})"),
                &twisted_weight4_in(&data, label, trunc)?,
            )
        }
        MoonshineCmd::Theta { label } => {
            let data = moonshine_data(cfg)?;
            series_value(
                &format!("theta T_{label}"),
                &theta_trace_in(&data, label, trunc)?,
            )
        }
        MoonshineCmd::Chars => {
            let (_, braces) = weight4_onepoint(&trunc.clone().max(int(3)))?;
            let c = char_solve(&braces, &default_combos())?;
            let data = moonshine_data(cfg)?;
            let hint_agrees = data
                .char_degrees_hint
                .iter()
                .zip(&c.degrees)
                .all(|(a, b)| a == b);
            let summary = format!("chi = {:?}", c.degrees);
            Outcome::Value(
                json!({ "chi": c.degrees, "hint_agrees": hint_agrees }),
                summary,
            )
        }
        MoonshineCmd::Check => Outcome::Checks(moonshine_checks(
            &trunc.clone().max(int(3)),
            Exec::default(),
        )?),
    })
}

//! Δ, j, J, hauptmoduln and the weight-4 trace functions as exact series.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::data::{HauptmodulSpec, MoonshineData};
use crate::arith::rational::{int, rat};
use crate::arith::{CycQ, Rational};
use crate::error::{Error, Result};
use crate::forms::eisenstein;
use crate::series::{product_expand, Puiseux, ThetaScale};

fn konst(r: &Rational) -> Puiseux {
    Puiseux::constant(CycQ::from_rational(r), None)
}

fn check_trunc(trunc: &Rational) -> Result<()> {
    if *trunc < int(3) {
        return Err(Error::TruncationTooSmall(
            "moonshine series need trunc >= 3".into(),
        ));
    }
    Ok(())
}

/// `1 + 240 Σ σ₃(n) qⁿ`, to exponents below `trunc`.
pub fn e4_standard(trunc: &Rational) -> Puiseux {
    eisenstein(4, trunc).expect("weight 4").scale(&int(720))
}

/// `Δ = qΠ(1 − qⁿ)^{24}`, `j = E₄³/Δ`, `J = j − 744`, all below `q^{trunc}`.
pub fn delta_j_j(trunc: &Rational) -> Result<(Puiseux, Puiseux, Puiseux)> {
    check_trunc(trunc)?;
    let wide = trunc + int(1);
    let prod = product_expand(&[(1, 24)], &wide);
    let delta = prod.shift(&int(1)).truncate(trunc);
    let e4 = e4_standard(&wide);
    let j = e4.pow(3)?.mul(&prod.inv()?).shift(&int(-1)).truncate(trunc);
    let big_j = j.add(&konst(&int(-744)));
    Ok((delta, j, big_j))
}

/// The hauptmodul `T_g` for `spec`, below `q^{trunc}`. An empty eta list is `J`.
pub fn hauptmodul(spec: &HauptmodulSpec, trunc: &Rational) -> Result<Puiseux> {
    check_trunc(trunc)?;
    let series = if spec.eta_factors.is_empty() {
        delta_j_j(trunc)?.2.add(&konst(&spec.additive_constant))
    } else {
        let lead = spec.leading_exponent();
        let prod = product_expand(&spec.eta_factors, &(trunc - &lead));
        prod.shift(&lead).add(&konst(&spec.additive_constant))
    };
    let ok = series.coefficient(&int(-1)).is_some_and(|c| c.is_one())
        && series.coefficient(&int(0)).is_some_and(|c| c.is_zero())
        && series.valuation() == Some(int(-1));
    if !ok {
        return Err(Error::InvalidArgument(format!(
            "class {} does not expand as q^-1 + O(q)",
            spec.class_label
        )));
    }
    Ok(series)
}

/// Hauptmodul for a class of the bundled data.
pub fn hauptmodul_for(label: &str, trunc: &Rational) -> Result<Puiseux> {
    hauptmodul(MoonshineData::builtin().class(label)?, trunc)
}

/// `Z = 12·71·E₄·(J − 240)` with `E₄` as in [`eisenstein`], and
/// `braces = (60/71) Z = E₄_std (J − 240)`.
pub fn weight4_onepoint(trunc: &Rational) -> Result<(Puiseux, Puiseux)> {
    check_trunc(trunc)?;
    let (_, _, big_j) = delta_j_j(&(trunc + int(1)))?;
    let shifted_j = big_j.add(&konst(&int(-240)));
    let braces = e4_standard(&(trunc + int(1)))
        .mul(&shifted_j)
        .truncate(trunc);
    let z = braces.scale(&rat(71, 60));
    Ok((z, braces))
}

/// Degrees `χ₁ = 1 < χ₂ < …` solved from a braces series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterData {
    pub degrees: Vec<u64>,
}

/// The weights of `χ_i` in the coefficients of `q` and `q²` of the braces series.
pub fn default_combos() -> Vec<Vec<Rational>> {
    vec![
        vec![int(21), rat(51, 71)],
        vec![int(91), rat(701, 71), rat(221, 71)],
    ]
}

/// Solves `coeff(qⁿ) = Σ_i combos[n−1][i] χ_{i+1}` for the last `χ` of each row.
pub fn char_solve(braces: &Puiseux, combos: &[Vec<Rational>]) -> Result<CharacterData> {
    let mut chi: Vec<Rational> = vec![Rational::one()];
    for (row, weights) in combos.iter().enumerate() {
        let n = row as i64 + 1;
        let target = braces
            .coefficient(&int(n))
            .and_then(|c| c.to_rational())
            .ok_or_else(|| {
                Error::InvalidArgument(format!("braces series has no rational q^{n} coefficient"))
            })?;
        let unknown = weights.len() - 1;
        if unknown != chi.len() {
            return Err(Error::InvalidArgument(format!(
                "row {n} must introduce exactly one new character"
            )));
        }
        let known: Rational = weights[..unknown]
            .iter()
            .zip(&chi)
            .map(|(w, c)| w * c)
            .sum();
        let w = &weights[unknown];
        if w.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let x = (target - known) / w;
        let prev = chi.last().expect("χ₁");
        if !x.is_integer() || !x.is_positive() || x <= *prev {
            return Err(Error::NonIntegralCharacter(
                crate::arith::rational::format_rational(&x),
            ));
        }
        chi.push(x);
    }
    Ok(CharacterData {
        degrees: chi
            .iter()
            .map(|c| c.to_integer().to_u64().expect("degree fits"))
            .collect(),
    })
}

/// `(scale, c, sign)` in `12·71 {E₄(sτ)(T_g + c) + sign·c·E₄(τ)}`.
fn twisted_data(label: &str) -> Result<(u32, Rational, i64)> {
    match label {
        "2B" => Ok((2, rat(88, 71), -1)),
        "3B" => Ok((3, rat(360, 71), 1)),
        other => Err(Error::UnknownClass(other.to_string())),
    }
}

/// The weight-4 trace function for `g ∈ {2B, 3B}`, below `q^{trunc}`.
pub fn twisted_weight4(label: &str, trunc: &Rational) -> Result<Puiseux> {
    twisted_weight4_in(&MoonshineData::builtin(), label, trunc)
}

pub fn twisted_weight4_in(data: &MoonshineData, label: &str, trunc: &Rational) -> Result<Puiseux> {
    let (s, c, sign) = twisted_data(label)?;
    let t = hauptmodul(data.class(label)?, &(trunc + int(1)))?;
    let e4 = eisenstein(4, &(trunc + int(1)))?;
    let e4s = eisenstein(
        4,
        &((trunc + int(1)) / Rational::from_integer(BigInt::from(s)) + int(1)),
    )?
    .dilate(s);
    let inner = e4s
        .mul(&t.add(&konst(&c)))
        .add(&e4.scale(&(&c * Rational::from_integer(sign.into()))));
    Ok(inner.scale(&int(12 * 71)).truncate(trunc))
}

/// `θ T_g`, the weight-2 trace of the conformal vector.
pub fn theta_trace(label: &str, trunc: &Rational) -> Result<Puiseux> {
    theta_trace_in(&MoonshineData::builtin(), label, trunc)
}

pub fn theta_trace_in(data: &MoonshineData, label: &str, trunc: &Rational) -> Result<Puiseux> {
    Ok(hauptmodul(data.class(label)?, trunc)?.theta(ThetaScale::Full))
}

/// Coefficient of `q^{n−1}` in `θ T_g` from the trace on `V_n` (central charge 24).
pub fn weight2_coefficient(n: i64, trace: &Rational) -> Rational {
    (int(n) - int(1)) * trace
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeff(s: &Puiseux, n: i64) -> Rational {
        s.coefficient(&int(n)).unwrap().to_rational().unwrap()
    }

    #[test]
    fn delta_and_j_heads() {
        let (delta, j, big_j) = delta_j_j(&int(6)).unwrap();
        assert_eq!(
            [coeff(&delta, 1), coeff(&delta, 2), coeff(&delta, 3)],
            [int(1), int(-24), int(252)]
        );
        assert_eq!(coeff(&j, 0), int(744));
        assert_eq!(coeff(&big_j, -1), int(1));
        assert_eq!(coeff(&big_j, 0), int(0));
        assert_eq!(coeff(&big_j, 1), int(196884));
        assert_eq!(coeff(&big_j, 2), int(21493760));
        assert_eq!(coeff(&big_j, 3), int(864299970));
        assert!(big_j.coefficient(&int(6)).is_none());
    }

    #[test]
    fn hauptmoduln_heads() {
        let t2 = hauptmodul_for("2B", &int(5)).unwrap();
        assert_eq!([coeff(&t2, 1), coeff(&t2, 2)], [int(276), int(-2048)]);
        let t3 = hauptmodul_for("3B", &int(5)).unwrap();
        assert_eq!([coeff(&t3, 1), coeff(&t3, 2)], [int(54), int(-76)]);
        let t1 = hauptmodul_for("1A", &int(5)).unwrap();
        assert!(t1.agrees_with(&delta_j_j(&int(5)).unwrap().2));
        assert!(matches!(
            hauptmodul_for("5A", &int(5)),
            Err(Error::UnknownClass(_))
        ));
    }

    #[test]
    fn braces_and_characters() {
        let (z, braces) = weight4_onepoint(&int(4)).unwrap();
        assert_eq!(coeff(&braces, -1), int(1));
        assert_eq!(coeff(&braces, 0), int(0));
        assert_eq!(coeff(&braces, 1), int(141444));
        assert_eq!(coeff(&braces, 2), int(68234240));
        assert_eq!(coeff(&z, -1), rat(71, 60));
        let c = char_solve(&braces, &default_combos()).unwrap();
        assert_eq!(c.degrees, vec![1, 196883, 21296876]);
    }

    #[test]
    fn char_solve_rejects_bad_series() {
        let (_, braces) = weight4_onepoint(&int(4)).unwrap();
        let bad = braces.add(&Puiseux::monomial(CycQ::one(), int(1), None));
        assert!(matches!(
            char_solve(&bad, &default_combos()),
            Err(Error::NonIntegralCharacter(_))
        ));
    }

    #[test]
    fn twisted_heads() {
        let t = twisted_weight4("2B", &int(4)).unwrap();
        assert_eq!(coeff(&t, -1), rat(71, 60));
        assert!(t.has_integral_exponents());
        assert!(matches!(
            twisted_weight4("4A", &int(4)),
            Err(Error::UnknownClass(_))
        ));
        let t3 = twisted_weight4("3B", &int(4)).unwrap();
        assert_eq!(coeff(&t3, -2), int(0));
    }

    #[test]
    fn theta_j_heads() {
        let tj = theta_trace("1A", &int(4)).unwrap();
        assert_eq!(coeff(&tj, -1), int(-1));
        assert_eq!(coeff(&tj, 0), int(0));
        assert_eq!(coeff(&tj, 1), int(196884));
        assert_eq!(coeff(&tj, 2), weight2_coefficient(3, &int(21493760)));
    }
}

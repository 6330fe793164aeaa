//! Weight-k slash actions on numeric evaluators.

use num_complex::Complex64;

use super::{GammaMat, TorsionPair};
use crate::error::Result;

/// `(F|_k γ)(τ) = (cτ + d)^{−k} F(γτ)`.
pub fn slash_eval<F>(f: F, k: i32, g: &GammaMat, tau: Complex64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    Ok(g.j_factor(tau).powi(-k) * f(g.apply(tau))?)
}

/// `(F|_k γ)(t, z, τ) = (cτ + d)^{−k} F(t γ^{-1}, z/(cτ + d), γτ)` for
/// functions of a torsion pair and two complex variables.
pub fn slash_eval_jacobi<F>(
    f: F,
    k: i32,
    g: &GammaMat,
    pair: &TorsionPair,
    z: Complex64,
    tau: Complex64,
) -> Result<Complex64>
where
    F: Fn(&TorsionPair, Complex64, Complex64) -> Result<Complex64>,
{
    let j = g.j_factor(tau);
    Ok(j.powi(-k) * f(&pair.act(&g.inverse()), z / j, g.apply(tau))?)
}

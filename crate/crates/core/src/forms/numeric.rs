//! Floating-point evaluators for `G₂`, `℘₁`, `P_λ`, `P_k` and the Bernoulli
//! lattice sums, each returning a value together with a tail bound.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;

use super::bernoulli::bernoulli_value;
use crate::arith::rational::{factorial, to_f64};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::modular::TorsionPair;
use crate::series::{qx, Evaluation};

const TWO_PI_I: Complex64 = Complex64::new(0.0, 2.0 * PI);
const POLE_EPS: f64 = 1e-12;

/// Starting cutoff, target tail bound and hard cap for an escalating sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SumControl {
    pub cutoff: usize,
    pub tol: f64,
    pub cap: usize,
}

impl Default for SumControl {
    fn default() -> Self {
        SumControl {
            cutoff: 32,
            tol: 1e-14,
            cap: 100_000,
        }
    }
}

impl SumControl {
    pub fn with_tol(tol: f64) -> Self {
        SumControl {
            tol,
            ..Self::default()
        }
    }

    /// Re-runs `f` with doubled cutoffs until the tail bound drops below `tol`.
    fn escalate(&self, f: impl Fn(usize) -> Result<Evaluation>) -> Result<Evaluation> {
        let mut n = self.cutoff.max(1);
        loop {
            let e = f(n)?;
            if e.tail_bound <= self.tol {
                return Ok(e);
            }
            if n >= self.cap {
                return Err(Error::TruncationInsufficient {
                    bound: e.tail_bound,
                    limit: self.tol,
                });
            }
            n = (2 * n).min(self.cap);
        }
    }
}

/// `Σ_{t >= 0} (start + t)^p ρ^{start + t}` for `0 <= ρ < 1`, summed until negligible.
fn poly_geometric_tail(p: u32, rho: f64, start: f64) -> f64 {
    if rho >= 1.0 {
        return f64::INFINITY;
    }
    if rho == 0.0 {
        return 0.0;
    }
    let mut sum = 0.0;
    let mut n = start.max(1e-300);
    for _ in 0..10_000_000 {
        let term = n.powi(p as i32) * rho.powf(n);
        sum += term;
        let decreasing = (p as f64) < -(n * rho.ln());
        if decreasing && term <= sum * 1e-18 {
            break;
        }
        n += 1.0;
    }
    sum
}

/// `1/(1 − x)` with a pole guard.
fn recip_one_minus(x: Complex64) -> Result<Complex64> {
    let d = Complex64::new(1.0, 0.0) - x;
    if d.norm() < POLE_EPS {
        return Err(Error::NearPole(d.norm()));
    }
    Ok(d.inv())
}

fn check_tau(tau: Complex64) -> Result<()> {
    if tau.im <= 0.0 {
        Err(Error::NotConvergent(tau.im))
    } else {
        Ok(())
    }
}

/// `G₂(τ) = π²/3 + 2(2πi)² Σ_{n>=1} n qⁿ/(1 − qⁿ)`.
pub fn g2_eval(tau: Complex64, ctl: &SumControl) -> Result<Evaluation> {
    check_tau(tau)?;
    let q = qx(tau);
    let r = q.norm();
    ctl.escalate(|cut| {
        let mut s = Complex64::zero();
        let mut qn = Complex64::new(1.0, 0.0);
        for n in 1..=cut {
            qn *= q;
            s += qn * recip_one_minus(qn)? * n as f64;
        }
        let scale = 8.0 * PI * PI;
        let tail = scale * poly_geometric_tail(1, r, (cut + 1) as f64) / (1.0 - r);
        Ok(Evaluation {
            value: Complex64::new(PI * PI / 3.0, 0.0) + TWO_PI_I * TWO_PI_I * 2.0 * s,
            tail_bound: tail,
        })
    })
}

/// `℘₁(z, τ)`; each summand is kept in the closed form `x/(1 − x)`, so the
/// series is meromorphic in `z`.
pub fn wp1_eval(z: Complex64, tau: Complex64, ctl: &SumControl) -> Result<Evaluation> {
    let g2 = g2_eval(tau, ctl)?;
    let q = qx(tau);
    let qz = qx(z);
    let qz_inv = qz.inv();
    let head = Complex64::new(0.0, PI) * (qz + 1.0) * recip_one_minus(qz)? * -1.0;
    let r = q.norm();
    let m = qz.norm().max(qz_inv.norm());
    let series = ctl.escalate(|cut| {
        let mut s = Complex64::zero();
        let mut qn = Complex64::new(1.0, 0.0);
        for _ in 1..=cut {
            qn *= q;
            let a = qn * qz_inv;
            let b = qz * qn;
            s += a * recip_one_minus(a)? - b * recip_one_minus(b)?;
        }
        let lead = m * r.powi(cut as i32 + 1);
        let tail = if lead < 0.5 {
            2.0 * PI * 2.0 * 2.0 * lead / (1.0 - r)
        } else {
            f64::INFINITY
        };
        Ok(Evaluation {
            value: TWO_PI_I * s,
            tail_bound: tail,
        })
    })?;
    Ok(Evaluation {
        value: g2.value * z + head + series.value,
        tail_bound: g2.tail_bound * z.norm() + series.tail_bound,
    })
}

/// `P_λ(z, τ) = 2πi Σ′_{n ∈ Z} q_zⁿ/(1 − λqⁿ)`, the `n = 0` term omitted,
/// summed directly on `|q_τ| < |q_z| < 1`.
pub fn plambda_eval(
    z: Complex64,
    tau: Complex64,
    lambda: Complex64,
    ctl: &SumControl,
) -> Result<Evaluation> {
    check_tau(tau)?;
    region_check(z, tau)?;
    let q = qx(tau);
    let qz = qx(z);
    let lam_inv = lambda.inv();
    let rho = qz.norm().max((q / qz).norm());
    let r = q.norm();
    ctl.escalate(|cut| {
        let mut s = Complex64::zero();
        let mut qn = Complex64::new(1.0, 0.0);
        let mut zn = Complex64::new(1.0, 0.0);
        let mut zm = Complex64::new(1.0, 0.0);
        let qz_inv = qz.inv();
        for _ in 1..=cut {
            qn *= q;
            zn *= qz;
            zm *= qz_inv;
            s += zn * recip_one_minus(lambda * qn)?;
            // q_z^{-n}/(1 − λq^{-n}) = −λ^{-1} q_z^{-n} qⁿ/(1 − λ^{-1}qⁿ)
            s -= lam_inv * zm * qn * recip_one_minus(lam_inv * qn)?;
        }
        let tail = 2.0 * PI * 2.0 * poly_geometric_tail(0, rho, (cut + 1) as f64) / (1.0 - r);
        Ok(Evaluation {
            value: TWO_PI_I * s,
            tail_bound: tail,
        })
    })
}

fn region_check(z: Complex64, tau: Complex64) -> Result<()> {
    if z.im <= 0.0 || z.im >= tau.im {
        return Err(Error::OutsideRegion(format!(
            "need 0 < Im z < Im tau, got Im z = {}, Im tau = {}",
            z.im, tau.im
        )));
    }
    Ok(())
}

/// `(a, b)`: the offsets of the positive and negative halves of `j/M + Z`.
fn half_offsets(pair: &TorsionPair) -> (f64, f64) {
    let a = to_f64(pair.j_over_m());
    let b = if a < 1.0 { 1.0 - a } else { 1.0 };
    (a, b)
}

/// The `n = 0` contribution `0^{k−1}/(1 − λ)` (with `0⁰ = 1`), when present.
fn zero_term(k: u32, pair: &TorsionPair) -> Result<Complex64> {
    if !pair.j_over_m().is_integer() || k > 1 || pair.is_trivial() {
        return Ok(Complex64::zero());
    }
    recip_one_minus(pair.lambda().embed())
}

/// `P_k(μ, λ, z, τ)` summed directly over `n ∈ j/M + Z`, valid on
/// `|q_τ| < |q_z| < 1`.
pub fn pk_eval(
    k: u32,
    pair: &TorsionPair,
    z: Complex64,
    tau: Complex64,
    ctl: &SumControl,
) -> Result<Evaluation> {
    if k == 0 {
        return Err(Error::InvalidArgument("P_k needs k >= 1".into()));
    }
    check_tau(tau)?;
    region_check(z, tau)?;
    let lam = pair.lambda().embed();
    let lam_inv = lam.inv();
    let (a, b) = half_offsets(pair);
    let kf = to_f64(&Rational::from_integer(factorial(k - 1)));
    let rho = qx(z).norm().max((qx(tau) / qx(z)).norm());
    let r = qx(tau).norm();
    let zero = zero_term(k, pair)?;
    ctl.escalate(|cut| {
        let mut s = zero;
        for t in 0..cut {
            let n = a + t as f64;
            let qn = qx(tau * n);
            s += n.powi(k as i32 - 1) * qx(z * n) * recip_one_minus(lam * qn)?;
            let n = b + t as f64;
            let qn = qx(tau * n);
            let sign = if k % 2 == 1 { -1.0 } else { 1.0 };
            // (−n)^{k−1} q_z^{−n}/(1 − λq^{−n}) = (−1)^k n^{k−1} λ^{-1} q_z^{−n} qⁿ/(1 − λ^{-1}qⁿ)
            s += sign
                * n.powi(k as i32 - 1)
                * lam_inv
                * qx(-z * n)
                * qn
                * recip_one_minus(lam_inv * qn)?;
        }
        let denom = 1.0 - r.powf(a.min(b));
        let tail = 2.0 * poly_geometric_tail(k - 1, rho, a.min(b) + cut as f64) / denom / kf;
        Ok(Evaluation {
            value: s / kf,
            tail_bound: tail,
        })
    })
}

/// `Σ_{r>=0} (a + r)^{k−1} y^{a+r} = y^a (a + y d/dy)^{k−1} (1 − y)^{-1}`,
/// with `y^a` supplied by the caller.
fn shifted_polylog(k: u32, a: f64, y: Complex64, ya: Complex64) -> Result<Complex64> {
    // coefficients on u_i = (1 − y)^{−i}, with D u_i = i(u_{i+1} − u_i)
    let mut c = vec![0.0f64; k as usize + 1];
    c[1] = 1.0;
    for _ in 1..k {
        let mut next = vec![0.0f64; c.len()];
        for i in 1..c.len() {
            if c[i] == 0.0 {
                continue;
            }
            next[i] += c[i] * (a - i as f64);
            if i + 1 < c.len() {
                next[i + 1] += c[i] * i as f64;
            }
        }
        c = next;
    }
    let u = recip_one_minus(y)?;
    let mut up = Complex64::new(1.0, 0.0);
    let mut s = Complex64::zero();
    for ci in c.iter() {
        s += up * *ci;
        up *= u;
    }
    // index 0 carries u⁰, always zero here
    Ok(ya * (s - c[0]))
}

/// `P_k(μ, λ, z, τ)` continued meromorphically in `z`: the inner sums over
/// `n` are resummed in closed form, leaving sums over powers of `q_τ` that
/// converge for every `z` away from the poles `q_z ∈ q_τ^Z`.
pub fn pk_eval_continued(
    k: u32,
    pair: &TorsionPair,
    z: Complex64,
    tau: Complex64,
    ctl: &SumControl,
) -> Result<Evaluation> {
    if k == 0 {
        return Err(Error::InvalidArgument("P_k needs k >= 1".into()));
    }
    check_tau(tau)?;
    let lam = pair.lambda().embed();
    let (a, b) = half_offsets(pair);
    let kf = to_f64(&Rational::from_integer(factorial(k - 1)));
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let q = qx(tau);
    let r = q.norm();
    let zero = zero_term(k, pair)?;
    ctl.escalate(|cut| {
        let mut s = zero;
        let mut lm = Complex64::new(1.0, 0.0);
        for m in 0..=cut {
            let mf = m as f64;
            let y = qx(z + tau * mf);
            let ya = qx((z + tau * mf) * a);
            s += lm * shifted_polylog(k, a, y, ya)?;
            if m >= 1 {
                let y = qx(tau * mf - z);
                let yb = qx((tau * mf - z) * b);
                s += sign * lm.inv() * shifted_polylog(k, b, y, yb)?;
            }
            lm *= lam;
        }
        let next = cut as f64 + 1.0;
        let ya = qx(z + tau * next).norm();
        let yb = qx(tau * next - z).norm();
        let tail = if ya < 0.5 && yb < 0.5 {
            let la =
                ya.powf(a) * poly_geometric_tail(k - 1, ya, 0.0).max(1.0) * 2f64.powi(k as i32);
            let lb =
                yb.powf(b) * poly_geometric_tail(k - 1, yb, 0.0).max(1.0) * 2f64.powi(k as i32);
            (la / (1.0 - r.powf(a)) + lb / (1.0 - r.powf(b))) / kf
        } else {
            f64::INFINITY
        };
        Ok(Evaluation {
            value: s / kf,
            tail_bound: tail,
        })
    })
}

/// `(2πi)^{-k} Σ_{0<|m|<=cutoff} μ^m/m^k`, summed in reverse order over
/// fixed chunks so the result does not depend on the execution strategy.
pub fn prop44_sum(k: u32, j: i64, m: u32, cutoff: u64, exec: Exec) -> Complex64 {
    const CHUNK: u64 = 1 << 14;
    let roots: Vec<Complex64> = (0..m)
        .map(|t| qx(Complex64::new(t as f64 / m as f64, 0.0)))
        .collect();
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let chunks = cutoff.div_ceil(CHUNK) as usize;
    let partial = exec.map_range(chunks, |c| {
        let lo = c as u64 * CHUNK + 1;
        let hi = ((c as u64 + 1) * CHUNK).min(cutoff);
        let mut s = Complex64::zero();
        for n in (lo..=hi).rev() {
            let e = (j.rem_euclid(m as i64) as u64 * n % m as u64) as usize;
            let mu_n = roots[e];
            let term = mu_n + sign * mu_n.conj();
            s += term / (n as f64).powi(k as i32);
        }
        s
    });
    let total: Complex64 = partial
        .iter()
        .rev()
        .fold(Complex64::zero(), |acc, x| acc + x);
    total / TWO_PI_I.powi(k as i32)
}

/// `−B_k(j/M)/k!`.
pub fn prop44_expected(k: u32, j: i64, m: u32) -> f64 {
    let x = Rational::new(j.into(), (m as i64).into());
    to_f64(&(-bernoulli_value(k as usize, &x) / Rational::from_integer(factorial(k))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn g2_at_i() {
        // G₂(i) = π
        let g = g2_eval(c(0.0, 1.0), &SumControl::default()).unwrap();
        assert!((g.value - c(PI, 0.0)).norm() < 1e-12, "{}", g.value);
    }

    #[test]
    fn wp1_periodicity() {
        let ctl = SumControl::default();
        let tau = c(0.2, 1.1);
        let z = c(0.13, 0.31);
        let g2 = g2_eval(tau, &ctl).unwrap().value;
        let w = wp1_eval(z, tau, &ctl).unwrap().value;
        let w1 = wp1_eval(z + 1.0, tau, &ctl).unwrap().value;
        let wt = wp1_eval(z + tau, tau, &ctl).unwrap().value;
        assert!((w1 - w - g2).norm() < 1e-9);
        assert!((wt - w - (g2 * tau - TWO_PI_I)).norm() < 1e-9);
    }

    #[test]
    fn region_and_pole_errors() {
        let p = TorsionPair::from_parts(1, 2, 1, 3);
        let ctl = SumControl::default();
        assert!(matches!(
            pk_eval(1, &p, c(0.0, 2.0), c(0.0, 1.0), &ctl),
            Err(Error::OutsideRegion(_))
        ));
        assert!(matches!(
            pk_eval(1, &p, c(0.0, -0.1), c(0.0, 1.0), &ctl),
            Err(Error::OutsideRegion(_))
        ));
        assert!(matches!(
            wp1_eval(c(0.0, 0.0), c(0.0, 1.0), &ctl),
            Err(Error::NearPole(_))
        ));
    }

    #[test]
    fn continuation_agrees_inside_region() {
        let ctl = SumControl::default();
        for (j, m, l, n) in [(1, 2, 1, 3), (1, 1, 1, 2), (2, 3, 1, 1), (1, 1, 1, 1)] {
            let p = TorsionPair::from_parts(j, m, l, n);
            for k in 1..=4 {
                for (z, tau) in [(c(0.1, 0.4), c(0.0, 1.5)), (c(0.3, 0.2), c(0.25, 0.9))] {
                    let d = pk_eval(k, &p, z, tau, &ctl).unwrap();
                    let e = pk_eval_continued(k, &p, z, tau, &ctl).unwrap();
                    assert!(
                        (d.value - e.value).norm() < 1e-10,
                        "{p} k={k}: {} vs {}",
                        d.value,
                        e.value
                    );
                }
            }
        }
    }

    #[test]
    fn prop44_classical_values() {
        let s = prop44_sum(2, 1, 2, 100_000, Exec::Sequential);
        assert!((s.re - 1.0 / 24.0).abs() < 1e-9 && s.im.abs() < 1e-15);
        assert!((prop44_expected(2, 1, 2) - 1.0 / 24.0).abs() < 1e-15);
        assert!((prop44_expected(2, 1, 1) + 1.0 / 12.0).abs() < 1e-15);
        let par = prop44_sum(3, 1, 4, 100_000, Exec::default());
        let seq = prop44_sum(3, 1, 4, 100_000, Exec::Sequential);
        assert_eq!(par, seq);
    }
}

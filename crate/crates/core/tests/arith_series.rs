mod common;

use num_bigint::BigInt;
use num_complex::Complex64;
use orbiform::arith::{int, rat, CycQ, Rational};
use orbiform::series::{eval_puiseux, product_coefficients, Puiseux, ThetaScale};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_cycq(rng: &mut ChaCha8Rng, n: u32) -> CycQ {
    let mut acc = CycQ::zero(1);
    for _ in 0..rng.gen_range(1..5) {
        let c = rat(rng.gen_range(-9..=9), rng.gen_range(1..=7));
        acc = &acc + &CycQ::root(rng.gen_range(0..n as i64), n).scale(&c);
    }
    acc
}

#[test]
fn embedding_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=24u32);
        let a = random_cycq(&mut rng, n);
        let nb = rng.gen_range(1..=24u32);
        let b = random_cycq(&mut rng, nb);
        let lhs = (&a * &b).embed();
        let rhs = a.embed() * b.embed();
        assert!(
            (lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()),
            "{a} * {b}"
        );
    }
}

#[test]
fn roots_of_unity_have_order_dividing_m() {
    for m in 1..=24u32 {
        for j in 1..=m as i64 {
            assert!(
                CycQ::root(j, m).pow(m as i64).unwrap().is_one(),
                "ζ_{m}^{j}"
            );
        }
    }
}

#[test]
fn partitions_match_pentagonal_recursion() {
    let p = product_coefficients(&[(1, -1)], 201);
    assert_eq!(p, common::pentagonal_partitions(200));
}

fn arb_series() -> impl Strategy<Value = Puiseux> {
    (
        1u32..=4,
        -3i64..=3,
        proptest::collection::vec((-6i64..=6, 0i64..12), 1..10),
        2i64..6,
    )
        .prop_map(|(t, lead, vals, tr)| {
            let coeffs = vals
                .iter()
                .map(|&(v, r)| CycQ::root(r, 12).scale(&int(v)))
                .collect();
            Puiseux::new(t, rat(lead, t as i64), coeffs, Some(int(tr)))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_sums_are_exact(a in -10_000i64..10_000, b in 1i64..1000, c in -10_000i64..10_000, d in 1i64..1000) {
        let s = (rat(a, b) + rat(c, d)) * Rational::from_integer(BigInt::from(b * d));
        prop_assert_eq!(s, Rational::from_integer(BigInt::from(a * d + c * b)));
    }

    #[test]
    fn multiplication_distributes(a in arb_series(), b in arb_series(), c in arb_series()) {
        let lhs = a.add(&b).mul(&c);
        let rhs = a.mul(&c).add(&b.mul(&c));
        prop_assert!(lhs.agrees_with(&rhs));
        prop_assert_eq!(lhs.trunc(), rhs.trunc());
    }

    #[test]
    fn theta_is_a_derivation(a in arb_series(), b in arb_series()) {
        for scale in [ThetaScale::Full, ThetaScale::OneOverT] {
            if scale == ThetaScale::OneOverT && a.branching() != b.branching() {
                continue;
            }
            let lhs = a.mul(&b).theta(scale);
            let rhs = a.theta(scale).mul(&b).add(&a.mul(&b.theta(scale)));
            prop_assert!(lhs.agrees_with(&rhs));
        }
    }

    #[test]
    fn evaluation_is_multiplicative(a in arb_series(), b in arb_series(), re in -0.5f64..0.5, im in 0.6f64..2.0) {
        let tau = Complex64::new(re, im);
        let ea = eval_puiseux(&a, tau).unwrap();
        let eb = eval_puiseux(&b, tau).unwrap();
        let prod = a.mul(&b);
        let ep = eval_puiseux(&prod, tau).unwrap();
        // known cross terms a_i b_j that land at or beyond the product's truncation
        let trunc = orbiform::arith::rational::to_f64(prod.trunc().unwrap());
        let r = (-std::f64::consts::TAU * im).exp();
        let mut overflow = 0.0;
        for (ea_exp, ca) in a.terms() {
            for (eb_exp, cb) in b.terms() {
                let e = orbiform::arith::rational::to_f64(&(&ea_exp + &eb_exp));
                if e >= trunc - 1e-12 {
                    overflow += ca.embed().norm() * cb.embed().norm() * r.powf(e);
                }
            }
        }
        let bound = overflow
            + ep.tail_bound
            + ea.tail_bound * (eb.value.norm() + eb.tail_bound)
            + eb.tail_bound * ea.value.norm()
            + 1e-10 * (1.0 + (ea.value * eb.value).norm());
        prop_assert!((ep.value - ea.value * eb.value).norm() <= bound);
    }
}

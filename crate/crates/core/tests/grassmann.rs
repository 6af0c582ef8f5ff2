use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use ssg_core::grassmann::{merge_sign, AlgebraContext};
use ssg_core::series::Sin;
use ssg_core::{GrassmannNumber, Parity};

type G = GrassmannNumber<f64>;

const K: usize = 6;

fn sample(parity: Parity, seed: u64) -> G {
    G::sample_random(K, parity, 4, seed).unwrap()
}

#[test]
fn generators_anticommute_and_square_to_zero() {
    for i in 0..K {
        let a = G::generator(K, i);
        assert!((&a * &a).is_zero());
        for j in 0..K {
            let b = G::generator(K, j);
            assert!((&(&a * &b) + &(&b * &a)).is_zero());
        }
    }
}

#[test]
fn monomial_ordering_sign() {
    let m = G::monomial(K, &[2, 0, 1], 1.0);
    assert_eq!(m, G::monomial(K, &[0, 1, 2], 1.0));
    let m = G::monomial(K, &[1, 0], 2.0);
    assert_eq!(m, G::monomial(K, &[0, 1], -2.0));
    assert!(G::monomial(K, &[3, 3], 1.0).is_zero());
    assert!(!merge_sign(0b01, 0b10));
    assert!(merge_sign(0b10, 0b01));
}

#[test]
fn closed_form_functions_of_nilpotents() {
    let a = 0.7;
    let n = &G::monomial(K, &[0, 1], 1.0) + &G::monomial(K, &[2, 3], 1.0);
    let x = &G::scalar(K, a) + &n;
    let s = x.sin();
    assert_abs_diff_eq!(s.body(), a.sin(), epsilon = 1e-15);
    assert_abs_diff_eq!(s.coefficient(0b0011), a.cos(), epsilon = 1e-15);
    assert_abs_diff_eq!(s.coefficient(0b1100), a.cos(), epsilon = 1e-15);
    assert_abs_diff_eq!(s.coefficient(0b1111), -a.sin(), epsilon = 1e-15);
    assert_eq!(s.terms().len(), 4);

    let e = n.exp_even().unwrap();
    assert_eq!(e, &(&G::one(K) + &n) + &G::monomial(K, &[0, 1, 2, 3], 1.0));

    let inv = (&G::one(K) + &G::monomial(K, &[0, 1], 1.0))
        .invert()
        .unwrap();
    assert_eq!(inv, &G::one(K) - &G::monomial(K, &[0, 1], 1.0));
    assert!(G::monomial(K, &[0, 1], 1.0).invert().is_err());
}

#[test]
fn parity_bookkeeping() {
    assert_eq!(G::generator(K, 0).parity(), Parity::Odd);
    assert_eq!(G::monomial(K, &[0, 1], 1.0).parity(), Parity::Even);
    assert_eq!((&G::one(K) + &G::generator(K, 2)).parity(), Parity::Mixed);
    assert!(G::generator(K, 0).apply_analytic(&Sin).is_err());
    assert!(G::generator(K, 0).exp_even().is_err());
}

#[test]
fn parse_and_display() {
    let g = G::parse(K, "3 - 0.5*x1^x2 + x3").unwrap();
    assert_eq!(g.body(), 3.0);
    assert_eq!(g.coefficient(0b011), -0.5);
    assert_eq!(g.coefficient(0b100), 1.0);
    assert_eq!(G::parse(K, &g.to_string()).unwrap(), g);
    assert_eq!(G::parse(K, "x2^x1").unwrap(), G::monomial(K, &[0, 1], -1.0));
    for bad in ["", "3 +", "x0", "x9", "2x1", "1 2"] {
        assert!(G::parse(K, bad).is_err(), "{bad}");
    }
}

#[test]
fn context_reserves_roles() {
    let mut ctx = AlgebraContext::new(6).unwrap();
    assert_eq!(ctx.theta1(), 0);
    assert_eq!(ctx.theta2(), 1);
    let mu = ctx.reserve("mu").unwrap();
    assert!(mu >= 2);
    assert!(ctx.reserve("mu").is_err() || ctx.index("mu") == Some(mu));
    assert!(!ctx.free_generators().contains(&mu));
    assert!(AlgebraContext::new(40).is_err());
}

#[test]
fn mismatched_generator_counts_are_errors() {
    let a = G::one(4);
    let b = G::one(5);
    assert!(a.try_mul(&b).is_err());
    assert!(a.try_add(&b).is_err());
}

#[test]
fn single_precision_arithmetic() {
    let x = &GrassmannNumber::<f32>::scalar(4, 0.25)
        + &GrassmannNumber::<f32>::monomial(4, &[0, 1], 1.0);
    let c = x.cos();
    assert!((c.coefficient(0b11) + 0.25f32.sin()).abs() < 1e-7);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (x, y, z) = (sample(Parity::Even, a), sample(Parity::Odd, b), sample(Parity::Odd, c));
        prop_assert!((&(&x * &y) * &z).max_abs_diff(&(&x * &(&y * &z))) <= 1e-12);
    }

    #[test]
    fn graded_commutativity(a in any::<u64>(), b in any::<u64>(), pa in any::<bool>(), pb in any::<bool>()) {
        let par = |p| if p { Parity::Odd } else { Parity::Even };
        let (x, y) = (sample(par(pa), a), sample(par(pb), b));
        let sign = if pa && pb { -1.0 } else { 1.0 };
        prop_assert!((&x * &y).max_abs_diff(&(&y * &x).scale(sign)) <= 1e-12);
    }

    #[test]
    fn odd_elements_square_to_zero(a in any::<u64>()) {
        let x = sample(Parity::Odd, a);
        prop_assert!((&x * &x).norm_max() <= 1e-12);
    }

    #[test]
    fn sin_cos_pythagoras(a in any::<u64>()) {
        let x = sample(Parity::Even, a);
        let one = &(&x.sin() * &x.sin()) + &(&x.cos() * &x.cos());
        prop_assert!(one.max_abs_diff(&G::one(K)) <= 1e-12);
    }

    #[test]
    fn inverse_and_log_exp(a in any::<u64>(), body in 0.5f64..3.0) {
        let x = &sample(Parity::Even, a).soul() + &G::scalar(K, body);
        prop_assert!((&x * &x.invert().unwrap()).max_abs_diff(&G::one(K)) <= 1e-12);
        prop_assert!(x.log_even().unwrap().exp_even().unwrap().max_abs_diff(&x) <= 1e-12);
        let r = x.sqrt().unwrap();
        prop_assert!((&r * &r).max_abs_diff(&x) <= 1e-12);
    }

    #[test]
    fn soul_is_nilpotent(a in any::<u64>()) {
        let s = sample(Parity::Even, a).soul();
        prop_assert!(s.pow((K / 2 + 1) as u32).is_zero());
    }
}

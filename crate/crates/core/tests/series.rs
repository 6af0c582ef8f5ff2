use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use ssg_core::series::{Analytic, Asin, Atan, Polynomial, Powf, Sin, Tan};
use ssg_core::Series;

type S = Series<f64>;

#[test]
fn elementary_derivatives() {
    let x0 = 0.4;
    let x = S::variable(x0, 5);
    let e = x.exp();
    for k in 0..=5 {
        assert_abs_diff_eq!(e.derivative_at(k), x0.exp(), epsilon = 1e-12);
    }
    let t = x.tan().unwrap();
    let sec2 = 1.0 / x0.cos().powi(2);
    assert_abs_diff_eq!(t.derivative_at(1), sec2, epsilon = 1e-13);
    assert_abs_diff_eq!(t.derivative_at(2), 2.0 * sec2 * x0.tan(), epsilon = 1e-12);
    let a = S::variable(0.5, 3).asin().unwrap();
    assert_abs_diff_eq!(a.value(), std::f64::consts::FRAC_PI_6, epsilon = 1e-15);
    assert_abs_diff_eq!(a.derivative_at(1), 1.0 / 0.75f64.sqrt(), epsilon = 1e-14);
    assert_abs_diff_eq!(a.derivative_at(2), 0.5 / 0.75f64.powf(1.5), epsilon = 1e-13);
    let l = S::variable(2.0, 4).ln().unwrap();
    assert_abs_diff_eq!(l.derivative_at(3), 2.0 / 8.0, epsilon = 1e-14);
}

#[test]
fn maclaurin_coefficients() {
    let x = S::variable(0.0, 7);
    let at = x.atan();
    for (k, c) in [(1, 1.0), (3, -1.0 / 3.0), (5, 0.2), (7, -1.0 / 7.0)] {
        assert_abs_diff_eq!(at.coeffs()[k], c, epsilon = 1e-15);
    }
    let th = x.tanh();
    assert_abs_diff_eq!(th.coeffs()[3], -1.0 / 3.0, epsilon = 1e-15);
    assert_abs_diff_eq!(th.coeffs()[5], 2.0 / 15.0, epsilon = 1e-15);
}

#[test]
fn domain_errors() {
    assert!(S::variable(0.0, 3).ln().is_err());
    assert!(S::variable(-1.0, 3).sqrt().is_err());
    assert!(S::variable(1.0, 3).asin().is_err());
    assert!(S::variable(0.0, 3).recip().is_err());
    assert!(Powf(0.5).taylor(-2.0, 2).is_err());
}

#[test]
fn analytic_objects_agree_with_series_methods() {
    let x0 = 0.3;
    let s = S::variable(x0, 4);
    for (f, want) in [
        (&Sin as &dyn Analytic<f64>, s.sin()),
        (&Tan, s.tan().unwrap()),
        (&Atan, s.atan()),
        (&Asin, s.asin().unwrap()),
    ] {
        let got = f.taylor(x0, 4).unwrap();
        for (a, b) in got.iter().zip(want.coeffs()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-15);
        }
    }
    let p = Polynomial(vec![1.0, 0.0, 3.0]).taylor(2.0, 3).unwrap();
    assert_eq!(p, vec![13.0, 12.0, 3.0, 0.0]);
}

#[test]
fn single_precision_series() {
    let s = Series::<f32>::variable(0.5, 3).sin();
    assert!((s.derivative_at(1) - 0.5f32.cos()).abs() < 1e-6);
}

proptest! {
    #[test]
    fn pythagoras(x0 in -5.0f64..5.0) {
        let x = S::variable(x0, 6);
        let one = &(&x.sin() * &x.sin()) + &(&x.cos() * &x.cos());
        prop_assert!((one.coeffs()[0] - 1.0).abs() <= 1e-14);
        for c in &one.coeffs()[1..] {
            prop_assert!(c.abs() <= 1e-13);
        }
    }

    #[test]
    fn exp_ln_round_trip(x0 in 0.1f64..10.0) {
        let x = S::variable(x0, 5);
        let r = x.ln().unwrap().exp();
        for (a, b) in r.coeffs().iter().zip(x.coeffs()) {
            prop_assert!((a - b).abs() <= 1e-12 * x0.max(1.0));
        }
    }

    #[test]
    fn division_inverts_multiplication(x0 in -2.0f64..2.0, c in 0.5f64..3.0) {
        let x = S::variable(x0, 5);
        let b = x.exp().scale(c);
        let q = (&x.sin() * &b).div(&b).unwrap();
        for (a, w) in q.coeffs().iter().zip(x.sin().coeffs()) {
            prop_assert!((a - w).abs() <= 1e-12);
        }
    }

    #[test]
    fn shift_matches_reexpansion(x0 in -1.0f64..1.0, h in -0.5f64..0.5) {
        let p = S::from_coeffs(vec![0.3, -1.0, 2.0, 0.5]);
        let q = p.shift(h);
        prop_assert!((q.value() - p.eval(h)).abs() <= 1e-13);
        prop_assert!((q.derivative_at(1) - p.differentiate().eval(h)).abs() <= 1e-13);
        let _ = x0;
    }
}

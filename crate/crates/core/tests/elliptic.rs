#![allow(clippy::excessive_precision)]

use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use ssg_core::elliptic::{agm, complete_k, jacobi, jacobi_taylor};

const ORACLE: [(f64, f64, [f64; 3]); 5] = [
    (
        0.5,
        0.5,
        [
            0.470_750_473_655_657_28,
            0.882_266_394_890_440_29,
            0.942_972_425_777_385_69,
        ],
    ),
    (
        1.3,
        0.9,
        [
            0.874_626_209_042_820_37,
            0.484_797_890_316_557_25,
            0.558_145_227_525_817_15,
        ],
    ),
    (
        2.0,
        0.1,
        [
            0.932_844_632_744_040_28,
            -0.360_278_907_460_090_73,
            0.955_499_915_811_646_56,
        ],
    ),
    (
        0.7,
        -1.0,
        [
            0.683_522_584_191_791_99,
            0.729_929_364_322_175_1,
            1.211_281_603_550_646_4,
        ],
    ),
    (
        3.0,
        0.999,
        [
            0.995_293_128_337_884_36,
            0.096_910_209_386_770_212,
            0.101_893_066_960_928_5,
        ],
    ),
];

#[test]
fn matches_reference_values() {
    for (u, m, want) in ORACLE {
        let e = jacobi(u, m).unwrap();
        for (got, w) in [e.sn, e.cn, e.dn].into_iter().zip(want) {
            assert_abs_diff_eq!(got, w, epsilon = 1e-13);
        }
    }
}

#[test]
fn complete_integral_reference_values() {
    for (m, k) in [
        (0.5, 1.854_074_677_301_371_9),
        (0.9, 2.578_092_113_348_173_3),
        (-1.0, 1.311_028_777_146_059_9),
        (0.1, 1.612_441_348_720_219_4),
    ] {
        assert_abs_diff_eq!(complete_k(m).unwrap(), k, epsilon = 1e-14);
    }
    assert_abs_diff_eq!(
        complete_k(0.0).unwrap(),
        std::f64::consts::FRAC_PI_2,
        epsilon = 1e-15
    );
    assert!(complete_k(1.0).is_err());
}

#[test]
fn degenerate_moduli() {
    for u in [-2.0, -0.3, 0.0, 0.8, 2.5] {
        let e = jacobi(u, 0.0).unwrap();
        assert_abs_diff_eq!(e.sn, f64::sin(u), epsilon = 1e-15);
        assert_abs_diff_eq!(e.cn, f64::cos(u), epsilon = 1e-15);
        let e = jacobi(u, 1.0).unwrap();
        assert_abs_diff_eq!(e.sn, f64::tanh(u), epsilon = 1e-15);
        assert_abs_diff_eq!(e.dn, 1.0 / f64::cosh(u), epsilon = 1e-15);
    }
}

#[test]
fn rejects_modulus_above_one() {
    assert!(jacobi(0.3, 1.2).is_err());
    assert!(jacobi(0.3, f64::NAN).is_err());
}

#[test]
fn agm_of_one_and_root_two() {
    assert_abs_diff_eq!(
        agm(1.0, f64::sqrt(2.0)),
        1.198_140_234_735_592_2,
        epsilon = 1e-15
    );
}

#[test]
fn single_precision_layer() {
    let e = jacobi(0.5f32, 0.5f32).unwrap();
    assert!((e.sn - 0.470_750_47).abs() < 1e-6);
    assert!(e.pythagorean_defect() < 1e-6);
}

#[test]
fn quarter_period_values() {
    for m in [0.2, 0.5, 0.8] {
        let k = complete_k(m).unwrap();
        let e = jacobi(k, m).unwrap();
        assert_abs_diff_eq!(e.sn, 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(e.cn, 0.0, epsilon = 1e-7);
        assert_abs_diff_eq!(e.dn, f64::sqrt(1.0 - m), epsilon = 1e-12);
        let e = jacobi(2.0 * k, m).unwrap();
        assert_abs_diff_eq!(e.sn, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.cn, -1.0, epsilon = 1e-12);
    }
}

proptest! {
    #[test]
    fn pythagorean_identities(u in -20.0f64..20.0, m in -3.0f64..1.0) {
        prop_assert!(jacobi(u, m).unwrap().pythagorean_defect() <= 1e-12);
    }

    #[test]
    fn parity_in_u(u in -6.0f64..6.0, m in -1.0f64..1.0) {
        let a = jacobi(u, m).unwrap();
        let b = jacobi(-u, m).unwrap();
        prop_assert!((a.sn + b.sn).abs() <= 1e-13);
        prop_assert!((a.cn - b.cn).abs() <= 1e-13);
        prop_assert!((a.dn - b.dn).abs() <= 1e-13);
    }

    #[test]
    fn derivative_matches_central_difference(u in -4.0f64..4.0, m in -1.0f64..0.99) {
        let h = 1e-5;
        let c = jacobi_taylor(u, m, 1).unwrap();
        let fd = (jacobi(u + h, m).unwrap().sn - jacobi(u - h, m).unwrap().sn) / (2.0 * h);
        prop_assert!((c[0][1] - fd).abs() <= 1e-8);
    }

    #[test]
    fn addition_theorem_for_sn(u in -2.0f64..2.0, v in -2.0f64..2.0, m in 0.0f64..0.95) {
        let (a, b) = (jacobi(u, m).unwrap(), jacobi(v, m).unwrap());
        let den = 1.0 - m * a.sn * a.sn * b.sn * b.sn;
        let sum = (a.sn * b.cn * b.dn + b.sn * a.cn * a.dn) / den;
        prop_assert!((jacobi(u + v, m).unwrap().sn - sum).abs() <= 1e-12);
    }
}

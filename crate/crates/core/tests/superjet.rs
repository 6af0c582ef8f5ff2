use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use ssg_core::superjet::MAX_ORDER;
use ssg_core::{GrassmannNumber, JetSpec, Parity, SuperJet};

type G = GrassmannNumber<f64>;
type J = SuperJet<f64>;

const K: usize = 4;

fn vars(x: f64, t: f64) -> (J, J) {
    let spec = JetSpec::new(&["x", "t"], 3).unwrap();
    (
        J::variable(&spec, "x", G::scalar(K, x)).unwrap(),
        J::variable(&spec, "t", G::scalar(K, t)).unwrap(),
    )
}

#[test]
fn spec_shape_and_errors() {
    let spec = JetSpec::new(&["x", "t"], 3).unwrap();
    assert_eq!(spec.len(), 10);
    assert_eq!(spec.indices()[0], vec![0, 0]);
    assert!(JetSpec::new(&["x", "x"], 2).is_err());
    assert!(JetSpec::new(&["x"], MAX_ORDER + 1).is_err());
    assert!(spec.var_index("y").is_err());
}

#[test]
fn product_rule_with_odd_coefficients() {
    let (x, t) = vars(0.3, -0.2);
    let a = G::generator(K, 2);
    let b = G::generator(K, 3);
    let f = (&x * &t).left_mul(&a);
    let g = x.sin().left_mul(&b);
    let fg = &f * &g;
    let want = &a * &b;
    let xt = 0.3 * (-0.2);
    assert!(fg.value().max_abs_diff(&want.scale(xt * 0.3f64.sin())) < 1e-15);
    let dx = fg.d(&["x"]).unwrap();
    let expect = -0.2 * 0.3f64.sin() + xt * 0.3f64.cos();
    assert!(dx.max_abs_diff(&want.scale(expect)) < 1e-15);
    assert!(
        (&g * &f)
            .value()
            .max_abs_diff(&want.scale(-xt * 0.3f64.sin()))
            < 1e-15
    );
}

#[test]
fn chain_rule_through_elementary_functions() {
    let (x, t) = vars(0.5, 0.25);
    let u = &x.scale(2.0) + &t;
    let s = u.sin();
    let v = 1.25f64;
    assert_abs_diff_eq!(
        s.d(&["x", "t"]).unwrap().body(),
        -2.0 * v.sin(),
        epsilon = 1e-14
    );
    assert_abs_diff_eq!(
        s.d(&["x", "x", "x"]).unwrap().body(),
        -8.0 * v.cos(),
        epsilon = 1e-14
    );
    let e = u.exp();
    assert_abs_diff_eq!(
        e.d(&["t", "t", "x"]).unwrap().body(),
        2.0 * v.exp(),
        epsilon = 1e-13
    );
    let r = u.recip().unwrap();
    assert_abs_diff_eq!(r.d(&["x"]).unwrap().body(), -2.0 / (v * v), epsilon = 1e-14);
    assert!(x.scale(0.0).ln().is_err());
}

#[test]
fn partial_drops_order() {
    let (x, _) = vars(0.1, 0.7);
    let f = (&x * &x).sin();
    let p = f.partial("x").unwrap();
    assert_eq!(p.spec().order(), 2);
    for v in [["x"], ["t"]] {
        let want = f.d(&["x", v[0]]).unwrap();
        assert!(p.d(&v).unwrap().max_abs_diff(&want) < 1e-15);
    }
    assert!(f.truncate(0).partial("x").is_err());
}

#[test]
fn parity_of_jets() {
    let (x, _) = vars(0.2, 0.0);
    assert_eq!(x.parity(), Parity::Even);
    let o = x.left_mul(&G::generator(K, 1));
    assert_eq!(o.parity(), Parity::Odd);
    assert!(o.require_parity(Parity::Even).is_err());
}

proptest! {
    #[test]
    fn leibniz_second_order(x0 in -1.0f64..1.0, t0 in -1.0f64..1.0) {
        let (x, t) = vars(x0, t0);
        let f = (&x + &t.scale(0.5)).cos();
        let g = (&x * &t).exp();
        let h = &f * &g;
        let fx = f.d(&["x"]).unwrap().body();
        let gx = g.d(&["x"]).unwrap().body();
        let ft = f.d(&["t"]).unwrap().body();
        let gt = g.d(&["t"]).unwrap().body();
        let fxt = f.d(&["x", "t"]).unwrap().body();
        let gxt = g.d(&["x", "t"]).unwrap().body();
        let want = fxt * g.value().body() + fx * gt + ft * gx + f.value().body() * gxt;
        prop_assert!((h.d(&["x", "t"]).unwrap().body() - want).abs() <= 1e-12);
    }

    #[test]
    fn sqrt_squares_back(x0 in 0.2f64..3.0, t0 in 0.2f64..3.0) {
        let (x, t) = vars(x0, t0);
        let u = &x + &t;
        let r = u.sqrt().unwrap();
        prop_assert!((&r * &r).max_abs_diff(&u) <= 1e-12);
    }
}

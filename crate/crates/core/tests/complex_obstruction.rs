use num_complex::Complex64 as C;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ssg_core::reductions::complex::{
    alpha_from_y, d14_residual, d15_residual, d7_first_residual, transformation_check,
};
use ssg_core::reductions::obstruction::{qx_px_reduction, s5_obstruction, NonstandardField};
use ssg_core::Supernumber;

#[test]
fn transformations_agree_pointwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let r = transformation_check(&mut rng, 200);
    assert!(r.d13_to_d14 < 1e-10, "{r:?}");
    assert!(r.d14_to_d15 < 1e-10, "{r:?}");
    assert!(r.d16 < 1e-10, "{r:?}");
}

#[test]
fn constant_unimodular_y_solves_both_forms() {
    let sigma = C::new(0.7, 0.4);
    for y0 in [C::new(1.0, 0.0), C::new(-1.0, 0.0)] {
        let y = [y0, C::new(0.0, 0.0), C::new(0.0, 0.0)];
        assert!(d14_residual(sigma, y, C::new(0.0, 0.0)).norm() < 1e-15);
        assert!(d15_residual(2.0 * C::i() * sigma, y, 1.0).norm() < 1e-15);
        assert!(d7_first_residual(sigma, alpha_from_y(y), C::new(0.0, 0.0)).norm() < 1e-15);
    }
}

#[test]
fn wrong_sign_in_d15_is_detected() {
    let sigma = C::new(0.9, -0.6);
    let y = [C::new(1.2, 0.1), C::new(0.3, -0.2), C::new(0.1, 0.4)];
    let k = 2.0 * C::i();
    let yz = [y[0], y[1] / k, y[2] / (k * k)];
    let good = d14_residual(sigma, y, C::new(0.0, 0.0)) + 4.0 * d15_residual(k * sigma, yz, 1.0);
    let bad = d14_residual(sigma, y, C::new(0.0, 0.0)) + 4.0 * d15_residual(k * sigma, yz, -1.0);
    assert!(good.norm() < 1e-12 && bad.norm() > 1e-3);
}

#[test]
fn s5_invariants_leave_explicit_x() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let k = 7;
    let field = NonstandardField::random(k, &[3, 4, 5, 6], &mut rng).unwrap();
    let mu = Supernumber::generator(k, 2);
    let rec = s5_obstruction(&mu, &field, &[-0.4, 0.3, 1.1]).unwrap();
    assert!(rec.identity_defect < 1e-12, "{rec:?}");
    for (c, d) in rec.x_coefficient.iter().zip(&rec.x_dependence) {
        assert!(*c > 1e-3 && (c - d).abs() < 1e-12, "{rec:?}");
    }
}

#[test]
fn qx_px_allows_only_multiples_of_pi() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let rec = qx_px_reduction(6, [-7.0, 7.0], 281, &mut rng).unwrap();
    assert!(rec.reduction_defect < 1e-12);
    assert_eq!(rec.roots.len(), 5);
    assert!(rec.root_error < 1e-12);
    assert!(rec.soul_after_newton < 1e-14);
    assert!(rec.min_cos > 0.99);
}

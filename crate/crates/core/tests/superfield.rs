use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ssg_core::superfield::{
    component_equivalence, operator_identities, random_superfield, Superfield,
};
use ssg_core::{Parity, Supernumber};

#[test]
fn operator_identities_hold_on_random_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let f = random_superfield(6, 3, &mut rng).unwrap();
        for p in 0..5 {
            let (x, t) = (0.4 * p as f64 - 0.9, 0.7 - 0.3 * p as f64);
            for (_, d) in operator_identities(&f, x, t).unwrap() {
                worst = worst.max(d);
            }
        }
    }
    assert!(worst < 1e-12, "{worst:e}");
}

#[test]
fn q_x_squares_to_minus_dx() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = random_superfield(6, 2, &mut rng).unwrap();
    let j = f.at(0.3, 0.2, 3).unwrap();
    let px = j.partial("x").unwrap().truncate(1);
    let dd = ssg_core::superfield::apply_q(
        &ssg_core::superfield::apply_q(&j, ssg_core::superfield::Direction::X).unwrap(),
        ssg_core::superfield::Direction::X,
    )
    .unwrap();
    assert!((&dd + &px).max_abs() < 1e-12);
    assert!(px.max_abs() > 1e-3);
}

#[test]
fn constant_fields() {
    let k = 4;
    let zero = Superfield::constant(k, Supernumber::zero(k)).unwrap();
    assert_eq!(zero.ssg_residual_at(0.1, 0.2).unwrap().norm_max(), 0.0);
    let pi = Superfield::constant(k, Supernumber::scalar(k, std::f64::consts::PI)).unwrap();
    assert!(pi.ssg_residual_at(0.1, 0.2).unwrap().norm_max() < 1e-15);
    let one = Superfield::constant(k, Supernumber::scalar(k, 1.0)).unwrap();
    assert!((one.ssg_residual_at(0.1, 0.2).unwrap().body() + 1f64.sin()).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn component_form_matches_superfield_form(seed in 0u64..10_000, x in -1.0f64..1.0, t in -1.0f64..1.0) {
        let k = 6;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_superfield(k, 2, &mut rng).unwrap();
        let d = component_equivalence(&g, &Supernumber::scalar(k, x), &Supernumber::scalar(k, t)).unwrap();
        prop_assert!(d < 1e-12);
    }

    #[test]
    fn residual_of_even_field_is_even(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_superfield(6, 2, &mut rng).unwrap();
        let r = f.ssg_residual_at(0.25, -0.5).unwrap();
        prop_assert!(r.has_parity(Parity::Even));
    }
}

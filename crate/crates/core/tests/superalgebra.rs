use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ssg_core::superalgebra::*;
use ssg_core::{Parity, Supernumber as G};

const K: usize = 8;

fn odd(seed: u64) -> G {
    G::sample_random(K, Parity::Odd, 1, seed).unwrap()
}

#[test]
fn table_entries() {
    let t = structure_table();
    assert_eq!(t.entries[L][PX][PX], 2.0);
    assert_eq!(t.entries[L][PT][PT], -2.0);
    assert_eq!(t.entries[L][QX][QX], 1.0);
    assert_eq!(t.entries[L][QT][QT], -1.0);
    assert_eq!(t.entries[QX][QX][PX], -2.0);
    assert_eq!(t.entries[QT][QT][PT], -2.0);
    assert_eq!(t.entries[PX][PT], vec![0.0; 5]);
    assert_eq!(t.entries[QX][QT], vec![0.0; 5]);
    assert_eq!(t.antisymmetry_defect(), 0.0);
    assert!(t.jacobi_defect() < 1e-12);
    assert!(component_table().jacobi_defect() < 1e-12);
}

#[test]
fn bracket_examples() {
    let l = AlgebraElement::even(K, L, 1.0);
    let px = AlgebraElement::even(K, PX, 1.0);
    let pt = AlgebraElement::even(K, PT, 1.0);
    assert_eq!(bracket(&l, &px), AlgebraElement::even(K, PX, 2.0));
    assert!(bracket(&px, &pt).norm_max() == 0.0);
    let mu = odd(3);
    let mq = AlgebraElement::basis(K, QX, mu.clone()).unwrap();
    assert!(bracket(&mq, &mq).norm_max() < 1e-15);
    let eta = odd(4);
    let eq = AlgebraElement::basis(K, QX, eta.clone()).unwrap();
    let b = bracket(&eq, &mq);
    assert!(b.c[PX].max_abs_diff(&(&eta * &mu).scale(2.0)) < 1e-14);
}

#[test]
fn realized_brackets_match_tables() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    assert!(verify_structure(6, &mut rng).unwrap() < 1e-12);
    assert!(verify_component_structure(6, &mut rng).unwrap() < 1e-12);
}

#[test]
fn adjoint_examples() {
    let k = 0.3;
    let y = AlgebraElement::even(K, L, k);
    let px = AlgebraElement::even(K, PX, 1.0);
    let r = adjoint_exp(&y, &px, 16).value;
    assert!((r.c[PX].body() - (2.0 * k).exp()).abs() < 1e-12);
    let mu = odd(9);
    let mq = AlgebraElement::basis(K, QX, mu.clone()).unwrap();
    let r = adjoint_exp(&y, &mq, 16).value;
    assert!(r.c[QX].max_abs_diff(&mu.scale(k.exp())) < 1e-12);
    let z = AlgebraElement::zero(K);
    assert_eq!(adjoint_exp(&z, &mq, 16).value, mq);
}

#[test]
fn expm1_over_nilpotent() {
    let k = G::monomial(K, &[0, 1], 1.0);
    let q = expm1_over(&k).unwrap();
    assert!(q.max_abs_diff(&(&G::one(K) + &k.scale(0.5))) < 1e-15);
    assert!(
        adjoint_closed_form(&AlgebraElement::zero(K), &AlgebraElement::even(K, L, 1.0)).is_err()
    );
}

#[test]
fn nonsplitting_conjugates_to_l() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..5 {
        let mut v = AlgebraElement::random(K, &(0..K).collect::<Vec<_>>(), &mut rng).unwrap();
        v.c[L] = G::one(K);
        let r = conjugate_to_l(&v).unwrap();
        assert!(r.residual < 1e-12, "{}", r.residual);
        assert!(r.conjugator.in_ideal());
    }
}

#[test]
fn catalog_shape() {
    let c = subalgebra_catalog();
    assert_eq!(c.len(), 21);
    assert_eq!(find_subalgebra("S4").unwrap().generator, "P_x + eps*P_t");
    assert_eq!(find_subalgebra("L1").unwrap().generator, "D");
    let json = catalog_json();
    assert_eq!(json[7]["generator"], "P_x + eps*P_t + mu*Q_x");
}

fn elem(seed: u64, k_body: f64) -> (AlgebraElement, AlgebraElement) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens: Vec<usize> = (0..K).collect();
    let mut y = AlgebraElement::random(K, &gens, &mut rng).unwrap();
    y.c[L] = &y.c[L].soul() + k_body;
    let mut x = AlgebraElement::random(K, &gens, &mut rng).unwrap();
    x.c[L] = G::zero(K);
    (y, x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn closed_form_matches_series(seed in 0u64..10_000, kb in -1.0f64..1.0) {
        let (y, x) = elem(seed, kb);
        let a = adjoint_exp(&y, &x, 40).value;
        let b = adjoint_closed_form(&y, &x).unwrap();
        prop_assert!(a.max_abs_diff(&b) < 1e-10);
        prop_assert!(a.c[L].is_zero());
    }

    #[test]
    fn jacobi_on_even_elements(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<usize> = (0..K).collect();
        let a = AlgebraElement::random(K, &gens, &mut rng).unwrap();
        let b = AlgebraElement::random(K, &gens, &mut rng).unwrap();
        let c = AlgebraElement::random(K, &gens, &mut rng).unwrap();
        let j = &(&bracket(&a, &bracket(&b, &c)) + &bracket(&b, &bracket(&c, &a))) + &bracket(&c, &bracket(&a, &b));
        prop_assert!(j.norm_max() < 1e-12);
        let ab = bracket(&a, &b);
        let ba = bracket(&b, &a);
        prop_assert!((&ab + &ba).norm_max() < 1e-14);
    }
}

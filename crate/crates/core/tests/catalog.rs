use ssg_core::reductions::catalog::{
    catalog_names, catalog_solution, elliptic_sign_pair_defect, entry_profiles, nilpotent_constant,
    CatalogParams, Tier, Tolerances,
};
use ssg_core::reductions::CaseId;
use ssg_core::Parity;

#[test]
fn every_entry_meets_its_tier() {
    let p = CatalogParams::default();
    let tol = Tolerances::default();
    for name in catalog_names() {
        let e = catalog_solution(name, &p).unwrap();
        let (worst, n) = e.max_residual().unwrap();
        println!("{name:8} {:8} {worst:.3e} ({n} samples)", e.tier.name());
        assert!(worst <= tol.get(e.tier), "{name}: {worst:e}");
    }
}

#[test]
fn mixed_entries_are_flagged() {
    let p = CatalogParams::default();
    for name in ["gian1E", "gian1G"] {
        let e = catalog_solution(name, &p).unwrap();
        assert_eq!(e.parity, Parity::Mixed);
        assert!(!e.notes.is_empty());
    }
}

#[test]
fn gian1a_at_origin_is_half_pi_plus_soul() {
    let e = catalog_solution("gian1A", &CatalogParams::default()).unwrap();
    let v = e.field.at(0.0, 0.0, 0).unwrap().value().clone();
    assert!((v.body() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    assert!(e.residual_at(0.3, -0.7).unwrap().norm_max() < 1e-15);
}

#[test]
fn d3_body_vanishes_at_zero_sigma() {
    let e = catalog_solution("d3", &CatalogParams::default()).unwrap();
    assert!(matches!(
        e.field.at(1.5, 1.5, 0),
        Err(ssg_core::Error::Domain(_))
    ));
    let v = e.field.at(1.501, 1.5, 0).unwrap().value().body();
    assert!((v - 1e-3).abs() < 1e-9, "{v}");
}

#[test]
fn odd_entries_with_nonzero_k() {
    let p = CatalogParams {
        k_int: 3,
        ..CatalogParams::default()
    };
    for name in ["gian1A", "gian1C", "gian1E", "gian1G"] {
        let (worst, _) = catalog_solution(name, &p).unwrap().max_residual().unwrap();
        assert!(worst < 1e-12, "{name}: {worst:e}");
    }
}

#[test]
fn flipped_sign_breaks_gian1a() {
    let k = 6;
    let th12 = &ssg_core::Supernumber::generator(k, 0) * &ssg_core::Supernumber::generator(k, 1);
    let wrong = &ssg_core::Supernumber::scalar(k, std::f64::consts::FRAC_PI_2) + &th12;
    let f = ssg_core::Superfield::constant(k, wrong).unwrap();
    assert!(f.ssg_residual_at(0.2, 0.4).unwrap().norm_max() > 0.5);
}

#[test]
fn out_of_domain_parameters() {
    let p = CatalogParams {
        modulus: 1.5,
        ..CatalogParams::default()
    };
    assert!(catalog_solution("ginv14", &p).is_err());
    assert!(catalog_solution("nope", &CatalogParams::default()).is_err());
    let p = CatalogParams {
        generators: 3,
        ..CatalogParams::default()
    };
    assert!(catalog_solution("d5", &p).is_err());
}

#[test]
fn sign_pair_and_nilpotent_constants() {
    let s: Vec<f64> = (0..41).map(|i| -2.0 + 0.1 * i as f64).collect();
    assert!(elliptic_sign_pair_defect(0.5, &s).unwrap() < 1e-10);
    let p = CatalogParams::default();
    let pos: Vec<f64> = (0..26).map(|i| 0.5 + 0.1 * i as f64).collect();
    let (drift, soul) =
        nilpotent_constant(CaseId::S1, &entry_profiles("d18", &p).unwrap(), &pos).unwrap();
    assert!(drift < 1e-10 && soul, "{drift}");
    let (drift, soul) =
        nilpotent_constant(CaseId::S4, &entry_profiles("d5", &p).unwrap(), &s).unwrap();
    assert!(drift < 1e-10 && soul, "{drift}");
}

#[test]
fn tolerance_overrides() {
    let mut t = Tolerances::default();
    t.apply("elliptic=1e-7").unwrap();
    assert_eq!(t.get(Tier::Elliptic), 1e-7);
    assert!(t.apply("bogus=1").is_err());
    assert!(t.apply("ode=-1").is_err());
    assert!(t.apply("ode").is_err());
}

use std::sync::Arc;

use ssg_core::reductions::ode::{
    first_integral_check, integrate_profile_ode, OdeInitial, OdeOptions, ProfileOde,
};
use ssg_core::Analytic;

fn opts(step: f64) -> OdeOptions {
    OdeOptions {
        step,
        ..OdeOptions::default()
    }
}

#[test]
fn degenerate_s12_equation_is_harmonic() {
    let sys = ProfileOde::Ginv12 { eps: -1.0, k: 0.0 };
    let init = OdeInitial {
        sigma0: 0.0,
        y: vec![1.0],
        dy: vec![0.0],
    };
    let t = integrate_profile_ode(sys, &init, 0.0, 2.0, &opts(0.01)).unwrap();
    let worst = t
        .sigma
        .iter()
        .zip(&t.y)
        .map(|(s, y)| (y[0] - s.cos()).abs())
        .fold(0.0, f64::max);
    assert!(worst < 1e-8);
    let t = Arc::new(t);
    let g = t.unknown(0);
    let c = g.taylor(1.234, 4).unwrap();
    let exact = [
        1.234f64.cos(),
        -1.234f64.sin(),
        -1.234f64.cos() / 2.0,
        1.234f64.sin() / 6.0,
    ];
    for i in 0..4 {
        assert!(
            (c[i] - exact[i]).abs() < 1e-8,
            "{i}: {} vs {}",
            c[i],
            exact[i]
        );
    }
}

#[test]
fn zero_data_stays_zero() {
    let sys = ProfileOde::Rebp { eps: -1.0, k0: 0.0 };
    let init = OdeInitial {
        sigma0: 0.0,
        y: vec![0.0],
        dy: vec![0.0],
    };
    let t = integrate_profile_ode(sys, &init, -1.0, 1.0, &opts(0.1)).unwrap();
    assert!(t.y.iter().all(|v| v[0] == 0.0));
    assert_eq!(first_integral_check(&t, 0.0).unwrap(), 0.0);
}

#[test]
fn separatrix_matches_closed_form() {
    let sys = ProfileOde::Rebp { eps: -1.0, k0: 0.0 };
    let init = sys.default_initial();
    let run = |h: f64| {
        let t = integrate_profile_ode(sys, &init, -2.0, 2.0, &opts(h)).unwrap();
        let worst = t
            .sigma
            .iter()
            .zip(&t.y)
            .map(|(s, y)| (y[0] - s.tanh().asin()).abs())
            .fold(0.0, f64::max);
        (worst, first_integral_check(&t, 0.0).unwrap())
    };
    let (worst, drift) = run(0.01);
    let (_, half) = run(0.005);
    assert!(worst < 1e-8, "{worst:e}");
    assert!(drift <= 1e-8, "{drift:e}");
    let ratio = drift / half;
    assert!((ratio - 16.0).abs() <= 3.2, "{ratio}");
}

#[test]
fn near_singular_start_is_reported() {
    let sys = ProfileOde::D16Nu;
    let init = OdeInitial {
        sigma0: 1.0,
        y: vec![std::f64::consts::FRAC_PI_2, 0.0],
        dy: vec![0.0, 1.0],
    };
    let r = integrate_profile_ode(sys, &init, 0.5, 2.0, &opts(0.01));
    assert!(
        matches!(r, Err(ssg_core::Error::NearSingular { .. })),
        "{r:?}"
    );
}

#[test]
fn positive_eps_elliptic_profile_is_out_of_domain() {
    let sys = ProfileOde::Ginv12 { eps: 1.0, k: 0.5 };
    let r = integrate_profile_ode(sys, &sys.default_initial(), -1.0, 1.0, &opts(0.01));
    assert!(matches!(r, Err(ssg_core::Error::Domain(_))));
}

use ssg_core::reductions::ode::ProfileOde;
use ssg_core::reductions::solve::{parse_range, solve, SolveConfig};
use ssg_core::reductions::CaseId;

fn cfg(case: CaseId, ode: ProfileOde, range: &str) -> SolveConfig {
    let (lo, hi, step) = parse_range(range).unwrap();
    SolveConfig {
        case,
        ode,
        initial: None,
        lo,
        hi,
        step,
        generators: 6,
    }
}

#[test]
fn s12_residual_column_is_small() {
    let (rows, sum) = solve(&cfg(
        CaseId::S12,
        ProfileOde::Ginv12 { eps: -1.0, k: 0.5 },
        "0:2:0.01",
    ))
    .unwrap();
    assert_eq!(rows.len(), 201);
    assert!(sum.max_residual <= 1e-6, "{}", sum.max_residual);
    assert!(sum.flagged.is_empty());
    assert!(rows
        .iter()
        .all(|r| r.residual_body.abs() <= 1e-6 && r.residual_soul_norm <= 1e-6));
}

#[test]
fn s8_and_s1_runs() {
    let (_, s8) = solve(&cfg(
        CaseId::S8,
        ProfileOde::Ginv17 { eps: -1.0, k: 0.5 },
        "-2:2:0.01",
    ))
    .unwrap();
    assert!(s8.max_residual <= 1e-6, "{}", s8.max_residual);
    let (rows, s1) = solve(&cfg(CaseId::S1, ProfileOde::D16Nu, "0.5:2:0.01")).unwrap();
    assert!(!rows.is_empty());
    assert!(
        s1.max_residual <= 1e-6,
        "{} {:?}",
        s1.max_residual,
        s1.flagged
    );
}

#[test]
fn rebp_conserves_energy() {
    let (rows, sum) = solve(&cfg(
        CaseId::S4,
        ProfileOde::Rebp { eps: -1.0, k0: 0.0 },
        "-2:2:0.01",
    ))
    .unwrap();
    assert!(
        sum.first_integral_drift.unwrap() <= 1e-8,
        "{:?}",
        sum.first_integral_drift
    );
    assert!(sum.max_residual <= 1e-6);
    assert!(rows.iter().all(|r| r.f.is_finite()));
}

#[test]
fn real_k0_leaves_residuals_undefined() {
    let (rows, sum) = solve(&cfg(
        CaseId::S4,
        ProfileOde::Rebp { eps: -1.0, k0: 0.2 },
        "-1:1:0.05",
    ))
    .unwrap();
    assert!(rows.iter().all(|r| r.residual_body.is_nan()));
    assert!(!sum.notes.is_empty());
}

#[test]
fn usage_errors() {
    assert!(parse_range("1:1:0.1").is_err());
    assert!(parse_range("0:1").is_err());
    assert!(parse_range("0:1:-0.1").is_err());
    let c = cfg(
        CaseId::S8,
        ProfileOde::Ginv12 { eps: -1.0, k: 0.5 },
        "0:1:0.1",
    );
    assert!(matches!(solve(&c), Err(ssg_core::Error::Usage(_))));
}

#[test]
fn near_singular_is_flagged_not_fatal() {
    let mut c = cfg(CaseId::S1, ProfileOde::D16Nu, "0.5:30:0.01");
    c.initial = Some(ssg_core::reductions::ode::OdeInitial {
        sigma0: 1.0,
        y: vec![1.5, 0.0],
        dy: vec![3.0, 1.0],
    });
    let (_, sum) = solve(&c).unwrap();
    assert!(!sum.flagged.is_empty());
}

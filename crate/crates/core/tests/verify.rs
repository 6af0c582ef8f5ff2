use ssg_core::reductions::catalog::{Tier, Tolerances};
use ssg_core::verify::{check_names, run_suite, Status, Suite, VerifyConfig};

#[test]
fn suite_names_round_trip() {
    for s in Suite::EACH.into_iter().chain([Suite::All]) {
        assert_eq!(Suite::parse(s.name()).unwrap(), s);
    }
    assert!(Suite::parse("everything").is_err());
}

#[test]
fn all_is_the_union_of_suites() {
    let all = check_names(Suite::All);
    let parts: Vec<String> = Suite::EACH.into_iter().flat_map(check_names).collect();
    assert_eq!(all, parts);
    let mut dedup = all.clone();
    dedup.sort();
    dedup.dedup();
    assert_eq!(dedup.len(), all.len(), "check names must be unique");
}

#[test]
fn invalid_configs_are_rejected() {
    for cfg in [
        VerifyConfig {
            generators: 3,
            ..VerifyConfig::default()
        },
        VerifyConfig {
            generators: 40,
            ..VerifyConfig::default()
        },
        VerifyConfig {
            grid_n: 0,
            ..VerifyConfig::default()
        },
        VerifyConfig {
            jobs: Some(0),
            ..VerifyConfig::default()
        },
    ] {
        assert!(run_suite(&cfg).is_err());
    }
}

#[test]
fn tightened_tier_fails_and_keeps_records() {
    let mut tolerances = Tolerances::default();
    tolerances.set(Tier::Elliptic, 1e-30);
    let r = run_suite(&VerifyConfig {
        suite: Suite::Elliptic,
        tolerances,
        ..VerifyConfig::default()
    })
    .unwrap();
    assert!(!r.passed());
    assert_eq!(r.checks.len(), check_names(Suite::Elliptic).len());
    let drift = r
        .checks
        .iter()
        .find(|c| c.name.starts_with("rebp first-integral"))
        .unwrap();
    assert_eq!(drift.status, Status::Fail);
    assert_eq!(drift.tolerance, 1e-30);
}

#[test]
fn seed_changes_sampled_records_only() {
    let a = run_suite(&VerifyConfig {
        suite: Suite::Algebra,
        seed: 3,
        ..VerifyConfig::default()
    })
    .unwrap();
    let b = run_suite(&VerifyConfig {
        suite: Suite::Algebra,
        seed: 4,
        ..VerifyConfig::default()
    })
    .unwrap();
    assert!(a.passed() && b.passed());
    assert_ne!(a.to_json(), b.to_json());
    let c = run_suite(&VerifyConfig {
        suite: Suite::Algebra,
        seed: 3,
        jobs: Some(1),
        ..VerifyConfig::default()
    })
    .unwrap();
    assert_eq!(a.to_json(), c.to_json());
}

#[test]
fn json_omits_wall_time_and_markdown_has_it() {
    let r = run_suite(&VerifyConfig {
        suite: Suite::Elliptic,
        ..VerifyConfig::default()
    })
    .unwrap();
    let j = r.to_json();
    assert!(!j.contains("wall"));
    let v: serde_json::Value = serde_json::from_str(&j).unwrap();
    assert_eq!(v["suite"], "elliptic");
    assert!(r.to_markdown().contains("| wall ms |"));
}

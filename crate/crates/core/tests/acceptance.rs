//! End-to-end acceptance criteria, one pass/fail line each.

use std::sync::OnceLock;
use std::time::Instant;

use ssg_core::reductions::catalog::catalog_names;
use ssg_core::reductions::ode::ProfileOde;
use ssg_core::reductions::solve::{solve, SolveConfig};
use ssg_core::reductions::CaseId;
use ssg_core::verify::{run_suite, CheckRecord, Report, Status, Suite, VerifyConfig};

struct Run {
    report: Report,
    json: String,
    wall_s: f64,
}

fn full() -> &'static Run {
    static RUN: OnceLock<Run> = OnceLock::new();
    RUN.get_or_init(|| {
        let start = Instant::now();
        let report = run_suite(&VerifyConfig::default()).expect("valid config");
        let wall_s = start.elapsed().as_secs_f64();
        Run {
            json: report.to_json(),
            report,
            wall_s,
        }
    })
}

fn records(pred: impl Fn(&CheckRecord) -> bool) -> Vec<&'static CheckRecord> {
    full().report.checks.iter().filter(|c| pred(c)).collect()
}

fn named(names: &[&str]) -> Vec<&'static CheckRecord> {
    let v = records(|c| names.contains(&c.name.as_str()));
    assert_eq!(v.len(), names.len(), "missing checks among {names:?}");
    v
}

fn report_line(n: u32, what: &str, ok: bool, detail: String) -> bool {
    println!(
        "criterion {n:>2} {}: {what} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
    ok
}

fn summarize(recs: &[&CheckRecord]) -> (bool, String) {
    let ok = recs.iter().all(|c| c.status == Status::Pass);
    let worst = recs
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| format!("{} = {:.2e} vs {:.1e}", c.name, c.max_residual, c.tolerance))
        .collect::<Vec<_>>();
    let detail = if worst.is_empty() {
        format!(
            "{} checks, max {:.2e}",
            recs.len(),
            recs.iter().map(|c| c.max_residual).fold(0.0, f64::max)
        )
    } else {
        worst.join("; ")
    };
    (ok, detail)
}

fn criterion_01_operator_algebra() -> bool {
    let r = named(&["covariant and supersymmetry operator identities"]);
    let (ok, detail) = summarize(&r);
    let ok = ok && r[0].samples >= 50 * 10 && r[0].tolerance <= 1e-12 && r[0].wall_ms < 5000.0;
    report_line(
        1,
        "operator identities",
        ok,
        format!("{detail}, {:.0} ms", r[0].wall_ms),
    )
}

fn criterion_02_prolongation_equivalence() -> bool {
    let r = named(&[
        "superfield prolongation recursive vs expanded",
        "component prolongation recursive vs expanded",
    ]);
    let (ok, detail) = summarize(&r);
    let ms: f64 = r.iter().map(|c| c.wall_ms).sum();
    let ok = ok && r.iter().all(|c| c.samples >= 100 && c.tolerance <= 1e-12) && ms < 30_000.0;
    report_line(
        2,
        "recursive vs expanded prolongation",
        ok,
        format!("{detail}, {ms:.0} ms"),
    )
}

fn criterion_03_determining_equations() -> bool {
    let r = named(&[
        "superfield symmetry criterion for L, P_x, P_t, Q_x, Q_t",
        "component symmetry criterion",
        "negative control d_Phi (min body residual)",
    ]);
    let (ok, detail) = summarize(&r);
    let ok = ok
        && r[0].samples >= 5 * 200
        && r[0].tolerance <= 1e-12
        && r[1].tolerance <= 1e-12
        && r[2].tolerance >= 0.1;
    report_line(3, "symmetry criteria and negative control", ok, detail)
}

fn criterion_04_structure_constants() -> bool {
    let r = named(&[
        "realized superalgebra brackets",
        "realized component algebra brackets",
        "structure table antisymmetry and Jacobi",
        "graded Jacobi on random triples",
    ]);
    let (ok, detail) = summarize(&r);
    let ok = ok && r.iter().all(|c| c.tolerance <= 1e-12) && r[3].samples >= 100;
    report_line(4, "structure constants", ok, detail)
}

fn criterion_05_bch() -> bool {
    let r = named(&["adjoint action closed form vs series"]);
    let (ok, detail) = summarize(&r);
    report_line(
        5,
        "adjoint closed form vs 16-term series",
        ok && r[0].tolerance <= 1e-10,
        detail,
    )
}

fn criterion_06_reduction_consistency() -> bool {
    let cons = records(|c| c.name.starts_with("reduction consistency"));
    let slices = records(|c| c.name.starts_with("component reduction"));
    let (a, da) = summarize(&cons);
    let (b, db) = summarize(&slices);
    let ok = a
        && b
        && cons.len() >= 13
        && slices.len() == 5
        && cons.iter().all(|c| c.tolerance <= 1e-10)
        && slices.iter().all(|c| c.tolerance <= 1e-12);
    report_line(
        6,
        "reduction consistency and slices",
        ok,
        format!("{da}; {db}"),
    )
}

fn criterion_07_solution_catalog() -> bool {
    let start = Instant::now();
    let entries = records(|c| c.name.starts_with("catalog "));
    assert_eq!(entries.len(), catalog_names().len());
    let (mut ok, mut detail) = summarize(&entries);
    for c in &entries {
        let want = match c.anchor.as_str() {
            "d18" | "d5" => 1e-10,
            "d3" => 1e-8,
            "ginv9" | "ginv14" => 1e-6,
            _ => 1e-12,
        };
        ok &= c.tolerance <= want;
    }
    for (case, ode) in [
        (CaseId::S12, ProfileOde::Ginv12 { eps: -1.0, k: 0.5 }),
        (CaseId::S8, ProfileOde::Ginv17 { eps: -1.0, k: 0.5 }),
    ] {
        let cfg = SolveConfig {
            case,
            ode,
            initial: None,
            lo: -2.0,
            hi: 2.0,
            step: 0.01,
            generators: 6,
        };
        let (rows, s) = solve(&cfg).expect("integrates");
        ok &= rows.len() == 401 && s.flagged.is_empty() && s.max_residual <= 1e-6;
        detail.push_str(&format!(
            ", {} over [-2, 2]: {:.2e}",
            ode.name(),
            s.max_residual
        ));
    }
    let ms: f64 =
        entries.iter().map(|c| c.wall_ms).sum::<f64>() + start.elapsed().as_secs_f64() * 1e3;
    ok &= ms < 120_000.0;
    report_line(7, "solution catalog", ok, format!("{detail}, {ms:.0} ms"))
}

fn criterion_08_elliptic_layer() -> bool {
    let r = named(&[
        "Pythagorean identities",
        "rebp first-integral drift at h = 0.01",
        "rebp RK4 order: |drift(h)/drift(h/2) / 16 - 1|",
    ]);
    let (ok, detail) = summarize(&r);
    let ok = ok && r[0].tolerance <= 1e-12 && r[1].tolerance <= 1e-8 && r[2].tolerance <= 0.2;
    report_line(8, "elliptic identities and RK4 convergence", ok, detail)
}

fn criterion_09_obstruction() -> bool {
    let r = named(&[
        "S5 invariants: full residual equals the transformed equation",
        "S5 invariants: explicit x coefficient (min norm)",
        "{Q_x, P_x} reduction admits only k pi",
    ]);
    let (ok, detail) = summarize(&r);
    report_line(
        9,
        "nonstandard invariants",
        ok && r[1].max_residual > 0.0,
        detail,
    )
}

fn criterion_10_determinism() -> bool {
    let first = full();
    let again = run_suite(&VerifyConfig {
        jobs: Some(2),
        ..VerifyConfig::default()
    })
    .expect("valid config");
    let single = run_suite(&VerifyConfig {
        suite: Suite::Elliptic,
        jobs: Some(1),
        ..VerifyConfig::default()
    })
    .unwrap();
    let elliptic = run_suite(&VerifyConfig {
        suite: Suite::Elliptic,
        ..VerifyConfig::default()
    })
    .unwrap();
    let ok = again.to_json() == first.json && single.to_json() == elliptic.to_json();
    report_line(
        10,
        "byte-identical reports for a fixed seed",
        ok,
        format!(
            "{} bytes, first run {:.1} s",
            first.json.len(),
            first.wall_s
        ),
    )
}

fn main() {
    let criteria: [fn() -> bool; 10] = [
        criterion_01_operator_algebra,
        criterion_02_prolongation_equivalence,
        criterion_03_determining_equations,
        criterion_04_structure_constants,
        criterion_05_bch,
        criterion_06_reduction_consistency,
        criterion_07_solution_catalog,
        criterion_08_elliptic_layer,
        criterion_09_obstruction,
        criterion_10_determinism,
    ];
    let failed = criteria.iter().filter(|c| !c()).count();
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use ssg_core::reductions::catalog::{
    catalog_names, catalog_solution, CatalogParams, Tier, Tolerances,
};
use ssg_core::reductions::ode::{OdeInitial, ProfileOde};
use ssg_core::reductions::solve::{parse_range, solve, SolveConfig, SolveRow, SolveSummary};
use ssg_core::reductions::CaseId;
use ssg_core::superalgebra::{subalgebra_catalog, Family};
use ssg_core::verify::{run_suite, Report, Status, Suite, VerifyConfig};
use ssg_core::Error;

#[derive(Parser)]
#[command(
    name = "ssg",
    version,
    about = "Verification and reduced-ODE runs for the supersymmetric sine-Gordon engine"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites and write a report.
    Verify(VerifyArgs),
    /// Integrate a reduced ODE and write the trajectory.
    Solve(SolveArgs),
    /// Print the subalgebra and solution catalogs.
    List(ListArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Destination file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    /// Tier override such as `elliptic=1e-8`; repeatable.
    #[arg(long)]
    tolerance: Vec<String>,
    #[arg(long, default_value_t = 6)]
    generators: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Catalog grid samples per axis.
    #[arg(long, default_value_t = 6)]
    grid: usize,
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    case: String,
    #[arg(long)]
    ode: String,
    #[arg(long, allow_hyphen_values = true, default_value = "-2:2:0.01")]
    range: String,
    #[arg(long, allow_hyphen_values = true, default_value_t = -1.0)]
    eps: f64,
    /// Elliptic parameter `k` of the S8/S12 equations.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    k: f64,
    #[arg(long = "K0", allow_hyphen_values = true, default_value_t = 0.0)]
    k0: f64,
    #[arg(long, allow_hyphen_values = true)]
    sigma0: Option<f64>,
    /// Initial values, comma separated.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    y0: Option<Vec<f64>>,
    /// Initial derivatives, comma separated.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    dy0: Option<Vec<f64>>,
    #[arg(long, default_value_t = 6)]
    generators: usize,
    #[arg(long)]
    tolerance: Vec<String>,
    /// Also write the summary record as JSON here.
    #[arg(long)]
    summary: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ListArgs {
    #[command(flatten)]
    output: Output,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Usage(m) | Error::Parse(m) => Failure::Usage(format!("usage error: {m}")),
            Error::UnknownVariable(m) => Failure::Usage(format!("usage error: unknown name `{m}`")),
            e => Failure::Runtime(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Solve(a) => cmd_solve(a),
        Cmd::List(a) => cmd_list(a),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("{m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

/// Writes through a sibling temporary file so readers never see a partial report.
fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Runtime(e.to_string());
    match out {
        None => std::io::stdout().write_all(bytes).map_err(io),
        Some(p) => {
            let dir = p
                .parent()
                .filter(|d| !d.as_os_str().is_empty())
                .unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
            tmp.write_all(bytes).map_err(io)?;
            tmp.persist(p).map_err(|e| io(e.error))?;
            Ok(())
        }
    }
}

fn tolerances(overrides: &[String]) -> Result<Tolerances, Failure> {
    let mut t = Tolerances::default();
    for o in overrides {
        t.apply(o)?;
    }
    Ok(t)
}

fn csv_bytes<S: Serialize>(rows: &[S]) -> Result<Vec<u8>, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)
            .map_err(|e| Failure::Runtime(e.to_string()))?;
    }
    w.into_inner().map_err(|e| Failure::Runtime(e.to_string()))
}

fn json_bytes<S: Serialize>(v: &S) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s.into_bytes()
}

#[derive(Serialize)]
struct CheckRow<'a> {
    name: &'a str,
    anchor: &'a str,
    status: &'a str,
    max_residual: f64,
    tolerance: f64,
    samples: usize,
}

fn render_report(r: &Report, f: Format) -> Result<Vec<u8>, Failure> {
    Ok(match f {
        Format::Json => r.to_json().into_bytes(),
        Format::Md => r.to_markdown().into_bytes(),
        Format::Csv => {
            let rows: Vec<CheckRow> = r
                .checks
                .iter()
                .map(|c| CheckRow {
                    name: &c.name,
                    anchor: &c.anchor,
                    status: if c.status == Status::Pass {
                        "pass"
                    } else {
                        "fail"
                    },
                    max_residual: c.max_residual,
                    tolerance: c.tolerance,
                    samples: c.samples,
                })
                .collect();
            csv_bytes(&rows)?
        }
    })
}

fn cmd_verify(a: VerifyArgs) -> Result<bool, Failure> {
    let cfg = VerifyConfig {
        suite: Suite::parse(&a.suite)?,
        tolerances: tolerances(&a.tolerance)?,
        generators: a.generators,
        seed: a.seed,
        grid_n: a.grid,
        jobs: a.jobs,
    };
    cfg.validate()?;
    let report = run_suite(&cfg)?;
    for c in report.checks.iter().filter(|c| c.status == Status::Fail) {
        eprintln!(
            "FAIL {} [{}]: {:.3e} vs {:.1e}{}",
            c.name,
            c.anchor,
            c.max_residual,
            c.tolerance,
            c.error
                .as_deref()
                .map(|e| format!(" ({e})"))
                .unwrap_or_default()
        );
    }
    emit(
        &a.output.out,
        &render_report(&report, a.output.format.unwrap_or(Format::Json))?,
    )?;
    Ok(report.passed())
}

fn cmd_solve(a: SolveArgs) -> Result<bool, Failure> {
    let case = CaseId::parse(&a.case)?;
    let ode = ProfileOde::parse(&a.ode, a.eps, a.k, a.k0)?;
    let (lo, hi, step) = parse_range(&a.range)?;
    let tol = tolerances(&a.tolerance)?;
    let initial = match (a.sigma0, a.y0, a.dy0) {
        (None, None, None) => None,
        (s, y, dy) => {
            let d = ode.default_initial();
            let init = OdeInitial {
                sigma0: s.unwrap_or(d.sigma0),
                y: y.unwrap_or(d.y),
                dy: dy.unwrap_or(d.dy),
            };
            if init.y.len() != ode.unknowns() || init.dy.len() != ode.unknowns() {
                return Err(Failure::Usage(format!(
                    "{} takes {} initial values and derivatives",
                    ode.name(),
                    ode.unknowns()
                )));
            }
            Some(init)
        }
    };
    let cfg = SolveConfig {
        case,
        ode,
        initial,
        lo,
        hi,
        step,
        generators: a.generators,
    };
    let (rows, summary) = solve(&cfg)?;

    let f = a.output.format.unwrap_or(Format::Csv);
    let body = match f {
        Format::Csv => csv_bytes(&rows)?,
        Format::Json => json_bytes(&json!({ "summary": summary, "rows": rows })),
        Format::Md => solve_markdown(&summary, &rows).into_bytes(),
    };
    emit(&a.output.out, &body)?;
    let sbytes = json_bytes(&summary);
    match &a.summary {
        Some(p) => emit(&Some(p.clone()), &sbytes)?,
        None if f != Format::Json => std::io::stderr()
            .write_all(&sbytes)
            .map_err(|e| Failure::Runtime(e.to_string()))?,
        None => {}
    }
    let residual_ok = summary.max_residual <= tol.get(Tier::Ode);
    let drift_ok = summary
        .first_integral_drift
        .is_none_or(|d| d <= tol.get(Tier::Elliptic));
    Ok(residual_ok && drift_ok)
}

fn solve_markdown(s: &SolveSummary, rows: &[SolveRow]) -> String {
    let mut o = format!(
        "# {} / {}\n\n- rows: {}\n- max residual: {:.3e}\n",
        s.case,
        s.ode.name(),
        s.rows,
        s.max_residual
    );
    if let Some(d) = s.first_integral_drift {
        o.push_str(&format!("- first-integral drift: {d:.3e}\n"));
    }
    for fl in &s.flagged {
        o.push_str(&format!(
            "- flagged [{}, {}]: {}\n",
            fl.from, fl.to, fl.reason
        ));
    }
    for n in &s.notes {
        o.push_str(&format!("- {n}\n"));
    }
    o.push_str(&format!(
        "\n| sigma | alpha | {} | {} | residual_body | residual_soul_norm |\n|---|---|---|---|---|---|\n",
        s.columns[0], s.columns[1]
    ));
    for r in rows {
        o.push_str(&format!(
            "| {} | {} | {} | {} | {:.3e} | {:.3e} |\n",
            r.sigma, r.alpha, r.g, r.f, r.residual_body, r.residual_soul_norm
        ));
    }
    o
}

#[derive(Serialize)]
struct ListRow {
    kind: &'static str,
    id: String,
    description: String,
}

fn cmd_list(a: ListArgs) -> Result<bool, Failure> {
    let p = CatalogParams::default();
    let subs = subalgebra_catalog();
    let mut sols = Vec::new();
    for name in catalog_names() {
        let e = catalog_solution(name, &p)?;
        sols.push(json!({
            "name": e.name,
            "subalgebra": e.subalgebra,
            "tier": e.tier,
            "parity": e.parity,
            "params": e.params,
            "grid": e.grid,
            "notes": e.notes,
        }));
    }
    let mut rows: Vec<ListRow> = subs
        .iter()
        .map(|s| ListRow {
            kind: if s.family == Family::Superspace {
                "subalgebra"
            } else {
                "component-subalgebra"
            },
            id: s.id.to_string(),
            description: s.generator.to_string(),
        })
        .collect();
    for s in &sols {
        rows.push(ListRow {
            kind: "solution",
            id: s["name"].as_str().unwrap_or_default().to_string(),
            description: format!(
                "{} [{}]",
                s["subalgebra"].as_str().unwrap_or_default(),
                s["tier"].as_str().unwrap_or_default()
            ),
        });
    }

    let body = match a.output.format {
        Some(Format::Json) => json_bytes(&json!({ "subalgebras": subs, "solutions": sols })),
        Some(Format::Csv) => csv_bytes(&rows)?,
        fmt => {
            let md = fmt == Some(Format::Md);
            let mut o = String::new();
            let mut section = "";
            for r in &rows {
                let title = match r.kind {
                    "subalgebra" => "Superspace subalgebras",
                    "component-subalgebra" => "Component subalgebras",
                    _ => "Solutions",
                };
                if title != section {
                    if !section.is_empty() {
                        o.push('\n');
                    }
                    o.push_str(&if md {
                        format!("## {title}\n\n")
                    } else {
                        format!("{title}:\n")
                    });
                    section = title;
                }
                let line = if r.kind == "solution" {
                    format!("{} ({})", r.id, r.description)
                } else {
                    format!("{}: {}", r.id, r.description)
                };
                o.push_str(&if md {
                    format!("- {line}\n")
                } else {
                    format!("  {line}\n")
                });
            }
            o.into_bytes()
        }
    };
    emit(&a.output.out, &body)?;
    Ok(true)
}

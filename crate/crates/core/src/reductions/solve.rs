//! Trajectory runs of the profile ODEs with superfield residuals per row.

use std::sync::Arc;

use serde::Serialize;

use super::cases::{CaseId, ReductionCase};
use super::ode::{
    first_integral_check, integrate_partial, OdeInitial, OdeOptions, ProfileOde, ProfileTrajectory,
};
use super::profile::{AnsatzProfiles, Profile};
use crate::error::{Error, Result};
use crate::grassmann::{GrassmannNumber, Parity};
use crate::superfield::Superfield;

type G = GrassmannNumber<f64>;

#[derive(Debug, Clone)]
pub struct SolveConfig {
    pub case: CaseId,
    pub ode: ProfileOde,
    pub initial: Option<OdeInitial>,
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
    pub generators: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolveRow {
    pub sigma: f64,
    pub alpha: f64,
    pub g: f64,
    pub f: f64,
    pub residual_body: f64,
    pub residual_soul_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlaggedRange {
    pub from: f64,
    pub to: f64,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveSummary {
    pub case: String,
    pub ode: ProfileOde,
    pub initial: OdeInitial,
    pub range: [f64; 3],
    pub rows: usize,
    pub max_residual: f64,
    pub first_integral_drift: Option<f64>,
    pub flagged: Vec<FlaggedRange>,
    /// Meaning of the `g` and `f` columns.
    pub columns: [String; 2],
    pub notes: Vec<String>,
}

/// Parses `lo:hi:step`.
pub fn parse_range(s: &str) -> Result<(f64, f64, f64)> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, step] = parts[..] else {
        return Err(Error::Usage(format!("range must be lo:hi:step, got `{s}`")));
    };
    let num = |v: &str| {
        v.trim()
            .parse::<f64>()
            .map_err(|_| Error::Usage(format!("bad number `{v}` in range")))
    };
    let (lo, hi, step) = (num(lo)?, num(hi)?, num(step)?);
    if !(hi > lo) || !(step > 0.0) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Usage(format!("empty or invalid range `{s}`")));
    }
    Ok((lo, hi, step))
}

/// The case each ODE belongs to.
pub fn case_for(ode: &ProfileOde) -> CaseId {
    match ode {
        ProfileOde::Ginv12 { .. } => CaseId::S12,
        ProfileOde::Ginv17 { .. } => CaseId::S8,
        ProfileOde::Rebp { .. } => CaseId::S4,
        ProfileOde::D16Nu => CaseId::S1,
    }
}

fn sample_point(ode: &ProfileOde, sigma: f64) -> (f64, f64) {
    match *ode {
        ProfileOde::Ginv12 { .. } => (0.25, sigma - 0.25),
        ProfileOde::Ginv17 { .. } => (0.25, -sigma - 0.25),
        ProfileOde::Rebp { eps, .. } => (sigma + 0.25 * eps, 0.25),
        ProfileOde::D16Nu => (sigma, 1.0),
    }
}

fn minus_sin(alpha: Profile, s: f64) -> Profile {
    alpha.then(Parity::Even, move |j| Ok(j.sin().scale(s)))
}

/// Superfield reconstructed from a trajectory, with the odd constant on generator 2.
pub fn trajectory_field(traj: &Arc<ProfileTrajectory>, k: usize) -> Result<Superfield> {
    let d = G::generator(k, 2);
    let alpha = Profile::real(k, traj.alpha());
    let (case, profiles) = match traj.system {
        ProfileOde::Ginv12 { eps, .. } => (
            ReductionCase::new(CaseId::S12, eps, d.clone())?,
            AnsatzProfiles {
                a: Profile::term(d.clone(), traj.slope_over_cos(0, -1.0)),
                b: Profile::term(d.clone(), traj.unknown(0)),
                beta: minus_sin(alpha.clone(), 1.0),
                alpha,
            },
        ),
        ProfileOde::Ginv17 { eps, .. } => (
            ReductionCase::new(CaseId::S8, eps, d.clone())?,
            AnsatzProfiles {
                a: Profile::term(d.clone(), traj.slope_over_cos(0, eps)),
                b: Profile::term(d.clone(), traj.unknown(0)),
                beta: minus_sin(alpha.clone(), -1.0),
                alpha,
            },
        ),
        ProfileOde::Rebp { eps, k0 } => {
            if k0 != 0.0 {
                return Err(Error::Domain(
                    "a real nonzero K0 has no superfield counterpart".into(),
                ));
            }
            (
                ReductionCase::plain(CaseId::S4, eps, k)?,
                AnsatzProfiles {
                    a: Profile::zero(k),
                    b: Profile::zero(k),
                    beta: minus_sin(alpha.clone(), -1.0),
                    alpha,
                },
            )
        }
        ProfileOde::D16Nu => (
            ReductionCase::plain(CaseId::S1, 1.0, k)?,
            AnsatzProfiles {
                a: Profile::term(d.clone(), traj.slope_over_cos(1, 1.0)),
                b: Profile::term(d.clone(), traj.unknown(1)),
                beta: minus_sin(alpha.clone(), -1.0),
                alpha,
            },
        ),
    };
    case.build_ansatz(&profiles)
}

fn columns(ode: &ProfileOde) -> [String; 2] {
    match ode {
        ProfileOde::Rebp { .. } => ["alpha_sigma".into(), "energy".into()],
        ProfileOde::D16Nu => ["n".into(), "n_sigma/cos(alpha)".into()],
        ProfileOde::Ginv12 { .. } => ["g".into(), "-g_sigma/cos(alpha)".into()],
        ProfileOde::Ginv17 { .. } => ["g".into(), "eps*g_sigma/cos(alpha)".into()],
    }
}

pub fn solve(cfg: &SolveConfig) -> Result<(Vec<SolveRow>, SolveSummary)> {
    let want = case_for(&cfg.ode);
    if want != cfg.case {
        return Err(Error::Usage(format!(
            "{} belongs to {}, not {}",
            cfg.ode.name(),
            want.name(),
            cfg.case.name()
        )));
    }
    if cfg.generators < 4 {
        return Err(Error::Usage("solve needs K >= 4".into()));
    }
    if !(cfg.hi > cfg.lo) || !(cfg.step > 0.0) {
        return Err(Error::Usage("empty range".into()));
    }
    let init = cfg
        .initial
        .clone()
        .unwrap_or_else(|| cfg.ode.default_initial());
    let opts = OdeOptions {
        step: cfg.step,
        ..OdeOptions::default()
    };
    let lo = cfg.lo.min(init.sigma0);
    let hi = cfg.hi.max(init.sigma0);
    let part = integrate_partial(cfg.ode, &init, lo, hi, &opts)?;
    let traj = Arc::new(part.trajectory);

    let mut summary = SolveSummary {
        case: cfg.case.name().to_string(),
        ode: cfg.ode,
        initial: init.clone(),
        range: [cfg.lo, cfg.hi, cfg.step],
        rows: 0,
        max_residual: 0.0,
        first_integral_drift: None,
        flagged: Vec::new(),
        columns: columns(&cfg.ode),
        notes: Vec::new(),
    };
    if let Some(e) = &part.stopped {
        let (a, b) = traj.range().unwrap_or((init.sigma0, init.sigma0));
        let reason = e.to_string();
        if b < cfg.hi {
            summary.flagged.push(FlaggedRange {
                from: b,
                to: cfg.hi,
                reason: reason.clone(),
            });
        }
        if a > cfg.lo {
            summary.flagged.push(FlaggedRange {
                from: cfg.lo,
                to: a,
                reason,
            });
        }
    }
    if matches!(cfg.ode, ProfileOde::Rebp { .. }) && !traj.is_empty() {
        summary.first_integral_drift = Some(first_integral_check(&traj, init.sigma0)?);
    }

    let field = match trajectory_field(&traj, cfg.generators) {
        Ok(f) => Some(f),
        Err(Error::Domain(m)) => {
            summary.notes.push(format!("residual columns are NaN: {m}"));
            None
        }
        Err(e) => return Err(e),
    };
    if matches!(cfg.ode, ProfileOde::Rebp { .. }) {
        summary
            .notes
            .push("odd profiles are zero; alpha and beta = -sin(alpha) carry the solution".into());
    }

    let mut rows = Vec::new();
    for i in 0..traj.len() {
        let s = traj.sigma[i];
        if s < cfg.lo - 1e-12 || s > cfg.hi + 1e-12 {
            continue;
        }
        let (y, dy) = (&traj.y[i], &traj.dy[i]);
        let alpha = traj.alpha_series_at(s, 0)?.value();
        let (g, f) = match cfg.ode {
            ProfileOde::Rebp { .. } => (dy[0], cfg.ode.energy(y, dy).unwrap_or(f64::NAN)),
            ProfileOde::D16Nu => (y[1], dy[1] / alpha.cos()),
            ProfileOde::Ginv12 { .. } => (y[0], -dy[0] / alpha.cos()),
            ProfileOde::Ginv17 { eps, .. } => (y[0], eps * dy[0] / alpha.cos()),
        };
        let (rb, rs) = match &field {
            Some(fl) => {
                let (x, t) = sample_point(&cfg.ode, s);
                let r = fl.ssg_residual_at(x, t)?;
                summary.max_residual = summary.max_residual.max(r.norm_max());
                (r.body(), r.soul().norm_max())
            }
            None => (f64::NAN, f64::NAN),
        };
        rows.push(SolveRow {
            sigma: s,
            alpha,
            g,
            f,
            residual_body: rb,
            residual_soul_norm: rs,
        });
    }
    summary.rows = rows.len();
    Ok((rows, summary))
}

//! Catalog of explicit invariant solutions.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::cases::{CaseId, ReductionCase};
use super::ode::{integrate_profile_ode, OdeInitial, OdeOptions, ProfileOde, ProfileTrajectory};
use super::profile::{AnsatzProfiles, Profile};
use crate::elliptic::{cn, dn, sn};
use crate::error::{Error, Result};
use crate::grassmann::{GrassmannNumber, Parity};
use crate::series::{Analytic, Polynomial, Series, SeriesFn, Sin};
use crate::superfield::{ssg_residual_from_bundle, ssg_residual_mixed, Superfield};

type G = GrassmannNumber<f64>;
type S = Series<f64>;

/// Residual tolerance classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Exact,
    Trig,
    Elliptic,
    Ode,
}

impl Tier {
    pub const ALL: [Tier; 4] = [Tier::Exact, Tier::Trig, Tier::Elliptic, Tier::Ode];

    pub fn name(self) -> &'static str {
        match self {
            Tier::Exact => "exact",
            Tier::Trig => "trig",
            Tier::Elliptic => "elliptic",
            Tier::Ode => "ode",
        }
    }

    pub fn default_tolerance(self) -> f64 {
        match self {
            Tier::Exact => 1e-12,
            Tier::Trig => 1e-10,
            Tier::Elliptic => 1e-8,
            Tier::Ode => 1e-6,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown tolerance tier `{s}`")))
    }
}

/// Per-tier tolerances with overrides.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances([f64; 4]);

impl Default for Tolerances {
    fn default() -> Self {
        Self(Tier::ALL.map(Tier::default_tolerance))
    }
}

impl Tolerances {
    pub fn get(&self, t: Tier) -> f64 {
        self.0[t as usize]
    }

    pub fn set(&mut self, t: Tier, v: f64) {
        self.0[t as usize] = v;
    }

    /// Applies `tier=value`.
    pub fn apply(&mut self, spec: &str) -> Result<()> {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected tier=value, got `{spec}`")))?;
        let v: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad tolerance `{value}`")))?;
        if !(v > 0.0) {
            return Err(Error::Parse(format!("tolerance must be positive, got {v}")));
        }
        self.set(Tier::parse(name.trim())?, v);
        Ok(())
    }
}

/// Rectangular `n × n` sample grid in `(x, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub x: [f64; 2],
    pub t: [f64; 2],
    pub n: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<(f64, f64)> {
        let lin = |r: [f64; 2], i: usize| {
            if self.n <= 1 {
                r[0]
            } else {
                r[0] + (r[1] - r[0]) * i as f64 / (self.n - 1) as f64
            }
        };
        (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (lin(self.x, i), lin(self.t, j))))
            .collect()
    }
}

/// Parameters shared by the catalog constructors.
#[derive(Clone)]
pub struct CatalogParams {
    pub generators: usize,
    /// The integer in `kπ` and `(k + ½)π`.
    pub k_int: i32,
    /// Elliptic modulus for the `arcsin(k sn)` entries.
    pub modulus: f64,
    /// `(g(0), g'(0))` for the ODE-backed entries.
    pub g_initial: [f64; 2],
    pub step: f64,
    /// The arbitrary even function `φ` of `gian1A`/`gian1C`.
    pub phi: Arc<dyn Analytic<f64>>,
    /// The arbitrary even function `ψ` of `gian1E`/`gian1G`.
    pub psi: Arc<dyn Analytic<f64>>,
    /// Samples per grid axis.
    pub grid_n: usize,
}

impl Default for CatalogParams {
    fn default() -> Self {
        Self {
            generators: 6,
            k_int: 0,
            modulus: 0.5,
            g_initial: [0.0, 1.0],
            step: 0.01,
            phi: Arc::new(Polynomial(vec![0.0, 0.0, 1.0])),
            psi: Arc::new(Sin),
            grid_n: 6,
        }
    }
}

impl CatalogParams {
    /// First reserved odd constant (`μ`, `ν`, `D1`, `μ0` or `ν0`).
    pub fn odd1(&self) -> G {
        G::generator(self.generators, 2)
    }

    /// Second reserved odd constant (`D2` or `λ0`).
    pub fn odd2(&self) -> G {
        G::generator(self.generators, 3)
    }

    fn check(&self) -> Result<()> {
        if self.generators < 4 {
            return Err(Error::Usage("catalog entries need K >= 4".into()));
        }
        if self.modulus.abs() >= 1.0 {
            return Err(Error::Domain(format!(
                "|k| = {} must be below 1",
                self.modulus.abs()
            )));
        }
        if !(self.step > 0.0) || self.grid_n == 0 {
            return Err(Error::Usage("step and grid size must be positive".into()));
        }
        Ok(())
    }
}

pub struct SolutionEntry {
    pub name: &'static str,
    pub subalgebra: &'static str,
    pub tier: Tier,
    pub params: Vec<(String, String)>,
    pub grid: Grid,
    pub field: Superfield,
    /// `Mixed` when the formula carries an odd admixture.
    pub parity: Parity,
    pub notes: Vec<String>,
}

impl std::fmt::Debug for SolutionEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SolutionEntry")
            .field("name", &self.name)
            .field("subalgebra", &self.subalgebra)
            .field("tier", &self.tier)
            .field("grid", &self.grid)
            .finish()
    }
}

impl SolutionEntry {
    pub fn residual_at(&self, x: f64, t: f64) -> Result<G> {
        let k = self.field.generators();
        let b = self
            .field
            .evaluate_bundle(&G::scalar(k, x), &G::scalar(k, t))?;
        Ok(match self.parity {
            Parity::Even => {
                b.phi.require_parity(Parity::Even)?;
                ssg_residual_from_bundle(&b)
            }
            _ => ssg_residual_mixed(&b),
        })
    }

    /// `(max ‖R‖, samples)` over the grid.
    pub fn max_residual(&self) -> Result<(f64, usize)> {
        let pts = self.grid.points();
        let mut worst: f64 = 0.0;
        for &(x, t) in &pts {
            worst = worst.max(self.residual_at(x, t)?.norm_max());
        }
        Ok((worst, pts.len()))
    }
}

/// `(name, subalgebra)` of every entry.
pub const CATALOG: [(&str, &str); 14] = [
    ("d18", "S1"),
    ("gian1", "S2"),
    ("gian1A", "S2"),
    ("gian1B", "S3"),
    ("gian1C", "S3"),
    ("d3", "S4"),
    ("d5", "S4"),
    ("gian2", "S6/S11"),
    ("gian1D", "S7"),
    ("gian1E", "S7"),
    ("ginv14", "S8"),
    ("gian1F", "S10"),
    ("gian1G", "S10"),
    ("ginv9", "S12"),
];

pub fn catalog_names() -> Vec<&'static str> {
    CATALOG.iter().map(|e| e.0).collect()
}

fn series_fn<F>(f: F) -> SeriesFn<F>
where
    F: Fn(&S) -> Result<S> + Send + Sync,
{
    SeriesFn(f)
}

fn sign(k: i32) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

fn grid(x: [f64; 2], t: [f64; 2], n: usize) -> Grid {
    Grid { x, t, n }
}

fn entry(
    name: &'static str,
    subalgebra: &'static str,
    tier: Tier,
    grid: Grid,
    field: Superfield,
    params: Vec<(&str, String)>,
) -> SolutionEntry {
    SolutionEntry {
        name,
        subalgebra,
        tier,
        params: params
            .into_iter()
            .map(|(a, b)| (a.to_string(), b))
            .collect(),
        grid,
        field,
        parity: Parity::Even,
        notes: Vec::new(),
    }
}

/// The trajectory of `g` on a range covering `[-r, r]`.
pub fn g_trajectory(sys: ProfileOde, p: &CatalogParams, r: f64) -> Result<Arc<ProfileTrajectory>> {
    let init = OdeInitial {
        sigma0: 0.0,
        y: vec![p.g_initial[0]],
        dy: vec![p.g_initial[1]],
    };
    let opts = OdeOptions {
        step: p.step,
        ..OdeOptions::default()
    };
    Ok(Arc::new(integrate_profile_ode(sys, &init, -r, r, &opts)?))
}

/// `arcsin(k sn(σ, k²))` and `k sn(σ, k²)`.
fn elliptic_alpha(k: usize, m: f64) -> (Profile, Profile) {
    let alpha = Profile::real(
        k,
        series_fn(move |s| s.compose(&sn(m * m))?.scale(m).asin()),
    );
    let ksn = Profile::term(G::scalar(k, m), sn(m * m));
    (alpha, ksn)
}

/// S8 (`ε = -1`) or S12 (`ε = -1`) profiles with ODE-backed `g` and `f`.
pub fn elliptic_profiles(
    case: CaseId,
    p: &CatalogParams,
    param: &G,
) -> Result<(AnsatzProfiles, Arc<ProfileTrajectory>)> {
    let k = p.generators;
    let (eps, m) = (-1.0, p.modulus);
    let (alpha, ksn) = elliptic_alpha(k, m);
    let (sys, beta, fc) = match case {
        CaseId::S8 => (ProfileOde::Ginv17 { eps, k: m }, ksn.scale(-1.0), eps),
        CaseId::S12 => (ProfileOde::Ginv12 { eps, k: m }, ksn, -1.0),
        _ => {
            return Err(Error::Usage(format!(
                "no elliptic profile for {}",
                case.name()
            )))
        }
    };
    let traj = g_trajectory(sys, p, 2.5)?;
    let profiles = AnsatzProfiles {
        alpha,
        a: Profile::term(param.clone(), traj.slope_over_cos(0, fc)),
        b: Profile::term(param.clone(), traj.unknown(0)),
        beta,
    };
    Ok((profiles, traj))
}

/// Builds a catalog entry by name.
pub fn catalog_solution(name: &str, p: &CatalogParams) -> Result<SolutionEntry> {
    p.check()?;
    let k = p.generators;
    let n = p.grid_n;
    let (o1, o2) = (p.odd1(), p.odd2());
    let kpi = p.k_int as f64 * std::f64::consts::PI;
    let half = kpi + std::f64::consts::FRAC_PI_2;
    let box1 = grid([-1.0, 1.0], [-1.0, 1.0], n);
    let kparam = || vec![("k", p.k_int.to_string())];
    let constant = |name: &'static str, sub: &'static str| -> Result<SolutionEntry> {
        Ok(entry(
            name,
            sub,
            Tier::Exact,
            box1,
            Superfield::constant(k, G::scalar(k, kpi))?,
            kparam(),
        ))
    };
    let e = match name {
        "gian1" => constant("gian1", "S2")?,
        "gian1B" => constant("gian1B", "S3")?,
        "gian2" => constant("gian2", "S6/S11")?,
        "gian1D" => constant("gian1D", "S7")?,
        "gian1F" => constant("gian1F", "S10")?,
        "gian1A" | "gian1C" => {
            let (phi, mu0) = (p.phi.clone(), o1.clone());
            let s = -sign(p.k_int);
            let in_t = name == "gian1A";
            let field = Superfield::from_fn(k, move |x, t, th1, th2| {
                let v = if in_t { t } else { x };
                let f = v.apply_analytic(phi.as_ref())?;
                let (c1, c2) = if in_t {
                    (x.lift(th1 * &mu0), f.left_mul(&(th2 * &mu0)))
                } else {
                    (f.left_mul(&(th1 * &mu0)), x.lift(th2 * &mu0))
                };
                Ok(&(&x.lift(&G::scalar(k, half) + &(th1 * th2).scale(s)) + &c1) + &c2)
            })?;
            let sub = if in_t { "S2" } else { "S3" };
            let mut params = kparam();
            params.push((if in_t { "mu0" } else { "nu0" }, "xi_2".into()));
            params.push(("phi", if in_t { "t^2".into() } else { "x^2".into() }));
            entry(
                if in_t { "gian1A" } else { "gian1C" },
                sub,
                Tier::Exact,
                box1,
                field,
                params,
            )
        }
        "gian1E" | "gian1G" => {
            let (psi, par, l0) = (p.psi.clone(), o1.clone(), o2.clone());
            let is_e = name == "gian1E";
            let s = if is_e { -sign(p.k_int) } else { sign(p.k_int) };
            let field = Superfield::from_fn(k, move |x, t, th1, th2| {
                let (a, b, ta, tb) = if is_e {
                    (x, t, th1, th2)
                } else {
                    (t, x, th2, th1)
                };
                let sigma = a + &b.left_mul(&(&par * ta));
                let tau = &x.lift(ta.clone()) - &b.left_mul(&par);
                let f = sigma
                    .apply_analytic(psi.as_ref())?
                    .left_mul(&(ta * &(&par * &l0)));
                let rest = &x.lift(&G::scalar(k, half) + &(tb * &l0))
                    + &(&tau * &x.lift(tb.clone())).scale(s);
                Ok(&f + &rest)
            })?;
            let (nm, sub) = if is_e {
                ("gian1E", "S7")
            } else {
                ("gian1G", "S10")
            };
            let mut params = kparam();
            params.push((if is_e { "mu" } else { "nu" }, "xi_2".into()));
            params.push(("lambda0", "xi_3".into()));
            params.push(("psi", "sin".into()));
            let mut en = entry(nm, sub, Tier::Exact, box1, field, params);
            en.parity = Parity::Mixed;
            en.notes.push(format!(
                "the {} term is a product of three odd factors, so the printed field is not even; \
                 the residual is evaluated with sin(Φ_e + Φ_o) = sin Φ_e + cos Φ_e Φ_o",
                if is_e {
                    "θ1 μ λ0 ψ"
                } else {
                    "θ2 ν λ0 ψ"
                }
            ));
            en.notes.push(format!(
                "θθ coefficient sign {} matches β {} sin α = 0 for {}",
                if s > 0.0 { "+(-1)^k" } else { "(-1)^(k+1)" },
                if is_e { "+" } else { "-" },
                sub
            ));
            en
        }
        "d18" => {
            let case = ReductionCase::plain(CaseId::S1, 1.0, k)?;
            let c = |s: &S| -> Result<S> { Ok(s.sqrt()?.scale(2.0).cos()) };
            let sn_ = |s: &S| -> Result<S> { Ok(s.sqrt()?.scale(2.0).sin()) };
            let rs = |s: &S| s.powf(-0.5);
            let mu = Profile::term(o1.clone(), series_fn(move |s| Ok(&rs(s)? * &c(s)?))).add(
                &Profile::term(-&o2, series_fn(move |s| Ok(&rs(s)? * &sn_(s)?))),
            );
            let nu = Profile::term(o1.clone(), series_fn(move |s| sn_(s)))
                .add(&Profile::term(o2.clone(), series_fn(move |s| c(s))));
            let pr = AnsatzProfiles {
                alpha: Profile::zero(k),
                a: mu,
                b: nu,
                beta: Profile::zero(k),
            };
            let params = vec![("D1", "xi_2".to_string()), ("D2", "xi_3".to_string())];
            entry(
                "d18",
                "S1",
                Tier::Trig,
                grid([0.5, 3.0], [0.5, 3.0], n),
                case.build_ansatz(&pr)?,
                params,
            )
        }
        "d5" => {
            let case = ReductionCase::plain(CaseId::S4, -1.0, k)?;
            let pr = AnsatzProfiles {
                alpha: Profile::real(k, series_fn(|s| s.tanh().asin())),
                a: Profile::term(o1.clone(), series_fn(|s| s.cosh().recip())),
                b: Profile::term(o1.clone(), series_fn(|s| Ok(s.tanh()))),
                beta: Profile::term(G::scalar(k, -1.0), series_fn(|s| Ok(s.tanh()))),
            };
            let params = vec![("eps", "-1".to_string()), ("D1", "xi_2".to_string())];
            entry(
                "d5",
                "S4",
                Tier::Trig,
                grid([0.5, 3.0], [0.5, 3.0], n),
                case.build_ansatz(&pr)?,
                params,
            )
        }
        "d3" => {
            let case = ReductionCase::plain(CaseId::S4, 1.0, k)?;
            let q = |s: &S| -> Result<S> {
                s.compose(&sn(-1.0))?
                    .div(&s.compose(&dn(-1.0))?.add_scalar(1.0))
            };
            let ratio = move |s: &S| -> Result<S> {
                let q = q(s)?;
                q.add_scalar(1.0).div(&q.scale(-1.0).add_scalar(1.0))
            };
            let mu = move |s: &S| -> Result<S> {
                let r = ratio(s)?;
                Ok(&r + &r.recip()?)
            };
            let nu = move |s: &S| -> Result<S> {
                let r = ratio(s)?;
                Ok(&r - &r.recip()?)
            };
            let alpha = |s: &S| s.compose(&cn(-1.0))?.acos();
            let pr = AnsatzProfiles {
                alpha: Profile::real(k, series_fn(alpha)),
                a: Profile::term(o1.clone(), series_fn(mu)),
                b: Profile::term(o1.clone(), series_fn(nu)),
                beta: Profile::term(G::scalar(k, -1.0), series_fn(move |s| Ok(alpha(s)?.sin()))),
            };
            let mut en = entry(
                "d3",
                "S4",
                Tier::Elliptic,
                grid([1.2, 2.4], [0.3, 1.0], n),
                case.build_ansatz(&pr)?,
                vec![
                    ("eps", "1".into()),
                    ("m", "-1".into()),
                    ("D1", "xi_2".into()),
                ],
            );
            en.notes.push(
                "grid keeps sigma = x - t inside (0, 2K(-1)) where arccos(cn) is smooth".into(),
            );
            en
        }
        "ginv14" | "ginv9" => {
            let is8 = name == "ginv14";
            let id = if is8 { CaseId::S8 } else { CaseId::S12 };
            let case = ReductionCase::new(id, -1.0, o1.clone())?;
            let (pr, _) = elliptic_profiles(id, p, &o1)?;
            let params = vec![
                ("eps", "-1".to_string()),
                ("k", p.modulus.to_string()),
                (if is8 { "mu" } else { "nu" }, "xi_2".to_string()),
                ("g(0)", p.g_initial[0].to_string()),
                ("g'(0)", p.g_initial[1].to_string()),
            ];
            let mut en = entry(
                if is8 { "ginv14" } else { "ginv9" },
                if is8 { "S8" } else { "S12" },
                Tier::Ode,
                box1,
                case.build_ansatz(&pr)?,
                params,
            );
            en.notes
                .push("eps = +1 needs an imaginary sqrt(-eps) and is out of domain".into());
            en
        }
        _ => return Err(Error::UnknownVariable(name.to_string())),
    };
    Ok(e)
}

/// `max |β ± sin α|` for the S8/S12 pair `β = ∓k sn`, `α = arcsin(k sn)`.
pub fn elliptic_sign_pair_defect(k_mod: f64, samples: &[f64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &s in samples {
        let ksn = k_mod * sn(k_mod * k_mod).value(s)?;
        let alpha = ksn.asin();
        worst = worst
            .max((-ksn + alpha.sin()).abs())
            .max((ksn - alpha.sin()).abs());
    }
    Ok(worst)
}

/// Drift of the nilpotent constant `σ^{1/2} a b` (S1) or `a b` (S4) along a
/// profile set, and whether every sample is soul-only.
pub fn nilpotent_constant(
    case: CaseId,
    pr: &AnsatzProfiles,
    samples: &[f64],
) -> Result<(f64, bool)> {
    let k = pr.generators();
    let mut vals = Vec::new();
    for &s in samples {
        let sg = G::scalar(k, s);
        let ab = &pr.a.value(&sg)? * &pr.b.value(&sg)?;
        vals.push(match case {
            CaseId::S1 => &sg.sqrt()? * &ab,
            CaseId::S4 => ab,
            _ => {
                return Err(Error::Usage(format!(
                    "no nilpotent constant for {}",
                    case.name()
                )))
            }
        });
    }
    let first = vals.first().cloned().unwrap_or_else(|| G::zero(k));
    let drift = vals
        .iter()
        .map(|v| v.max_abs_diff(&first))
        .fold(0.0, f64::max);
    Ok((drift, vals.iter().all(|v| v.body() == 0.0)))
}

/// Profile sets of the S1 and S4 catalog entries, for bookkeeping checks.
pub fn entry_profiles(name: &str, p: &CatalogParams) -> Result<AnsatzProfiles> {
    let k = p.generators;
    let (o1, o2) = (p.odd1(), p.odd2());
    match name {
        "d18" => {
            let mu = Profile::term(
                o1.clone(),
                series_fn(|s| Ok(&s.powf(-0.5)? * &s.sqrt()?.scale(2.0).cos())),
            )
            .add(&Profile::term(
                -&o2,
                series_fn(|s| Ok(&s.powf(-0.5)? * &s.sqrt()?.scale(2.0).sin())),
            ));
            let nu = Profile::term(o1, series_fn(|s| Ok(s.sqrt()?.scale(2.0).sin()))).add(
                &Profile::term(o2, series_fn(|s| Ok(s.sqrt()?.scale(2.0).cos()))),
            );
            Ok(AnsatzProfiles {
                alpha: Profile::zero(k),
                a: mu,
                b: nu,
                beta: Profile::zero(k),
            })
        }
        "d5" => Ok(AnsatzProfiles {
            alpha: Profile::real(k, series_fn(|s| s.tanh().asin())),
            a: Profile::term(o1.clone(), series_fn(|s| s.cosh().recip())),
            b: Profile::term(o1, series_fn(|s| Ok(s.tanh()))),
            beta: Profile::term(G::scalar(k, -1.0), series_fn(|s| Ok(s.tanh()))),
        }),
        _ => Err(Error::UnknownVariable(name.to_string())),
    }
}

//! Profile ODEs, classical RK4 integration and ODE-backed analytic profiles.
//!
//! Every system is second order in its unknowns `y_i(σ)`. The same
//! series-level right-hand side drives the RK4 stages (degree-0 series) and
//! the local Taylor recurrence, so jets of integrated profiles come from the
//! equation itself.

use std::sync::Arc;

use serde::Serialize;

use crate::elliptic;
use crate::error::{Error, Result};
use crate::series::{Affine, Analytic, Series};

type S = Series<f64>;

pub const COS_THRESHOLD: f64 = 1e-3;
pub const DEFAULT_DRIFT_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "system", rename_all = "kebab-case")]
pub enum ProfileOde {
    /// `g'' + tan α α' g' - ε cos²α g - ε cos α α' = 0` (S12).
    Ginv12 { eps: f64, k: f64 },
    /// `g'' + tan α α' g' - ε cos²α g + ε cos α α' = 0` (S8).
    Ginv17 { eps: f64, k: f64 },
    /// `σα'' + α' + ½ sin 2α = 0` with
    /// `n'' + (1/(2σ) + tan α α') n' + cos²α n / σ = 0`, where `ν = D n`.
    #[serde(rename = "d16-nu")]
    D16Nu,
    /// `ε α'' - ½ sin 2α + K0 sin α = 0`.
    Rebp { eps: f64, k0: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OdeInitial {
    pub sigma0: f64,
    pub y: Vec<f64>,
    pub dy: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    pub step: f64,
    /// Energy drift at which a step is rejected (first-integral systems only).
    pub drift_threshold: f64,
    /// Step halvings tried before a rejection becomes an error.
    pub max_halvings: u32,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            step: 0.01,
            drift_threshold: DEFAULT_DRIFT_THRESHOLD,
            max_halvings: 4,
        }
    }
}

fn pad(s: &S, n: usize) -> S {
    let mut c = s.coeffs().to_vec();
    c.resize(n + 1, 0.0);
    S::from_coeffs(c)
}

fn check_cos(sigma: f64, c: &S) -> Result<()> {
    if c.value().abs() < COS_THRESHOLD {
        return Err(Error::NearSingular {
            sigma,
            cos: c.value().abs(),
        });
    }
    Ok(())
}

impl ProfileOde {
    pub fn name(&self) -> &'static str {
        match self {
            ProfileOde::Ginv12 { .. } => "ginv12",
            ProfileOde::Ginv17 { .. } => "ginv17",
            ProfileOde::D16Nu => "d16-nu",
            ProfileOde::Rebp { .. } => "rebp",
        }
    }

    /// Parses a selector with the remaining parameters supplied.
    pub fn parse(name: &str, eps: f64, k: f64, k0: f64) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "ginv12" => Ok(ProfileOde::Ginv12 { eps, k }),
            "ginv17" => Ok(ProfileOde::Ginv17 { eps, k }),
            "d16-nu" | "d16" => Ok(ProfileOde::D16Nu),
            "rebp" => Ok(ProfileOde::Rebp { eps, k0 }),
            _ => Err(Error::UnknownVariable(name.to_string())),
        }
    }

    pub fn unknowns(&self) -> usize {
        match self {
            ProfileOde::D16Nu => 2,
            _ => 1,
        }
    }

    pub fn default_initial(&self) -> OdeInitial {
        match self {
            ProfileOde::Ginv12 { .. } | ProfileOde::Ginv17 { .. } => OdeInitial {
                sigma0: 0.0,
                y: vec![0.0],
                dy: vec![1.0],
            },
            ProfileOde::D16Nu => OdeInitial {
                sigma0: 1.0,
                y: vec![0.3, 0.0],
                dy: vec![0.0, 1.0],
            },
            ProfileOde::Rebp { .. } => OdeInitial {
                sigma0: 0.0,
                y: vec![0.0],
                dy: vec![1.0],
            },
        }
    }

    /// Whether `α` is prescribed in closed form rather than integrated.
    pub fn has_closed_alpha(&self) -> bool {
        matches!(self, ProfileOde::Ginv12 { .. } | ProfileOde::Ginv17 { .. })
    }

    fn validate(&self) -> Result<()> {
        match *self {
            ProfileOde::Ginv12 { eps, k } | ProfileOde::Ginv17 { eps, k } => {
                if eps != -1.0 {
                    return Err(Error::Domain(format!(
                        "the elliptic profile needs a real sqrt(-eps); eps = {eps} is out of domain"
                    )));
                }
                if k.abs() >= 1.0 {
                    return Err(Error::Domain(format!(
                        "modulus |k| = {} must be below 1",
                        k.abs()
                    )));
                }
            }
            ProfileOde::Rebp { eps, .. } if eps.abs() != 1.0 => {
                return Err(Error::Domain(format!("eps must be ±1, got {eps}")));
            }
            _ => {}
        }
        Ok(())
    }

    /// `α = arcsin(k sn(√(-ε) σ, k²))` as a series.
    fn closed_alpha(&self, s: &S) -> Result<S> {
        match *self {
            ProfileOde::Ginv12 { eps, k } | ProfileOde::Ginv17 { eps, k } => {
                let f = Affine {
                    inner: elliptic::sn(k * k),
                    a: (-eps).sqrt(),
                    b: 0.0,
                };
                s.compose(&f)?.scale(k).asin()
            }
            _ => Err(Error::Usage(format!(
                "{} has no prescribed alpha",
                self.name()
            ))),
        }
    }

    /// `α` along the solution.
    pub fn alpha_series(&self, s: &S, y: &[S]) -> Result<S> {
        if self.has_closed_alpha() {
            self.closed_alpha(s)
        } else {
            Ok(y[0].clone())
        }
    }

    /// Second derivatives `y_i''` as series of the same degree as `s`.
    pub fn second_derivatives(&self, s: &S, y: &[S], dy: &[S]) -> Result<Vec<S>> {
        let sigma = s.value();
        match *self {
            ProfileOde::Ginv12 { eps, .. } | ProfileOde::Ginv17 { eps, .. } => {
                let n = s.degree();
                let al = self.closed_alpha(s)?;
                let al1 = pad(&al.differentiate(), n);
                let (sn, cs) = al.sin_cos();
                check_cos(sigma, &cs)?;
                let tan = sn.div(&cs)?;
                let forcing = (&cs * &al1).scale(eps);
                let lin =
                    &(&(&tan * &al1) * &dy[0]).scale(-1.0) + &(&(&cs * &cs) * &y[0]).scale(eps);
                let g2 = match self {
                    ProfileOde::Ginv12 { .. } => &lin + &forcing,
                    _ => &lin - &forcing,
                };
                Ok(vec![g2])
            }
            ProfileOde::D16Nu => {
                if sigma.abs() < 1e-12 {
                    return Err(Error::SingularPoint(sigma));
                }
                let (a, a1, m, m1) = (&y[0], &dy[0], &y[1], &dy[1]);
                let (sn, cs) = a.sin_cos();
                check_cos(sigma, &cs)?;
                let inv = s.recip()?;
                let a2 = (&(a1 + &(&sn * &cs)) * &inv).scale(-1.0);
                let tan = sn.div(&cs)?;
                let damp = &inv.scale(0.5) + &(&tan * a1);
                let m2 = (&(&damp * m1) + &(&(&(&cs * &cs) * m) * &inv)).scale(-1.0);
                Ok(vec![a2, m2])
            }
            ProfileOde::Rebp { eps, k0 } => {
                let (sn, cs) = y[0].sin_cos();
                Ok(vec![(&(&sn * &cs) - &sn.scale(k0)).scale(eps)])
            }
        }
    }

    /// `ε α'²/2 + ¼ cos 2α - K0 cos α` for the first-integral system.
    pub fn energy(&self, y: &[f64], dy: &[f64]) -> Option<f64> {
        match *self {
            ProfileOde::Rebp { eps, k0 } => {
                let a = y[0];
                Some(eps * dy[0] * dy[0] / 2.0 + 0.25 * (2.0 * a).cos() - k0 * a.cos())
            }
            _ => None,
        }
    }

    fn accel(&self, s: f64, y: &[f64], dy: &[f64]) -> Result<Vec<f64>> {
        let lift = |v: &[f64]| v.iter().map(|&x| S::constant(x, 0)).collect::<Vec<_>>();
        Ok(self
            .second_derivatives(&S::constant(s, 0), &lift(y), &lift(dy))?
            .iter()
            .map(|v| v.value())
            .collect())
    }

    /// One classical RK4 step for `(y, y')`.
    pub fn rk4_step(&self, s: f64, y: &[f64], dy: &[f64], h: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        let n = y.len();
        let axpy =
            |a: &[f64], b: &[f64], c: f64| (0..n).map(|i| a[i] + c * b[i]).collect::<Vec<_>>();
        let k1y = dy.to_vec();
        let k1v = self.accel(s, y, dy)?;
        let (y2, v2) = (axpy(y, &k1y, h / 2.0), axpy(dy, &k1v, h / 2.0));
        let k2v = self.accel(s + h / 2.0, &y2, &v2)?;
        let k2y = v2;
        let (y3, v3) = (axpy(y, &k2y, h / 2.0), axpy(dy, &k2v, h / 2.0));
        let k3v = self.accel(s + h / 2.0, &y3, &v3)?;
        let k3y = v3;
        let (y4, v4) = (axpy(y, &k3y, h), axpy(dy, &k3v, h));
        let k4v = self.accel(s + h, &y4, &v4)?;
        let k4y = v4;
        let comb = |a: &[f64], k1: &[f64], k2: &[f64], k3: &[f64], k4: &[f64]| {
            (0..n)
                .map(|i| a[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
                .collect::<Vec<_>>()
        };
        Ok((
            comb(y, &k1y, &k2y, &k3y, &k4y),
            comb(dy, &k1v, &k2v, &k3v, &k4v),
        ))
    }

    /// Taylor coefficients of every unknown at `s0` from `(y, y')` there.
    pub fn local_series(&self, s0: f64, y: &[f64], dy: &[f64], n: usize) -> Result<Vec<S>> {
        let s = S::variable(s0, n);
        let mut ys: Vec<S> = y
            .iter()
            .zip(dy)
            .map(|(&a, &b)| {
                let mut c = vec![0.0; n + 1];
                c[0] = a;
                if n >= 1 {
                    c[1] = b;
                }
                S::from_coeffs(c)
            })
            .collect();
        for j in 0..n.saturating_sub(1) {
            let dys: Vec<S> = ys.iter().map(|v| pad(&v.differentiate(), n)).collect();
            let acc = self.second_derivatives(&s, &ys, &dys)?;
            for (v, a) in ys.iter_mut().zip(&acc) {
                let mut c = v.coeffs().to_vec();
                c[j + 2] = a.coeffs()[j] / ((j + 1) * (j + 2)) as f64;
                *v = S::from_coeffs(c);
            }
        }
        Ok(ys)
    }
}

/// Nodes of an integrated trajectory, sorted by `σ`.
#[derive(Debug, Clone, Serialize)]
pub struct ProfileTrajectory {
    pub system: ProfileOde,
    pub sigma: Vec<f64>,
    pub y: Vec<Vec<f64>>,
    pub dy: Vec<Vec<f64>>,
    /// `y''` from the equation at each node.
    pub ddy: Vec<Vec<f64>>,
    pub step: f64,
}

/// Integration output with the error that stopped it, if any.
#[derive(Debug, Clone)]
pub struct PartialIntegration {
    pub trajectory: ProfileTrajectory,
    pub stopped: Option<Error>,
}

fn march(
    sys: &ProfileOde,
    s0: f64,
    y0: &[f64],
    dy0: &[f64],
    target: f64,
    opts: &OdeOptions,
    out: &mut Vec<(f64, Vec<f64>, Vec<f64>)>,
) -> Option<Error> {
    let e0 = sys.energy(y0, dy0);
    let (mut s, mut y, mut dy) = (s0, y0.to_vec(), dy0.to_vec());
    let steps = ((target - s0).abs() / opts.step - 1e-9).ceil().max(0.0) as usize;
    let h = if steps == 0 {
        0.0
    } else {
        (target - s0) / steps as f64
    };
    for _ in 0..steps {
        let mut attempt = (h, 1usize);
        let mut halvings = 0;
        loop {
            let (sub, count) = attempt;
            let mut trial = (y.clone(), dy.clone());
            let mut err = None;
            for i in 0..count {
                match sys.rk4_step(s + sub * i as f64, &trial.0, &trial.1, sub) {
                    Ok(v) => trial = v,
                    Err(e) => {
                        err = Some(e);
                        break;
                    }
                }
            }
            if let Some(e) = err {
                return Some(e);
            }
            let drift = match (e0, sys.energy(&trial.0, &trial.1)) {
                (Some(a), Some(b)) => (b - a).abs(),
                _ => 0.0,
            };
            if drift > opts.drift_threshold {
                if halvings >= opts.max_halvings {
                    return Some(Error::StepRejected {
                        drift,
                        threshold: opts.drift_threshold,
                    });
                }
                halvings += 1;
                attempt = (sub / 2.0, count * 2);
                continue;
            }
            s += h;
            (y, dy) = trial;
            break;
        }
        out.push((s, y.clone(), dy.clone()));
    }
    None
}

/// Integrates from `init.sigma0` towards both ends of `[lo, hi]`, stopping
/// at the first failure.
pub fn integrate_partial(
    sys: ProfileOde,
    init: &OdeInitial,
    lo: f64,
    hi: f64,
    opts: &OdeOptions,
) -> Result<PartialIntegration> {
    sys.validate()?;
    if !(opts.step > 0.0) || !(hi > lo) {
        return Err(Error::Usage(format!(
            "invalid range {lo}:{hi} with step {}",
            opts.step
        )));
    }
    if init.y.len() != sys.unknowns() || init.dy.len() != sys.unknowns() {
        return Err(Error::Usage(format!(
            "{} needs {} initial values and slopes",
            sys.name(),
            sys.unknowns()
        )));
    }
    let s0 = init.sigma0;
    let mut fwd = Vec::new();
    let mut bwd = Vec::new();
    let mut stopped = None;
    if let Err(e) = sys.accel(s0, &init.y, &init.dy) {
        stopped = Some(e);
    } else {
        if hi > s0 {
            stopped = march(&sys, s0, &init.y, &init.dy, hi, opts, &mut fwd);
        }
        if lo < s0 {
            let e = march(&sys, s0, &init.y, &init.dy, lo, opts, &mut bwd);
            stopped = stopped.or(e);
        }
    }
    let mut nodes: Vec<(f64, Vec<f64>, Vec<f64>)> = bwd.into_iter().rev().collect();
    if stopped.is_none() || !nodes.is_empty() || !fwd.is_empty() {
        nodes.push((s0, init.y.clone(), init.dy.clone()));
    }
    nodes.extend(fwd);
    let mut t = ProfileTrajectory {
        system: sys,
        sigma: Vec::with_capacity(nodes.len()),
        y: Vec::with_capacity(nodes.len()),
        dy: Vec::with_capacity(nodes.len()),
        ddy: Vec::with_capacity(nodes.len()),
        step: opts.step,
    };
    for (s, y, dy) in nodes {
        let Ok(acc) = sys.accel(s, &y, &dy) else {
            continue;
        };
        t.sigma.push(s);
        t.y.push(y);
        t.dy.push(dy);
        t.ddy.push(acc);
    }
    Ok(PartialIntegration {
        trajectory: t,
        stopped,
    })
}

/// RK4 trajectory covering `[lo, hi]`; any integration failure is an error.
pub fn integrate_profile_ode(
    sys: ProfileOde,
    init: &OdeInitial,
    lo: f64,
    hi: f64,
    opts: &OdeOptions,
) -> Result<ProfileTrajectory> {
    let p = integrate_partial(sys, init, lo, hi, opts)?;
    match p.stopped {
        Some(e) => Err(e),
        None => Ok(p.trajectory),
    }
}

/// `max |E(σ) - E(σ0)|` along a first-integral trajectory.
pub fn first_integral_check(t: &ProfileTrajectory, sigma0: f64) -> Result<f64> {
    let i0 = t.nearest(sigma0)?;
    let e = |i: usize| {
        t.system
            .energy(&t.y[i], &t.dy[i])
            .ok_or_else(|| Error::Usage(format!("{} has no first integral", t.system.name())))
    };
    let e0 = e(i0)?;
    let mut worst: f64 = 0.0;
    for i in 0..t.sigma.len() {
        worst = worst.max((e(i)? - e0).abs());
    }
    Ok(worst)
}

impl ProfileTrajectory {
    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn range(&self) -> Option<(f64, f64)> {
        Some((*self.sigma.first()?, *self.sigma.last()?))
    }

    fn nearest(&self, x: f64) -> Result<usize> {
        let (lo, hi) = self
            .range()
            .ok_or_else(|| Error::Domain("empty trajectory".into()))?;
        let slack = self.step;
        if x < lo - slack || x > hi + slack {
            return Err(Error::Domain(format!(
                "sigma = {x} outside the trajectory [{lo}, {hi}]"
            )));
        }
        let i = self.sigma.partition_point(|&s| s < x);
        Ok(match i {
            0 => 0,
            i if i >= self.sigma.len() => self.sigma.len() - 1,
            i if (x - self.sigma[i - 1]).abs() <= (self.sigma[i] - x).abs() => i - 1,
            i => i,
        })
    }

    /// `(y, y')` at any `σ` in range: one RK4 step from the nearest node.
    pub fn state_at(&self, x: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        let i = self.nearest(x)?;
        let h = x - self.sigma[i];
        if h == 0.0 {
            return Ok((self.y[i].clone(), self.dy[i].clone()));
        }
        self.system
            .rk4_step(self.sigma[i], &self.y[i], &self.dy[i], h)
    }

    /// Local Taylor series of every unknown at `x`.
    pub fn series_at(&self, x: f64, n: usize) -> Result<Vec<S>> {
        let (y, dy) = self.state_at(x)?;
        self.system.local_series(x, &y, &dy, n)
    }

    /// `α` series at `x`.
    pub fn alpha_series_at(&self, x: f64, n: usize) -> Result<S> {
        let ys = self.series_at(x, n)?;
        self.system.alpha_series(&S::variable(x, n), &ys)
    }

    /// The `i`-th unknown as an analytic function of `σ`.
    pub fn unknown(self: &Arc<Self>, i: usize) -> OdeFunction {
        let t = self.clone();
        OdeFunction(Arc::new(move |x, n| Ok(t.series_at(x, n)?.swap_remove(i))))
    }

    /// `α(σ)` as an analytic function.
    pub fn alpha(self: &Arc<Self>) -> OdeFunction {
        let t = self.clone();
        OdeFunction(Arc::new(move |x, n| t.alpha_series_at(x, n)))
    }

    /// `c · y_i' / cos α` as an analytic function.
    pub fn slope_over_cos(self: &Arc<Self>, i: usize, c: f64) -> OdeFunction {
        let t = self.clone();
        OdeFunction(Arc::new(move |x, n| {
            let ys = t.series_at(x, n + 1)?;
            let al = t.system.alpha_series(&S::variable(x, n + 1), &ys)?;
            let d = pad(&ys[i].differentiate(), n);
            let cs = S::from_coeffs(al.cos().coeffs()[..=n].to_vec());
            Ok(d.div(&cs)?.scale(c))
        }))
    }
}

type SeriesAt = Arc<dyn Fn(f64, usize) -> Result<S> + Send + Sync>;

/// An analytic function backed by an integrated trajectory.
#[derive(Clone)]
pub struct OdeFunction(SeriesAt);

impl Analytic<f64> for OdeFunction {
    fn taylor(&self, x: f64, n: usize) -> Result<Vec<f64>> {
        Ok((self.0)(x, n)?.into_coeffs())
    }
}

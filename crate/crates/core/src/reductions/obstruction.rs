//! Subalgebras with nilpotent, non-standard invariants.

use rand::Rng;
use serde::Serialize;

use super::profile::Profile;
use crate::error::{Error, Result};
use crate::grassmann::{GrassmannNumber, Parity};
use crate::superfield::{Superfield, THETA1, THETA2};

type G = GrassmannNumber<f64>;

/// Subalgebras whose invariants include an odd constant times an arbitrary
/// function, with that invariant.
pub const NONSTANDARD: [(&str, &str); 6] = [
    ("S5", "mu f(x, t, th1, th2, Phi)"),
    ("S9", "nu f(x, t, th1, th2, Phi)"),
    ("S13", "mu nu f(x, t, th1, th2, Phi)"),
    ("S14", "mu nu f(t, th1, th2, Phi)"),
    ("S15", "mu nu f(x, th1, th2, Phi)"),
    ("S16", "mu nu f(th1, th2, Phi)"),
];

/// `A(t, τ, θ2) = A0(t) + τ A1(t) + θ2 (B0(t) + τ B1(t))`.
#[derive(Clone, Debug)]
pub struct NonstandardField {
    pub a0: Profile,
    pub a1: Profile,
    pub b0: Profile,
    pub b1: Profile,
}

impl NonstandardField {
    pub fn random<R: Rng + ?Sized>(k: usize, gens: &[usize], rng: &mut R) -> Result<Self> {
        Ok(Self {
            a0: Profile::random(k, Parity::Even, gens, 3, rng)?,
            a1: Profile::random(k, Parity::Even, gens, 3, rng)?,
            b0: Profile::random(k, Parity::Odd, gens, 3, rng)?,
            b1: Profile::random(k, Parity::Odd, gens, 3, rng)?,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ObstructionRecord {
    pub subalgebra: String,
    pub invariant: String,
    /// `max |R + (μxθ2 A_tτ + μx A_τθ2 + sin A)|` over the samples.
    pub identity_defect: f64,
    /// `‖μθ2 A_tτ + μ A_τθ2‖` at each sampled `t`.
    pub x_coefficient: Vec<f64>,
    /// `‖LHS(x = 2) − LHS(x = 1)‖` at fixed `(t, τ, θ2)`.
    pub x_dependence: Vec<f64>,
}

/// The S5 demonstration with `τ = μ x θ1`.
pub fn s5_obstruction(mu: &G, field: &NonstandardField, ts: &[f64]) -> Result<ObstructionRecord> {
    mu.require_parity(Parity::Odd)?;
    let k = mu.generators();
    let th1 = G::generator(k, THETA1);
    let th2 = G::generator(k, THETA2);
    let mu_th1 = mu * &th1;
    let f = field.clone();
    let m1 = mu_th1.clone();
    let phi = Superfield::from_fn(k, move |x, t, _, th2| {
        let tau = x.left_mul(&m1);
        let a = &f.a0.eval(t)? + &(&tau * &f.a1.eval(t)?);
        let b = &f.b0.eval(t)? + &(&tau * &f.b1.eval(t)?);
        Ok(&a + &b.left_mul(th2))
    })?;

    let lhs = |x: f64, tau: &G, t: f64| -> Result<G> {
        let tg = G::scalar(k, t);
        let [a0, ..] = field.a0.derivs(&tg)?;
        let [a1, da1, _] = field.a1.derivs(&tg)?;
        let b0 = field.b0.value(&tg)?;
        let b1 = field.b1.value(&tg)?;
        let value = &(&a0 + &(tau * &a1)) + &(&th2 * &(&b0 + &(tau * &b1)));
        let d_tau = &(&th2 * &da1) + &b1;
        Ok(&(mu * &d_tau).scale(x) + &value.sin())
    };

    let mut rec = ObstructionRecord {
        subalgebra: "S5".into(),
        invariant: "tau = mu x th1".into(),
        identity_defect: 0.0,
        x_coefficient: Vec::new(),
        x_dependence: Vec::new(),
    };
    for &t in ts {
        for x in [1.0, 2.0, -0.5] {
            let r = phi.ssg_residual_at(x, t)?;
            let l = lhs(x, &mu_th1.scale(x), t)?;
            rec.identity_defect = rec.identity_defect.max((&r + &l).norm_max());
        }
        let tg = G::scalar(k, t);
        let coeff = &(&(mu * &th2) * &field.a1.derivs(&tg)?[1]) + &(mu * &field.b1.value(&tg)?);
        rec.x_coefficient.push(coeff.norm_max());
        rec.x_dependence
            .push((&lhs(2.0, &mu_th1, t)? - &lhs(1.0, &mu_th1, t)?).norm_max());
    }
    Ok(rec)
}

#[derive(Debug, Clone, Serialize)]
pub struct TrivialReductionRecord {
    /// `max |R + sin Φ|` for random `Φ(t, θ2)`.
    pub reduction_defect: f64,
    /// Body roots of `sin` found on the scanned interval.
    pub roots: Vec<f64>,
    /// `max |root − kπ|`.
    pub root_error: f64,
    /// Largest soul left after Newton refinement of random starting points.
    pub soul_after_newton: f64,
    /// `min |cos root|`; nonzero forces the `θ2` coefficient to vanish.
    pub min_cos: f64,
}

/// The `{Q_x, P_x}` reduction: `Φ = a(t) + θ2 c(t)` gives `R = −sin Φ`, whose
/// zeros are exactly `kπ`.
pub fn qx_px_reduction<R: Rng + ?Sized>(
    k: usize,
    range: [f64; 2],
    scan: usize,
    rng: &mut R,
) -> Result<TrivialReductionRecord> {
    if k < 4 || scan < 2 || !(range[1] > range[0]) {
        return Err(Error::Usage(
            "qx_px_reduction needs K >= 4, scan >= 2 and a nonempty range".into(),
        ));
    }
    let gens: Vec<usize> = (2..k).collect();
    let a = Profile::random(k, Parity::Even, &gens, 3, rng)?;
    let c = Profile::random(k, Parity::Odd, &gens, 3, rng)?;
    let phi = Superfield::from_fn(k, move |_, t, _, th2| {
        Ok(&a.eval(t)? + &c.eval(t)?.left_mul(th2))
    })?;
    let mut defect: f64 = 0.0;
    for i in 0..5 {
        let (x, t) = (-1.0 + 0.5 * i as f64, 0.3 * i as f64 - 0.6);
        let r = phi.ssg_residual_at(x, t)?;
        let v = phi.at(x, t, 0)?.value().sin();
        defect = defect.max((&r + &v).norm_max());
    }

    let h = (range[1] - range[0]) / (scan - 1) as f64;
    let mut roots = Vec::new();
    for i in 0..scan - 1 {
        let (mut lo, mut hi) = (range[0] + h * i as f64, range[0] + h * (i + 1) as f64);
        if lo.sin() == 0.0 {
            roots.push(lo);
            continue;
        }
        if lo.sin() * hi.sin() > 0.0 {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if lo.sin() * mid.sin() <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    let pi = std::f64::consts::PI;
    let root_error = roots
        .iter()
        .map(|r| (r - (r / pi).round() * pi).abs())
        .fold(0.0, f64::max);
    let min_cos = roots
        .iter()
        .map(|r| r.cos().abs())
        .fold(f64::INFINITY, f64::min);

    let mut soul: f64 = 0.0;
    for &r in &roots {
        let mut z =
            &G::scalar(k, r) + &G::sample_random_with(k, Parity::Even, 2, &gens, rng)?.soul();
        for _ in 0..8 {
            z = &z - &(&z.sin() * &z.cos().invert()?);
        }
        soul = soul.max(z.soul().norm_max());
    }
    Ok(TrivialReductionRecord {
        reduction_defect: defect,
        roots,
        root_error,
        soul_after_newton: soul,
        min_cos,
    })
}

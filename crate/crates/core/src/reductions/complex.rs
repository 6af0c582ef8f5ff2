//! The scale-invariant reduction viewed as a complex ODE under `α = i ln y`.

use num_complex::Complex64 as C;
use rand::Rng;
use serde::Serialize;

const I: C = C::new(0.0, 1.0);

/// First equation of the S1 reduced system,
/// `σα'' + α' + ½ sin 2α − C0 σ^{-1/2} sin α`.
pub fn d7_first_residual(sigma: C, alpha: [C; 3], c0: C) -> C {
    let [a, da, dda] = alpha;
    sigma * dda + da + 0.5 * (2.0 * a).sin() - c0 * sigma.powf(-0.5) * a.sin()
}

/// `y'' − y'^2/y + y'/σ − (1/y − y³)/(4σ) + C0 (1 − y²)/(2σ^{3/2})`.
pub fn d14_residual(sigma: C, y: [C; 3], c0: C) -> C {
    let [y, dy, ddy] = y;
    ddy - dy * dy / y + dy / sigma - (y.inv() - y.powi(3)) / (4.0 * sigma)
        + c0 * (1.0 - y * y) / (2.0 * sigma.powf(1.5))
}

/// `Y'' − Y'^2/Y + Y'/z ∓ i (Y³ − 1/Y)/(8z)` with `sign = ±1`.
pub fn d15_residual(z: C, y: [C; 3], sign: f64) -> C {
    let [y, dy, ddy] = y;
    ddy - dy * dy / y + dy / z - sign * I * (y.powi(3) - y.inv()) / (8.0 * z)
}

/// `(α, α', α'')` for `α = i ln y`.
pub fn alpha_from_y(y: [C; 3]) -> [C; 3] {
    let [y, dy, ddy] = y;
    let r = dy / y;
    [I * y.ln(), I * r, I * (ddy / y - r * r)]
}

/// Coefficients `(p, q, m)` of `ν'' + p ν' + q ν = 0`, `μ = m ν'` in the `y` form.
pub fn d16_coefficients(sigma: C, y: [C; 2]) -> [C; 3] {
    let [y, dy] = y;
    let p = 0.5 / sigma + (1.0 - y * y) / (y * (1.0 + y * y)) * dy;
    let q = (y + y.inv()).powi(2) / (4.0 * sigma);
    [p, q, 2.0 * y / (1.0 + y * y)]
}

/// The same coefficients in the `α` form.
pub fn d7_odd_coefficients(sigma: C, alpha: [C; 2]) -> [C; 3] {
    let [a, da] = alpha;
    [
        0.5 / sigma + a.tan() * da,
        a.cos().powi(2) / sigma,
        a.cos().inv(),
    ]
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TransformationReport {
    pub samples: usize,
    /// `max |y/(iσ) · d7 − d14|`.
    pub d13_to_d14: f64,
    /// `max |d14 + 4 d15|` over both signs of `z = ±2iσ`.
    pub d14_to_d15: f64,
    /// `max` coefficient mismatch between the two forms of the odd sector.
    pub d16: f64,
}

fn random_c<R: Rng + ?Sized>(rng: &mut R, r: f64) -> C {
    C::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

/// Pointwise check at random complex `σ` with `Im σ ≠ 0` and random quadratic
/// `y(σ)` bounded away from zero.
pub fn transformation_check<R: Rng + ?Sized>(rng: &mut R, samples: usize) -> TransformationReport {
    let mut rep = TransformationReport {
        samples,
        d13_to_d14: 0.0,
        d14_to_d15: 0.0,
        d16: 0.0,
    };
    for _ in 0..samples {
        let sigma = C::new(
            rng.gen_range(0.3..2.0),
            rng.gen_range(0.2..1.5) * if rng.gen() { 1.0 } else { -1.0 },
        );
        let c = [
            C::new(rng.gen_range(0.6..1.4), 0.0) + random_c(rng, 0.3),
            random_c(rng, 0.5),
            random_c(rng, 0.5),
        ];
        let y = [
            c[0] + c[1] * sigma + c[2] * sigma * sigma,
            c[1] + 2.0 * c[2] * sigma,
            2.0 * c[2],
        ];
        let c0 = random_c(rng, 1.0);

        let lhs = y[0] / (I * sigma) * d7_first_residual(sigma, alpha_from_y(y), c0);
        let r14 = d14_residual(sigma, y, c0);
        rep.d13_to_d14 = rep.d13_to_d14.max((lhs - r14).norm());

        let r14_0 = d14_residual(sigma, y, C::new(0.0, 0.0));
        for sign in [1.0, -1.0] {
            let k = sign * 2.0 * I;
            let yz = [y[0], y[1] / k, y[2] / (k * k)];
            let r15 = d15_residual(k * sigma, yz, sign);
            rep.d14_to_d15 = rep.d14_to_d15.max((r14_0 + 4.0 * r15).norm());
        }

        let a = alpha_from_y(y);
        let from_y = d16_coefficients(sigma, [y[0], y[1]]);
        let from_a = d7_odd_coefficients(sigma, [a[0], a[1]]);
        for (u, v) in from_y.iter().zip(&from_a) {
            rep.d16 = rep.d16.max((u - v).norm());
        }
    }
    rep
}

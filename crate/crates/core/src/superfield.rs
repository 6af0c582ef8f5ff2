//! Superfields on `(x, t | θ1, θ2)` and the sine-Gordon residuals.
//!
//! A [`Superfield`] is any pure closure mapping `(x, t)` jets and the two
//! odd coordinates to an even jet. `θ1` and `θ2` are realized as generators
//! `ξ_0` and `ξ_1`, so odd-coordinate dependence is exact and `∂_θ` is the
//! left derivative on those generators. Mixed derivatives follow
//! `Φ_{AB} = ∂_B ∂_A Φ`:
//!
//! | `Φ`        | `Φ_θ1`  | `Φ_θ2`   | `Φ_θ1θ2` | `Φ_θ2θ1` |
//! |------------|---------|----------|----------|----------|
//! | `θ1 a`     | `a`     | `0`      | `0`      | `0`      |
//! | `θ2 a`     | `0`     | `a`      | `0`      | `0`      |
//! | `θ1θ2 F`   | `θ2 F`  | `-θ1 F`  | `F`      | `-F`     |
//!
//! With this table `D_x D_t Φ = θ1θ2 Φ_xt - θ2 Φ_tθ1 + θ1 Φ_xθ2 - Φ_θ1θ2`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grassmann::{GrassmannNumber, Parity};
use crate::superjet::{JetSpec, SuperJet};

type G = GrassmannNumber<f64>;
type Jet = SuperJet<f64>;

pub const THETA1: usize = 0;
pub const THETA2: usize = 1;

/// Closure `(x, t, θ1, θ2) ↦ Φ` on jets in the seeds `x, t`.
pub type FieldFn = Arc<dyn Fn(&Jet, &Jet, &G, &G) -> Result<Jet> + Send + Sync>;

/// Closure `(x, t) ↦ component` on jets in the seeds `x, t`.
pub type ComponentFn = Arc<dyn Fn(&Jet, &Jet) -> Result<Jet> + Send + Sync>;

#[derive(Clone)]
pub struct Superfield {
    k: usize,
    f: FieldFn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    X,
    T,
}

impl Direction {
    fn var(self) -> &'static str {
        match self {
            Direction::X => "x",
            Direction::T => "t",
        }
    }

    fn theta(self) -> usize {
        match self {
            Direction::X => THETA1,
            Direction::T => THETA2,
        }
    }
}

/// Value and low-order partials of `Φ` at one `(x, t)`, as functions of θ.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperfieldValueBundle {
    pub phi: G,
    pub x: G,
    pub t: G,
    pub th1: G,
    pub th2: G,
    pub xx: G,
    pub xt: G,
    pub tt: G,
    pub x_th1: G,
    pub x_th2: G,
    pub t_th1: G,
    pub t_th2: G,
    pub th1_th2: G,
}

impl SuperfieldValueBundle {
    pub fn th2_th1(&self) -> G {
        -&self.th1_th2
    }

    /// Entries paired with their expected parity.
    pub fn entries(&self) -> Vec<(&'static str, &G, Parity)> {
        use Parity::*;
        vec![
            ("phi", &self.phi, Even),
            ("x", &self.x, Even),
            ("t", &self.t, Even),
            ("th1", &self.th1, Odd),
            ("th2", &self.th2, Odd),
            ("xx", &self.xx, Even),
            ("xt", &self.xt, Even),
            ("tt", &self.tt, Even),
            ("x_th1", &self.x_th1, Odd),
            ("x_th2", &self.x_th2, Odd),
            ("t_th1", &self.t_th1, Odd),
            ("t_th2", &self.t_th2, Odd),
            ("th1_th2", &self.th1_th2, Even),
        ]
    }
}

/// Left derivative in an odd coordinate, coefficient-wise.
pub fn d_theta(j: &Jet, theta: usize) -> Jet {
    j.extract_left(theta)
}

/// `D_x = ∂_θ1 + θ1 ∂_x`, `D_t = ∂_θ2 + θ2 ∂_t`. Lowers the jet order by one.
pub fn apply_d(j: &Jet, dir: Direction) -> Result<Jet> {
    covariant(j, dir, 1.0)
}

/// `Q_x = ∂_θ1 - θ1 ∂_x`, `Q_t = ∂_θ2 - θ2 ∂_t`. Lowers the jet order by one.
pub fn apply_q(j: &Jet, dir: Direction) -> Result<Jet> {
    covariant(j, dir, -1.0)
}

fn covariant(j: &Jet, dir: Direction, s: f64) -> Result<Jet> {
    let th = GrassmannNumber::generator(j.generators(), dir.theta());
    let dt = d_theta(j, dir.theta());
    let dx = j.partial(dir.var())?.left_mul(&th).scale(s);
    Ok(&dt + &dx)
}

impl Superfield {
    pub fn new(k: usize, f: FieldFn) -> Result<Self> {
        if k < 2 {
            return Err(Error::Usage(
                "superfields need at least the two θ generators".into(),
            ));
        }
        Ok(Self { k, f })
    }

    pub fn from_fn<F>(k: usize, f: F) -> Result<Self>
    where
        F: Fn(&Jet, &Jet, &G, &G) -> Result<Jet> + Send + Sync + 'static,
    {
        Self::new(k, Arc::new(f))
    }

    /// `Φ = u/2 + θ1 φ + θ2 ψ + θ1θ2 F`; the first component is `u/2`.
    pub fn from_components(
        k: usize,
        u_half: ComponentFn,
        phi: ComponentFn,
        psi: ComponentFn,
        f: ComponentFn,
    ) -> Result<Self> {
        Self::from_fn(k, move |x, t, th1, th2| {
            let a = u_half(x, t)?;
            let b = phi(x, t)?;
            let c = psi(x, t)?;
            let d = f(x, t)?;
            a.require_parity(Parity::Even)?;
            b.require_parity(Parity::Odd)?;
            c.require_parity(Parity::Odd)?;
            d.require_parity(Parity::Even)?;
            let th12 = th1 * th2;
            Ok(&(&a + &b.left_mul(th1)) + &(&c.left_mul(th2) + &d.left_mul(&th12)))
        })
    }

    pub fn constant(k: usize, v: G) -> Result<Self> {
        Self::from_fn(k, move |x, _, _, _| Ok(x.lift(v.clone())))
    }

    pub fn generators(&self) -> usize {
        self.k
    }

    pub fn theta1(&self) -> G {
        GrassmannNumber::generator(self.k, THETA1)
    }

    pub fn theta2(&self) -> G {
        GrassmannNumber::generator(self.k, THETA2)
    }

    /// Jet of `Φ` in `(x, t)` at the given point.
    pub fn jet(&self, x: &G, t: &G, order: usize) -> Result<Jet> {
        x.require_parity(Parity::Even)?;
        t.require_parity(Parity::Even)?;
        let spec = JetSpec::new(&["x", "t"], order)?;
        let xj = Jet::variable(&spec, "x", x.clone())?;
        let tj = Jet::variable(&spec, "t", t.clone())?;
        let out = (self.f)(&xj, &tj, &self.theta1(), &self.theta2())?;
        if out.generators() != self.k {
            return Err(Error::ContextMismatch {
                left: self.k,
                right: out.generators(),
            });
        }
        Ok(out)
    }

    pub fn at(&self, x: f64, t: f64, order: usize) -> Result<Jet> {
        self.jet(&G::scalar(self.k, x), &G::scalar(self.k, t), order)
    }

    pub fn evaluate_bundle(&self, x: &G, t: &G) -> Result<SuperfieldValueBundle> {
        let j = self.jet(x, t, 2)?;
        let e1 = |j: &Jet| j.value().extract_left(THETA1);
        let e2 = |j: &Jet| j.value().extract_left(THETA2);
        let jx = j.partial("x")?;
        let jt = j.partial("t")?;
        Ok(SuperfieldValueBundle {
            phi: j.value().clone(),
            x: jx.value().clone(),
            t: jt.value().clone(),
            th1: e1(&j),
            th2: e2(&j),
            xx: j.d(&["x", "x"])?,
            xt: j.d(&["x", "t"])?,
            tt: j.d(&["t", "t"])?,
            x_th1: e1(&jx),
            x_th2: e2(&jx),
            t_th1: e1(&jt),
            t_th2: e2(&jt),
            th1_th2: j.value().extract_left(THETA1).extract_left(THETA2),
        })
    }

    pub fn ssg_residual(&self, x: &G, t: &G) -> Result<G> {
        let b = self.evaluate_bundle(x, t)?;
        Ok(ssg_residual_from_bundle(&b))
    }

    pub fn ssg_residual_at(&self, x: f64, t: f64) -> Result<G> {
        self.ssg_residual(&G::scalar(self.k, x), &G::scalar(self.k, t))
    }

    /// Component jets `(u, φ, ψ, F)` recovered from `Φ`.
    pub fn components(&self, x: &G, t: &G) -> Result<[Jet; 4]> {
        let j = self.jet(x, t, 2)?;
        let u = j.strip(THETA1).strip(THETA2).scale(2.0);
        let phi = j.extract_left(THETA1).strip(THETA2);
        let psi = j.extract_left(THETA2).strip(THETA1);
        let f = j.extract_left(THETA1).extract_left(THETA2);
        Ok([u, phi, psi, f])
    }
}

/// `θ1θ2 Φ_xt - θ2 Φ_tθ1 + θ1 Φ_xθ2 - Φ_θ1θ2 - sin Φ`.
pub fn ssg_residual_from_bundle(b: &SuperfieldValueBundle) -> G {
    let k = b.phi.generators();
    let th1 = GrassmannNumber::generator(k, THETA1);
    let th2 = GrassmannNumber::generator(k, THETA2);
    let th12 = &th1 * &th2;
    &(&(&th12 * &b.xt) - &(&th2 * &b.t_th1)) + &(&(&th1 * &b.x_th2) - &(&b.th1_th2 + &b.phi.sin()))
}

/// Residual for a field with an odd admixture `Φ = Φ_e + Φ_o`, using
/// `sin Φ = sin Φ_e + cos Φ_e Φ_o`, which is exact because `Φ_o² = 0`.
pub fn ssg_residual_mixed(b: &SuperfieldValueBundle) -> G {
    let k = b.phi.generators();
    let th1 = GrassmannNumber::generator(k, THETA1);
    let th2 = GrassmannNumber::generator(k, THETA2);
    let th12 = &th1 * &th2;
    let (e, o) = (b.phi.even_part(), b.phi.odd_part());
    let sin = &e.sin() + &(&e.cos() * &o);
    &(&(&th12 * &b.xt) - &(&th2 * &b.t_th1)) + &(&(&th1 * &b.x_th2) - &(&b.th1_th2 + &sin))
}

/// Coefficients `(R_1, R_θ1, R_θ2, R_θ1θ2)` of `R = R_1 + θ1 R_θ1 + θ2 R_θ2 + θ1θ2 R_θ1θ2`.
pub fn theta_coefficients(r: &G) -> [G; 4] {
    [
        r.strip(THETA1).strip(THETA2),
        r.extract_left(THETA1).strip(THETA2),
        r.extract_left(THETA2).strip(THETA1),
        r.extract_left(THETA1).extract_left(THETA2),
    ]
}

/// Component residuals `(Δ1, Δ2, Δ3, ΔF)` at the jets' expansion point:
/// `Δ1 = u_xt + sin u - 2φψ sin(u/2)`, `Δ2 = φ_t + ψ cos(u/2)`,
/// `Δ3 = ψ_x - φ cos(u/2)`, `ΔF = F + sin(u/2)`.
pub fn component_residuals(u: &Jet, phi: &Jet, psi: &Jet, f: &Jet) -> Result<[G; 4]> {
    u.require_parity(Parity::Even)?;
    phi.require_parity(Parity::Odd)?;
    psi.require_parity(Parity::Odd)?;
    f.require_parity(Parity::Even)?;
    let uv = u.value();
    let h = uv.scale(0.5);
    let (s, c) = (h.sin(), h.cos());
    let (p, q) = (phi.value(), psi.value());
    let d1 = &(&u.d(&["x", "t"])? + &uv.sin()) - &(&(p * q) * &s).scale(2.0);
    let d2 = &phi.d(&["t"])? + &(q * &c);
    let d3 = &psi.d(&["x"])? - &(p * &c);
    let df = f.value() + &s;
    Ok([d1, d2, d3, df])
}

/// Max deviation between the θ-coefficients of the superfield residual and
/// the signed component residuals
/// `R_1 = -ΔF`, `R_θ1 = Δ3`, `R_θ2 = -Δ2`, `R_θ1θ2 = Δ1/2 - cos(u/2) ΔF`.
pub fn component_equivalence(f: &Superfield, x: &G, t: &G) -> Result<f64> {
    let r = f.ssg_residual(x, t)?;
    let [r1, r2, r3, r4] = theta_coefficients(&r);
    let [u, phi, psi, ff] = f.components(x, t)?;
    let [d1, d2, d3, df] = component_residuals(&u, &phi, &psi, &ff)?;
    let c = u.value().scale(0.5).cos();
    let e4 = &d1.scale(0.5) - &(&c * &df);
    Ok([
        (&r1 + &df).norm_max(),
        (&r2 - &d3).norm_max(),
        (&r3 + &d2).norm_max(),
        (&r4 - &e4).norm_max(),
    ]
    .into_iter()
    .fold(0.0, f64::max))
}

/// Random superfield `Σ (e + θ1 a + θ2 b + θ1θ2 f)_{ij} x^i t^j · cos(x/2 - t/3)`
/// with coefficients on generators `2..k`.
pub fn random_superfield<R: rand::Rng + ?Sized>(
    k: usize,
    degree: usize,
    rng: &mut R,
) -> Result<Superfield> {
    if k < 4 {
        return Err(Error::Usage("random superfields need K >= 4".into()));
    }
    let gens: Vec<usize> = (2..k).collect();
    let mut coeffs = Vec::new();
    for i in 0..=degree {
        for j in 0..=degree - i {
            let mut slot = Vec::with_capacity(4);
            for p in [Parity::Even, Parity::Odd, Parity::Odd, Parity::Even] {
                slot.push(GrassmannNumber::sample_random_with(k, p, 2, &gens, rng)?.scale(0.5));
            }
            coeffs.push((i, j, slot));
        }
    }
    Superfield::from_fn(k, move |x, t, th1, th2| {
        let th12 = th1 * th2;
        let mut acc = x.lift(GrassmannNumber::zero(k));
        for (i, j, slot) in &coeffs {
            let [e, a, b, f] = &slot[..] else {
                unreachable!()
            };
            let c = &(&e.clone() + &(th1 * a)) + &(&(th2 * b) + &(&th12 * f));
            let mut mono = x.lift_scalar(1.0);
            for _ in 0..*i {
                mono = &mono * x;
            }
            for _ in 0..*j {
                mono = &mono * t;
            }
            acc = &acc + &mono.left_mul(&c);
        }
        let w = (&x.scale(0.5) - &t.scale(1.0 / 3.0)).cos();
        Ok(&acc * &w)
    })
}

/// Deviations of the covariant-derivative and supersymmetry identities:
/// `D² = ∂`, `{Q, Q} = -2∂`, and the vanishing anticommutators.
pub fn operator_identities(f: &Superfield, x: f64, t: f64) -> Result<Vec<(&'static str, f64)>> {
    use Direction::{T, X};
    let j = f.at(x, t, 3)?;
    let d = |j: &Jet, dir| apply_d(j, dir);
    let q = |j: &Jet, dir| apply_q(j, dir);
    type Op<'a> = &'a dyn Fn(&Jet, Direction) -> Result<Jet>;
    let anti = |a: Op, da: Direction, b: Op, db: Direction| -> Result<Jet> {
        Ok(&a(&b(&j, db)?, da)? + &b(&a(&j, da)?, db)?)
    };
    let px = j.partial("x")?.truncate(1);
    let pt = j.partial("t")?.truncate(1);
    let zero = px.scale(0.0);
    let checks: Vec<(&'static str, Jet, Jet)> = vec![
        ("D_x^2 = d_x", d(&d(&j, X)?, X)?, px.clone()),
        ("D_t^2 = d_t", d(&d(&j, T)?, T)?, pt.clone()),
        ("{D_x, D_t} = 0", anti(&d, X, &d, T)?, zero.clone()),
        ("{D_x, Q_x} = 0", anti(&d, X, &q, X)?, zero.clone()),
        ("{D_x, Q_t} = 0", anti(&d, X, &q, T)?, zero.clone()),
        ("{D_t, Q_x} = 0", anti(&d, T, &q, X)?, zero.clone()),
        ("{D_t, Q_t} = 0", anti(&d, T, &q, T)?, zero.clone()),
        ("{Q_x, Q_x} = -2 d_x", anti(&q, X, &q, X)?, px.scale(-2.0)),
        ("{Q_t, Q_t} = -2 d_t", anti(&q, T, &q, T)?, pt.scale(-2.0)),
        ("{Q_x, Q_t} = 0", anti(&q, X, &q, T)?, zero),
    ];
    Ok(checks
        .into_iter()
        .map(|(n, a, b)| (n, a.max_abs_diff(&b)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_table() {
        let k = 4;
        let fgen = GrassmannNumber::<f64>::monomial(k, &[2, 3], 1.0);
        let f = fgen.clone();
        let sf = Superfield::from_fn(k, move |x, _, a, b| Ok(x.lift(&(a * b) * &f))).unwrap();
        let b = sf
            .evaluate_bundle(&G::scalar(k, 0.3), &G::scalar(k, 0.4))
            .unwrap();
        let th1 = sf.theta1();
        let th2 = sf.theta2();
        assert_eq!(b.th1, &th2 * &fgen);
        assert_eq!(b.th2, -(&th1 * &fgen));
        assert_eq!(b.th1_th2, fgen);
        assert_eq!(b.th2_th1(), -fgen);
    }
}

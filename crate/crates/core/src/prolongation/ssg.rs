//! Superspace instance: independents `(x, t, θ1, θ2)`, one even dependent `Φ`.

use std::sync::Arc;

use rand::Rng;

use super::jetspace::{JetPoint, Partials, ProblemSignature};
use super::{
    coeff, const_coeff, field_partials, prolong, zero_coeff, ProlongedCoefficients, VectorFieldSpec,
};
use crate::error::Result;
use crate::grassmann::{GrassmannNumber, Parity};

type G = GrassmannNumber<f64>;

pub const X: usize = 0;
pub const T: usize = 1;
pub const TH1: usize = 2;
pub const TH2: usize = 3;
/// Base index of `Φ`.
pub const PHI: usize = 4;

pub fn signature() -> Arc<ProblemSignature> {
    ProblemSignature::new(
        vec![
            ("x", Parity::Even),
            ("t", Parity::Even),
            ("theta1", Parity::Odd),
            ("theta2", Parity::Odd),
        ],
        vec![("Phi", Parity::Even)],
    )
    .expect("static signature")
}

/// Generator layout for sampled superspace points.
#[derive(Debug, Clone)]
pub struct Layout {
    pub k: usize,
    /// Seed generators for `θ1`, `θ2`.
    pub seeds: [usize; 2],
    /// Generators available to odd field parameters.
    pub params: Vec<usize>,
    /// Generators used for random point values.
    pub random: Vec<usize>,
    pub max_degree: usize,
}

impl Layout {
    /// Seeds on `ξ_0, ξ_1`, `params` parameter slots next, the rest random.
    pub fn new(k: usize, params: usize) -> Self {
        Self {
            k,
            seeds: [0, 1],
            params: (2..2 + params).collect(),
            random: (2 + params..k).collect(),
            max_degree: 3,
        }
    }

    pub fn param(&self, i: usize) -> G {
        G::generator(self.k, self.params[i])
    }

    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<JetPoint> {
        JetPoint::random(
            &signature(),
            self.k,
            &self.seeds,
            &self.random,
            self.max_degree,
            rng,
        )
    }
}

impl Default for Layout {
    fn default() -> Self {
        Self::new(10, 1)
    }
}

/// `ξ = -2C1 x + C2 - D1 θ1`, `τ = 2C1 t + C3 - D2 θ2`, `ρ = -C1 θ1 + D1`,
/// `σ = C1 θ2 + D2`, `Π = 0`; `C_i` even, `D_i` odd.
pub fn general_symmetry(k: usize, c1: G, c2: G, c3: G, d1: G, d2: G) -> VectorFieldSpec {
    let xi = {
        let (c1, c2, d1) = (c1.clone(), c2.clone(), d1.clone());
        coeff(move |a| {
            Ok(&(&a[X].left_mul(&c1.scale(-2.0)) - &a[TH1].left_mul(&d1)) + &a[X].lift(c2.clone()))
        })
    };
    let tau = {
        let (c1, c3, d2) = (c1.clone(), c3.clone(), d2.clone());
        coeff(move |a| {
            Ok(&(&a[T].left_mul(&c1.scale(2.0)) - &a[TH2].left_mul(&d2)) + &a[X].lift(c3.clone()))
        })
    };
    let rho = {
        let (c1, d1) = (c1.clone(), d1.clone());
        coeff(move |a| Ok(&a[TH1].left_mul(&-&c1) + &a[X].lift(d1.clone())))
    };
    let sigma = {
        let (c1, d2) = (c1.clone(), d2.clone());
        coeff(move |a| Ok(&a[TH2].left_mul(&c1) + &a[X].lift(d2.clone())))
    };
    VectorFieldSpec::new("S", vec![xi, tau, rho, sigma], vec![zero_coeff(k)])
}

fn named(mut v: VectorFieldSpec, name: &str) -> VectorFieldSpec {
    v.name = name.to_string();
    v
}

pub fn l(k: usize) -> VectorFieldSpec {
    let z = G::zero(k);
    named(
        general_symmetry(k, G::one(k), z.clone(), z.clone(), z.clone(), z),
        "L",
    )
}

pub fn p_x(k: usize) -> VectorFieldSpec {
    let z = G::zero(k);
    named(
        general_symmetry(k, z.clone(), G::one(k), z.clone(), z.clone(), z),
        "P_x",
    )
}

pub fn p_t(k: usize) -> VectorFieldSpec {
    let z = G::zero(k);
    named(
        general_symmetry(k, z.clone(), z.clone(), G::one(k), z.clone(), z),
        "P_t",
    )
}

/// `μ Q_x` for an odd constant `μ`.
pub fn q_x(mu: G) -> VectorFieldSpec {
    let k = mu.generators();
    let z = G::zero(k);
    named(
        general_symmetry(k, z.clone(), z.clone(), z.clone(), mu, z),
        "mu*Q_x",
    )
}

/// `ν Q_t` for an odd constant `ν`.
pub fn q_t(nu: G) -> VectorFieldSpec {
    let k = nu.generators();
    let z = G::zero(k);
    named(
        general_symmetry(k, z.clone(), z.clone(), z.clone(), z, nu),
        "nu*Q_t",
    )
}

/// `∂_Φ`, not a symmetry.
pub fn d_phi(k: usize) -> VectorFieldSpec {
    VectorFieldSpec::new(
        "d_Phi",
        (0..4).map(|_| zero_coeff(k)).collect(),
        vec![const_coeff(G::one(k))],
    )
}

/// `Φ ∂_Φ`.
pub fn phi_scaling(k: usize) -> VectorFieldSpec {
    VectorFieldSpec::new(
        "Phi*d_Phi",
        (0..4).map(|_| zero_coeff(k)).collect(),
        vec![coeff(|a| Ok(a[PHI].clone()))],
    )
}

/// The eight coefficients entering the criterion, in the order
/// `x, t, θ1, θ2, xt, tθ1, xθ2, θ1θ2`.
pub const CRITERION_KEYS: [&[usize]; 8] = [
    &[X],
    &[T],
    &[TH1],
    &[TH2],
    &[X, T],
    &[T, TH1],
    &[X, TH2],
    &[TH1, TH2],
];

struct Coords {
    x: G,
    t: G,
    f1: G,
    f2: G,
    xx: G,
    xt: G,
    tt: G,
    x1: G,
    x2: G,
    t1: G,
    t2: G,
    f12: G,
}

fn coords(p: &JetPoint) -> Result<Coords> {
    let c = |j: &[usize]| p.coord(0, j);
    Ok(Coords {
        x: c(&[X])?,
        t: c(&[T])?,
        f1: c(&[TH1])?,
        f2: c(&[TH2])?,
        xx: c(&[X, X])?,
        xt: c(&[X, T])?,
        tt: c(&[T, T])?,
        x1: c(&[X, TH1])?,
        x2: c(&[X, TH2])?,
        t1: c(&[T, TH1])?,
        t2: c(&[T, TH2])?,
        f12: c(&[TH1, TH2])?,
    })
}

/// Signed sum of ordered products.
fn poly(k: usize, terms: &[(f64, Vec<&G>)]) -> G {
    let mut acc = G::zero(k);
    for (s, fs) in terms {
        let mut p = G::scalar(k, *s);
        for f in fs {
            p = &p * *f;
        }
        acc += &p;
    }
    acc
}

/// Closed-form expanded coefficients, transcribed term by term.
pub fn prolong_expanded(v: &VectorFieldSpec, p: &JetPoint) -> Result<ProlongedCoefficients> {
    let k = p.generators();
    let fp = field_partials(v, p)?;
    let (xi, ta, rh, si, pi): (&Partials, &Partials, &Partials, &Partials, &Partials) = (
        &fp.zeta[0],
        &fp.zeta[1],
        &fp.zeta[2],
        &fp.zeta[3],
        &fp.phi[0],
    );
    let c = coords(p)?;
    let (fx, ft, f1, f2) = (&c.x, &c.t, &c.f1, &c.f2);
    let (fxx, fxt, ftt) = (&c.xx, &c.xt, &c.tt);
    let (fx1, fx2, ft1, ft2, f12) = (&c.x1, &c.x2, &c.t1, &c.t2, &c.f12);
    let (x, t, a, b, f) = (X, T, TH1, TH2, PHI);

    let pi_x = poly(
        k,
        &[
            (1.0, vec![pi.d(x)]),
            (1.0, vec![pi.d(f), fx]),
            (-1.0, vec![xi.d(x), fx]),
            (-1.0, vec![xi.d(f), fx, fx]),
            (-1.0, vec![ta.d(x), ft]),
            (-1.0, vec![ta.d(f), fx, ft]),
            (-1.0, vec![rh.d(x), f1]),
            (-1.0, vec![rh.d(f), fx, f1]),
            (-1.0, vec![si.d(x), f2]),
            (-1.0, vec![si.d(f), fx, f2]),
        ],
    );

    let pi_t = poly(
        k,
        &[
            (1.0, vec![pi.d(t)]),
            (1.0, vec![pi.d(f), ft]),
            (-1.0, vec![xi.d(t), fx]),
            (-1.0, vec![xi.d(f), fx, ft]),
            (-1.0, vec![ta.d(t), ft]),
            (-1.0, vec![ta.d(f), ft, ft]),
            (-1.0, vec![rh.d(t), f1]),
            (-1.0, vec![rh.d(f), ft, f1]),
            (-1.0, vec![si.d(t), f2]),
            (-1.0, vec![si.d(f), ft, f2]),
        ],
    );

    let pi_1 = poly(
        k,
        &[
            (1.0, vec![pi.d(a)]),
            (1.0, vec![pi.d(f), f1]),
            (-1.0, vec![xi.d(a), fx]),
            (-1.0, vec![xi.d(f), fx, f1]),
            (-1.0, vec![ta.d(a), ft]),
            (-1.0, vec![ta.d(f), ft, f1]),
            (-1.0, vec![rh.d(a), f1]),
            (-1.0, vec![si.d(a), f2]),
            (1.0, vec![si.d(f), f1, f2]),
        ],
    );

    let pi_2 = poly(
        k,
        &[
            (1.0, vec![pi.d(b)]),
            (1.0, vec![pi.d(f), f2]),
            (-1.0, vec![xi.d(b), fx]),
            (-1.0, vec![xi.d(f), fx, f2]),
            (-1.0, vec![ta.d(b), ft]),
            (-1.0, vec![ta.d(f), ft, f2]),
            (-1.0, vec![rh.d(b), f1]),
            (-1.0, vec![rh.d(f), f1, f2]),
            (-1.0, vec![si.d(b), f2]),
        ],
    );

    let pi_xt = poly(
        k,
        &[
            (1.0, vec![pi.dd(x, t)]),
            (1.0, vec![pi.dd(x, f), ft]),
            (1.0, vec![pi.dd(t, f), fx]),
            (1.0, vec![pi.dd(f, f), fx, ft]),
            (1.0, vec![pi.d(f), fxt]),
            (-1.0, vec![xi.dd(x, t), fx]),
            (-1.0, vec![xi.dd(x, f), fx, ft]),
            (-1.0, vec![xi.d(x), fxt]),
            (-1.0, vec![xi.dd(t, f), fx, fx]),
            (-1.0, vec![xi.dd(f, f), fx, fx, ft]),
            (-2.0, vec![xi.d(f), fx, fxt]),
            (-1.0, vec![xi.d(t), fxx]),
            (-1.0, vec![xi.d(f), ft, fxx]),
            (-1.0, vec![ta.dd(x, t), ft]),
            (-1.0, vec![ta.dd(t, f), fx, ft]),
            (-1.0, vec![ta.d(t), fxt]),
            (-1.0, vec![ta.dd(x, f), ft, ft]),
            (-1.0, vec![ta.dd(f, f), ft, ft, fx]),
            (-2.0, vec![ta.d(f), ft, fxt]),
            (-1.0, vec![ta.d(x), ftt]),
            (-1.0, vec![ta.d(f), fx, ftt]),
            (-1.0, vec![rh.dd(x, t), f1]),
            (-1.0, vec![rh.dd(x, f), ft, f1]),
            (-1.0, vec![rh.dd(t, f), fx, f1]),
            (-1.0, vec![rh.d(x), ft1]),
            (-1.0, vec![rh.d(t), fx1]),
            (-1.0, vec![rh.dd(f, f), fx, ft, f1]),
            (-1.0, vec![rh.d(f), fxt, f1]),
            (-1.0, vec![rh.d(f), ft1, fx]),
            (-1.0, vec![rh.d(f), fx1, ft]),
            (-1.0, vec![si.dd(x, t), f2]),
            (-1.0, vec![si.dd(x, f), ft, f2]),
            (-1.0, vec![si.dd(t, f), fx, f2]),
            (-1.0, vec![si.d(x), ft2]),
            (-1.0, vec![si.d(t), fx2]),
            (-1.0, vec![si.dd(f, f), fx, ft, f2]),
            (-1.0, vec![si.d(f), fxt, f2]),
            (-1.0, vec![si.d(f), ft2, fx]),
            (-1.0, vec![si.d(f), fx2, ft]),
        ],
    );

    let pi_t1 = poly(
        k,
        &[
            (1.0, vec![pi.dd(t, a)]),
            (1.0, vec![pi.dd(t, f), f1]),
            (1.0, vec![pi.dd(a, f), ft]),
            (1.0, vec![pi.dd(f, f), ft, f1]),
            (1.0, vec![pi.d(f), ft1]),
            (-1.0, vec![xi.dd(t, a), fx]),
            (-1.0, vec![xi.dd(t, f), fx, f1]),
            (-1.0, vec![xi.d(t), fx1]),
            (-1.0, vec![xi.dd(a, f), fx, ft]),
            (-1.0, vec![xi.dd(f, f), fx, ft, f1]),
            (-1.0, vec![xi.d(f), ft, fx1]),
            (-1.0, vec![xi.d(f), fx, ft1]),
            (-1.0, vec![xi.d(a), fxt]),
            (-1.0, vec![xi.d(f), fxt, f1]),
            (-1.0, vec![ta.dd(t, a), ft]),
            (-1.0, vec![ta.dd(t, f), ft, f1]),
            (-1.0, vec![ta.d(t), ft1]),
            (-1.0, vec![ta.dd(a, f), ft, ft]),
            (-1.0, vec![ta.dd(f, f), ft, ft, f1]),
            (-2.0, vec![ta.d(f), ft, ft1]),
            (-1.0, vec![ta.d(a), ftt]),
            (-1.0, vec![ta.d(f), ftt, f1]),
            (-1.0, vec![rh.dd(t, a), f1]),
            (-1.0, vec![rh.dd(a, f), ft, f1]),
            (-1.0, vec![rh.d(a), ft1]),
            (-1.0, vec![si.dd(t, a), f2]),
            (1.0, vec![si.dd(t, f), f1, f2]),
            (-1.0, vec![si.d(t), f12]),
            (-1.0, vec![si.dd(a, f), ft, f2]),
            (1.0, vec![si.dd(f, f), ft, f1, f2]),
            (1.0, vec![si.d(f), ft1, f2]),
            (-1.0, vec![si.d(f), ft, f12]),
            (-1.0, vec![si.d(a), ft2]),
            (1.0, vec![si.d(f), f1, ft2]),
        ],
    );

    let pi_x2 = poly(
        k,
        &[
            (1.0, vec![pi.dd(x, b)]),
            (1.0, vec![pi.dd(x, f), f2]),
            (1.0, vec![pi.dd(b, f), fx]),
            (1.0, vec![pi.dd(f, f), fx, f2]),
            (1.0, vec![pi.d(f), fx2]),
            (-1.0, vec![xi.dd(x, b), fx]),
            (-1.0, vec![xi.dd(x, f), fx, f2]),
            (-1.0, vec![xi.d(x), fx2]),
            (-1.0, vec![xi.dd(b, f), fx, fx]),
            (-1.0, vec![xi.dd(f, f), fx, fx, f2]),
            (-2.0, vec![xi.d(f), fx, fx2]),
            (-1.0, vec![xi.d(b), fxx]),
            (-1.0, vec![xi.d(f), fxx, f2]),
            (-1.0, vec![ta.dd(x, b), ft]),
            (-1.0, vec![ta.dd(x, f), ft, f2]),
            (-1.0, vec![ta.d(x), ft2]),
            (-1.0, vec![ta.dd(b, f), fx, ft]),
            (-1.0, vec![ta.dd(f, f), fx, ft, f2]),
            (-1.0, vec![ta.d(f), fx, ft2]),
            (-1.0, vec![ta.d(f), ft, fx2]),
            (-1.0, vec![ta.d(b), fxt]),
            (-1.0, vec![ta.d(f), fxt, f2]),
            (-1.0, vec![rh.dd(x, b), f1]),
            (1.0, vec![rh.dd(x, f), f2, f1]),
            (1.0, vec![rh.d(x), f12]),
            (-1.0, vec![rh.dd(b, f), fx, f1]),
            (1.0, vec![rh.dd(f, f), fx, f2, f1]),
            (1.0, vec![rh.d(f), fx2, f1]),
            (1.0, vec![rh.d(f), fx, f12]),
            (-1.0, vec![rh.d(b), fx1]),
            (1.0, vec![rh.d(f), f2, fx1]),
            (-1.0, vec![si.dd(x, b), f2]),
            (-1.0, vec![si.dd(b, f), fx, f2]),
            (-1.0, vec![si.d(b), fx2]),
        ],
    );

    let pi_12 = poly(
        k,
        &[
            (1.0, vec![pi.dd(a, b)]),
            (-1.0, vec![pi.dd(a, f), f2]),
            (1.0, vec![pi.dd(b, f), f1]),
            (-1.0, vec![pi.dd(f, f), f1, f2]),
            (1.0, vec![pi.d(f), f12]),
            (-1.0, vec![xi.dd(a, b), fx]),
            (1.0, vec![xi.dd(a, f), fx, f2]),
            (1.0, vec![xi.d(a), fx2]),
            (-1.0, vec![xi.dd(b, f), fx, f1]),
            (1.0, vec![xi.dd(f, f), fx, f1, f2]),
            (1.0, vec![xi.d(f), f1, fx2]),
            (-1.0, vec![xi.d(f), fx, f12]),
            (-1.0, vec![xi.d(b), fx1]),
            (-1.0, vec![xi.d(f), f2, fx1]),
            (-1.0, vec![ta.dd(a, b), ft]),
            (1.0, vec![ta.dd(a, f), ft, f2]),
            (1.0, vec![ta.d(a), ft2]),
            (-1.0, vec![ta.dd(b, f), ft, f1]),
            (1.0, vec![ta.dd(f, f), ft, f1, f2]),
            (1.0, vec![ta.d(f), f1, ft2]),
            (-1.0, vec![ta.d(f), ft, f12]),
            (-1.0, vec![ta.d(b), ft1]),
            (-1.0, vec![ta.d(f), f2, ft1]),
            (-1.0, vec![rh.dd(a, b), f1]),
            (1.0, vec![rh.dd(a, f), f1, f2]),
            (-1.0, vec![rh.d(a), f12]),
            (-1.0, vec![si.dd(a, b), f2]),
            (1.0, vec![si.dd(b, f), f1, f2]),
            (-1.0, vec![si.d(b), f12]),
        ],
    );

    let mut out = ProlongedCoefficients::default();
    for (key, val) in CRITERION_KEYS
        .iter()
        .zip([pi_x, pi_t, pi_1, pi_2, pi_xt, pi_t1, pi_x2, pi_12])
    {
        out.entries.insert((0, key.to_vec()), val);
    }
    Ok(out)
}

/// Replaces `Φ_θ1θ2` by `θ1θ2 Φ_xt - θ2 Φ_tθ1 + θ1 Φ_xθ2 - sin Φ`.
pub fn onshell_substitute(p: &JetPoint) -> Result<JetPoint> {
    let th1 = p.ind(TH1);
    let th2 = p.ind(TH2);
    let phi = p.dep(0);
    let v = &(&(&(th1 * th2) * &p.coord(0, &[X, T])?) - &(th2 * &p.coord(0, &[T, TH1])?))
        + &(&(th1 * &p.coord(0, &[X, TH2])?) - &phi.sin());
    let mut q = p.clone();
    q.set_coord(0, &[TH1, TH2], v)?;
    Ok(q)
}

/// Superfield residual of the jet point itself.
pub fn equation_residual(p: &JetPoint) -> Result<G> {
    let th1 = p.ind(TH1);
    let th2 = p.ind(TH2);
    Ok(
        &(&(&(&(th1 * th2) * &p.coord(0, &[X, T])?) - &(th2 * &p.coord(0, &[T, TH1])?))
            + &(th1 * &p.coord(0, &[X, TH2])?))
            - &(&p.coord(0, &[TH1, TH2])? + &p.dep(0).sin()),
    )
}

/// The criterion with given prolonged coefficients, at `p` as is.
pub fn criterion(v: &VectorFieldSpec, p: &JetPoint, pc: &ProlongedCoefficients) -> Result<G> {
    let fp = field_partials(v, p)?;
    let rho = &fp.zeta[2].value;
    let sigma = &fp.zeta[3].value;
    let pi = &fp.phi[0].value;
    let th1 = p.ind(TH1);
    let th2 = p.ind(TH2);
    let fxt = p.coord(0, &[X, T])?;
    let r1 = rho * &(&(th2 * &fxt) + &p.coord(0, &[X, TH2])?);
    let r2 = sigma * &(&(th1 * &fxt) + &p.coord(0, &[T, TH1])?);
    let r3 = pi * &p.dep(0).cos();
    let r4 = pc.get(0, &[X, T])? * &(th1 * th2);
    let r5 = pc.get(0, &[T, TH1])? * th2;
    let r6 = pc.get(0, &[X, TH2])? * th1;
    let r7 = pc.get(0, &[TH1, TH2])?;
    Ok(&(&(&(&r1 - &r2) - &r3) + &(&r4 + &r5)) - &(&r6 + r7))
}

/// Criterion evaluated at the on-shell version of `p` with recursive prolongation.
pub fn symmetry_residual(v: &VectorFieldSpec, p: &JetPoint) -> Result<G> {
    let q = onshell_substitute(p)?;
    let pc = prolong(v, &q)?;
    criterion(v, &q, &pc)
}

/// Translates the sampled point in `x` and `t`.
pub fn shift_point(p: &JetPoint, dx: f64, dt: f64) -> Result<JetPoint> {
    let mut q = p.clone();
    q.set_base(X, p.ind(X) + dx)?;
    q.set_base(T, p.ind(T) + dt)?;
    Ok(q)
}

//! Component system: independents `(x, t)`, dependents `u` (even), `φ`, `ψ` (odd).

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
/// Base indices of the dependents.
pub const U: usize = 2;
pub const PHI: usize = 3;
pub const PSI: usize = 4;

pub fn signature() -> Arc<ProblemSignature> {
    ProblemSignature::new(
        vec![("x", Parity::Even), ("t", Parity::Even)],
        vec![
            ("u", Parity::Even),
            ("phi", Parity::Odd),
            ("psi", Parity::Odd),
        ],
    )
    .expect("static signature")
}

#[derive(Debug, Clone)]
pub struct Layout {
    pub k: usize,
    pub seeds: [usize; 2],
    pub random: Vec<usize>,
    pub max_degree: usize,
}

impl Layout {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            seeds: [0, 1],
            random: (2..k).collect(),
            max_degree: 3,
        }
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
        Self::new(10)
    }
}

pub fn p_x(k: usize) -> VectorFieldSpec {
    VectorFieldSpec::new(
        "P_x",
        vec![const_coeff(G::one(k)), zero_coeff(k)],
        vec![zero_coeff(k), zero_coeff(k), zero_coeff(k)],
    )
}

pub fn p_t(k: usize) -> VectorFieldSpec {
    VectorFieldSpec::new(
        "P_t",
        vec![zero_coeff(k), const_coeff(G::one(k))],
        vec![zero_coeff(k), zero_coeff(k), zero_coeff(k)],
    )
}

/// `2x ∂_x - 2t ∂_t - φ ∂_φ + ψ ∂_ψ`.
pub fn dilation(k: usize) -> VectorFieldSpec {
    VectorFieldSpec::new(
        "D",
        vec![
            coeff(|a| Ok(a[X].scale(2.0))),
            coeff(|a| Ok(a[T].scale(-2.0))),
        ],
        vec![
            zero_coeff(k),
            coeff(|a| Ok(-&a[PHI])),
            coeff(|a| Ok(a[PSI].clone())),
        ],
    )
}

/// `∂_u`, not a symmetry.
pub fn d_u(k: usize) -> VectorFieldSpec {
    VectorFieldSpec::new(
        "d_u",
        vec![zero_coeff(k), zero_coeff(k)],
        vec![const_coeff(G::one(k)), zero_coeff(k), zero_coeff(k)],
    )
}

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

/// Expanded `Σ^t` and `Ψ^x`, keyed as `(1, [t])` and `(2, [x])`.
pub fn prolong_expanded(v: &VectorFieldSpec, p: &JetPoint) -> Result<ProlongedCoefficients> {
    let k = p.generators();
    let fp = field_partials(v, p)?;
    let (xi, ta, sg, ps): (&Partials, &Partials, &Partials, &Partials) =
        (&fp.zeta[0], &fp.zeta[1], &fp.phi[1], &fp.phi[2]);
    let (ux, ut) = (p.coord(0, &[X])?, p.coord(0, &[T])?);
    let (fx, ft) = (p.coord(1, &[X])?, p.coord(1, &[T])?);
    let (sx, st) = (p.coord(2, &[X])?, p.coord(2, &[T])?);
    let sigma_t = poly(
        k,
        &[
            (1.0, vec![sg.d(T)]),
            (1.0, vec![sg.d(U), &ut]),
            (1.0, vec![sg.d(PHI), &ft]),
            (1.0, vec![sg.d(PSI), &st]),
            (-1.0, vec![xi.d(T), &fx]),
            (-1.0, vec![xi.d(U), &ut, &fx]),
            (-1.0, vec![xi.d(PHI), &fx, &ft]),
            (-1.0, vec![xi.d(PSI), &fx, &st]),
            (-1.0, vec![ta.d(T), &ft]),
            (-1.0, vec![ta.d(U), &ut, &ft]),
            (-1.0, vec![ta.d(PSI), &ft, &st]),
        ],
    );
    let psi_x = poly(
        k,
        &[
            (1.0, vec![ps.d(X)]),
            (1.0, vec![ps.d(U), &ux]),
            (1.0, vec![ps.d(PHI), &fx]),
            (1.0, vec![ps.d(PSI), &sx]),
            (-1.0, vec![xi.d(X), &sx]),
            (-1.0, vec![xi.d(U), &ux, &sx]),
            (1.0, vec![xi.d(PHI), &fx, &sx]),
            (-1.0, vec![ta.d(X), &st]),
            (-1.0, vec![ta.d(U), &ux, &st]),
            (1.0, vec![ta.d(PHI), &fx, &st]),
            (1.0, vec![ta.d(PSI), &sx, &st]),
        ],
    );
    let mut out = ProlongedCoefficients::default();
    out.entries.insert((1, vec![T]), sigma_t);
    out.entries.insert((2, vec![X]), psi_x);
    Ok(out)
}

/// Substitutes the component equations and their needed derivatives.
pub fn onshell_substitute(p: &JetPoint) -> Result<JetPoint> {
    let u = p.dep(0);
    let phi = p.dep(1);
    let psi = p.dep(2);
    let c = (u * 0.5).cos();
    let s = (u * 0.5).sin();
    let ux = p.coord(0, &[X])?;
    let ut = p.coord(0, &[T])?;
    let fx = p.coord(1, &[X])?;
    let st = p.coord(2, &[T])?;
    let mut q = p.clone();
    let uxt = &-&u.sin() + &(&(phi * psi) * &s).scale(2.0);
    let ft = -&(psi * &c);
    let sx = phi * &c;
    let fxt = &-&(&sx * &c) + &(&(psi * &s) * &ux).scale(0.5);
    let ftt = &-&(&st * &c) + &(&(psi * &s) * &ut).scale(0.5);
    let sxx = &(&fx * &c) - &(&(phi * &s) * &ux).scale(0.5);
    let sxt = &(&ft * &c) - &(&(phi * &s) * &ut).scale(0.5);
    q.set_coord(0, &[X, T], uxt)?;
    q.set_coord(1, &[T], ft)?;
    q.set_coord(2, &[X], sx)?;
    q.set_coord(1, &[X, T], fxt)?;
    q.set_coord(1, &[T, T], ftt)?;
    q.set_coord(2, &[X, X], sxx)?;
    q.set_coord(2, &[X, T], sxt)?;
    Ok(q)
}

/// The three criterion residuals with given prolonged coefficients.
pub fn criterion(v: &VectorFieldSpec, p: &JetPoint, pc: &ProlongedCoefficients) -> Result<[G; 3]> {
    let fp = field_partials(v, p)?;
    let cu = &fp.phi[0].value;
    let cs = &fp.phi[1].value;
    let cp = &fp.phi[2].value;
    let u = p.dep(0);
    let phi = p.dep(1);
    let psi = p.dep(2);
    let c = (u * 0.5).cos();
    let s = (u * 0.5).sin();
    let i1 = &(&(cu * &(&-&u.cos() + &(&c * &(phi * psi)))) + &(cs * &(&s * psi).scale(2.0)))
        + &(cp * &(&s * phi).scale(-2.0));
    let i2 = &(cu * &(&s * psi).scale(0.5)) - &(cp * &c);
    let i3 = &(cu * &(&s * phi).scale(-0.5)) + &(cs * &c);
    Ok([
        pc.get(0, &[X, T])? - &i1,
        pc.get(1, &[T])? - &i2,
        pc.get(2, &[X])? - &i3,
    ])
}

/// Criterion at the on-shell version of `p` with recursive prolongation.
pub fn symmetry_residual(v: &VectorFieldSpec, p: &JetPoint) -> Result<[G; 3]> {
    let q = onshell_substitute(p)?;
    let pc = prolong(v, &q)?;
    criterion(v, &q, &pc)
}

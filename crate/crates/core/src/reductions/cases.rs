//! Reducible one-dimensional superspace subalgebras.
//!
//! Each case fixes a symmetry variable `σ` and two odd invariants
//! `(τ_a, τ_b)` and uses the ansatz
//! `Φ = α(σ) + τ_a a(σ) + τ_b b(σ) + τ_a τ_b β(σ)`. The superfield residual
//! of the ansatz recombines from the four reduced equations as
//! `R = s_1 E_1 + s_2 τ_a E_2 + s_3 τ_b E_3 + s_4 τ_a τ_b E_4`.

use serde::Serialize;

use super::profile::AnsatzProfiles;
use crate::error::{Error, Result};
use crate::grassmann::GrassmannNumber;
use crate::superalgebra::{find_subalgebra, AlgebraElement, TemplateParams, QT, QX};
use crate::superfield::{Superfield, THETA1, THETA2};
use crate::superjet::{JetSpec, SuperJet};

type G = GrassmannNumber<f64>;
type Jet = SuperJet<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseId {
    S1,
    S2,
    S3,
    S4,
    S6,
    S7,
    S8,
    S10,
    S11,
    S12,
}

impl CaseId {
    pub const ALL: [CaseId; 10] = [
        CaseId::S1,
        CaseId::S2,
        CaseId::S3,
        CaseId::S4,
        CaseId::S6,
        CaseId::S7,
        CaseId::S8,
        CaseId::S10,
        CaseId::S11,
        CaseId::S12,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseId::S1 => "S1",
            CaseId::S2 => "S2",
            CaseId::S3 => "S3",
            CaseId::S4 => "S4",
            CaseId::S6 => "S6",
            CaseId::S7 => "S7",
            CaseId::S8 => "S8",
            CaseId::S10 => "S10",
            CaseId::S11 => "S11",
            CaseId::S12 => "S12",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownVariable(s.to_string()))
    }

    /// Signs `(s_1, .., s_4)` of the recombination.
    pub fn recombination_signs(self) -> [f64; 4] {
        match self {
            CaseId::S1 => [-1.0, 1.0, -1.0, 1.0],
            CaseId::S2 => [-1.0, -1.0, -1.0, -1.0],
            CaseId::S3 | CaseId::S6 => [-1.0, 1.0, -1.0, -1.0],
            CaseId::S4 | CaseId::S7 | CaseId::S8 => [-1.0, 1.0, 1.0, -1.0],
            CaseId::S10 | CaseId::S12 => [1.0, -1.0, -1.0, 1.0],
            CaseId::S11 => [1.0, -1.0, 1.0, 1.0],
        }
    }

    pub fn uses_eps(self) -> bool {
        matches!(self, CaseId::S4 | CaseId::S8 | CaseId::S12)
    }

    /// Whether the odd parameter is `μ` (`Q_x`) or `ν` (`Q_t`), if any.
    pub fn odd_parameter(self) -> Option<&'static str> {
        match self {
            CaseId::S6 | CaseId::S7 | CaseId::S8 => Some("mu"),
            CaseId::S10 | CaseId::S11 | CaseId::S12 => Some("nu"),
            _ => None,
        }
    }
}

/// A reduction case with its parameters.
#[derive(Debug, Clone)]
pub struct ReductionCase {
    pub id: CaseId,
    pub eps: f64,
    /// `μ` for S6-S8, `ν` for S10-S12, ignored otherwise.
    pub param: G,
}

struct Invariants {
    sigma: Jet,
    ta: Jet,
    tb: Jet,
}

impl ReductionCase {
    pub fn new(id: CaseId, eps: f64, param: G) -> Result<Self> {
        if id.uses_eps() && eps.abs() != 1.0 {
            return Err(Error::Domain(format!("eps must be ±1, got {eps}")));
        }
        param.require_parity(crate::grassmann::Parity::Odd)?;
        Ok(Self { id, eps, param })
    }

    /// A case with no odd parameter (`param = 0`).
    pub fn plain(id: CaseId, eps: f64, k: usize) -> Result<Self> {
        Self::new(id, eps, G::zero(k))
    }

    pub fn generators(&self) -> usize {
        self.param.generators()
    }

    /// The generating element of the subalgebra.
    pub fn generator(&self) -> Result<AlgebraElement> {
        let k = self.generators();
        let prm = TemplateParams {
            eps: self.eps,
            mu: self.param.clone(),
            nu: self.param.clone(),
        };
        let el = find_subalgebra(self.id.name())?.instantiate(&prm)?;
        let mut c = el.c.clone();
        match self.id.odd_parameter() {
            Some("mu") => c[QT] = G::zero(k),
            Some("nu") => c[QX] = G::zero(k),
            _ => {}
        }
        AlgebraElement::new(c)
    }

    fn invariants(&self, x: &Jet, t: &Jet, th1: &G, th2: &G) -> Result<Invariants> {
        let (e, p) = (self.eps, &self.param);
        let th = |g: &G| x.lift(g.clone());
        let (sigma, ta, tb) = match self.id {
            CaseId::S1 => {
                if t.value().body() <= 0.0 {
                    return Err(Error::Domain(format!(
                        "S1 ansatz needs t > 0, got {}",
                        t.value().body()
                    )));
                }
                let r = t.sqrt()?;
                (x * t, r.right_mul(th1), r.recip()?.right_mul(th2))
            }
            CaseId::S2 => (t.clone(), th(th1), th(th2)),
            CaseId::S3 => (x.clone(), th(th1), th(th2)),
            CaseId::S4 => (x - &t.scale(e), th(th1), th(th2)),
            CaseId::S6 => (t.clone(), &th(th1) - &x.left_mul(p), th(th2)),
            CaseId::S7 => (
                x + &t.left_mul(&(p * th1)),
                &th(th1) - &t.left_mul(p),
                th(th2),
            ),
            CaseId::S8 => (
                &(&x.scale(e) - t) + &t.left_mul(&(p * th1)),
                &th(th1) - &t.left_mul(p).scale(e),
                th(th2),
            ),
            CaseId::S10 => (
                t + &x.left_mul(&(p * th2)),
                &th(th2) - &x.left_mul(p),
                th(th1),
            ),
            CaseId::S11 => (x.clone(), &th(th2) - &t.left_mul(p), th(th1)),
            CaseId::S12 => (
                &(t - &x.scale(e)) + &x.left_mul(&(p * th2)),
                &th(th2) - &x.left_mul(p),
                th(th1),
            ),
        };
        Ok(Invariants { sigma, ta, tb })
    }

    /// `(σ, τ_a, τ_b)` at a point.
    pub fn invariants_at(&self, x: &G, t: &G) -> Result<[G; 3]> {
        let k = self.generators();
        let spec = JetSpec::new(&["x", "t"], 0)?;
        let xj = Jet::variable(&spec, "x", x.clone())?;
        let tj = Jet::variable(&spec, "t", t.clone())?;
        let inv = self.invariants(&xj, &tj, &G::generator(k, THETA1), &G::generator(k, THETA2))?;
        Ok([
            inv.sigma.value().clone(),
            inv.ta.value().clone(),
            inv.tb.value().clone(),
        ])
    }

    pub fn build_ansatz(&self, p: &AnsatzProfiles) -> Result<Superfield> {
        p.check()?;
        if p.generators() != self.generators() {
            return Err(Error::ContextMismatch {
                left: self.generators(),
                right: p.generators(),
            });
        }
        let case = self.clone();
        let p = p.clone();
        Superfield::from_fn(self.generators(), move |x, t, th1, th2| {
            let inv = case.invariants(x, t, th1, th2)?;
            let s = &inv.sigma;
            let alpha = p.alpha.eval(s)?;
            let a = p.a.eval(s)?;
            let b = p.b.eval(s)?;
            let beta = p.beta.eval(s)?;
            let tab = &inv.ta * &inv.tb;
            Ok(&(&alpha + &(&inv.ta * &a)) + &(&(&inv.tb * &b) + &(&tab * &beta)))
        })
    }

    /// The reduced equations `(E_1, E_2, E_3, E_4)` at `σ`.
    pub fn reduced_residual(&self, p: &AnsatzProfiles, sigma: &G) -> Result<[G; 4]> {
        let [al, al1, al2] = p.alpha.derivs(sigma)?;
        let [a, a1, _] = p.a.derivs(sigma)?;
        let [b, b1, _] = p.b.derivs(sigma)?;
        let beta = p.beta.value(sigma)?;
        let (sn, cs) = (al.sin(), al.cos());
        let (e, m) = (self.eps, &self.param);
        let ab_s = &(&a * &b) * &sn;
        let beta_c = &beta * &cs;
        let (ac, bc) = (&a * &cs, &b * &cs);
        Ok(match self.id {
            CaseId::S1 => [
                &beta + &sn,
                &b1 - &ac,
                &(sigma * &a1) + &(&a.scale(0.5) + &bc),
                &(&al1 + &(sigma * &al2)) - &(&beta_c + &ab_s),
            ],
            CaseId::S2 => [&beta + &sn, ac, &a1 + &bc, &beta_c + &ab_s],
            CaseId::S3 => [&beta + &sn, &b1 - &ac, bc, &beta_c + &ab_s],
            CaseId::S4 => [
                &beta + &sn,
                &b1 - &ac,
                &a1.scale(e) - &bc,
                &(&al2.scale(e) + &beta_c) + &ab_s,
            ],
            CaseId::S6 => [
                &beta + &sn,
                &(m * &beta) - &ac,
                &a1 + &bc,
                &(&(m * &a1) + &beta_c) + &ab_s,
            ],
            CaseId::S7 => [
                &beta + &sn,
                &b1 - &ac,
                &(m * &al1) - &bc,
                &(&(m * &a1) + &beta_c) + &ab_s,
            ],
            CaseId::S8 => [
                &beta + &sn,
                &b1.scale(e) - &ac,
                &(&a1 + &(m * &al1)) - &bc,
                &(&(&al2.scale(e) + &(m * &a1)) + &beta_c) + &ab_s,
            ],
            CaseId::S10 => [
                &beta - &sn,
                &b1 + &ac,
                &(m * &al1) + &bc,
                &(&(m * &a1) - &beta_c) - &ab_s,
            ],
            CaseId::S11 => [
                &beta - &sn,
                &(m * &beta) + &ac,
                &a1 - &bc,
                &(&(m * &a1) - &beta_c) - &ab_s,
            ],
            CaseId::S12 => [
                &beta - &sn,
                &b1 + &ac,
                &(&(m * &al1) + &a1.scale(e)) + &bc,
                &(&(&al2.scale(e) + &(m * &a1)) - &beta_c) - &ab_s,
            ],
        })
    }

    /// S1 equations with `a` eliminated:
    /// `σα'' + α' + ½ sin 2α - C_0 σ^{-1/2} sin α`,
    /// `b'' + tan α α' b' + b'/(2σ) + cos²α b/σ`, `a - b'/cos α`, `β + sin α`
    /// and `(σ^{1/2} a b)'`, with `C_0 = σ^{1/2} a b` taken at `σ`.
    pub fn s1_eliminated_residual(&self, p: &AnsatzProfiles, sigma: &G) -> Result<[G; 5]> {
        if self.id != CaseId::S1 {
            return Err(Error::Usage(format!(
                "eliminated form is defined for S1, not {}",
                self.id.name()
            )));
        }
        let sb = sigma.body();
        if sb.abs() < 1e-12 {
            return Err(Error::SingularPoint(sb));
        }
        if sb < 0.0 {
            return Err(Error::Domain(format!(
                "eliminated S1 form needs sigma > 0, got {sb}"
            )));
        }
        let [al, al1, al2] = p.alpha.derivs(sigma)?;
        let [a, a1, _] = p.a.derivs(sigma)?;
        let [b, b1, b2] = p.b.derivs(sigma)?;
        let beta = p.beta.value(sigma)?;
        let (sn, cs) = (al.sin(), al.cos());
        let rs = sigma.sqrt()?;
        let si = sigma.invert()?;
        let ci = cs.invert()?;
        let c0 = &rs * &(&a * &b);
        let first = &(&(sigma * &al2) + &al1) + &(&(&sn * &cs) - &(&(&c0 * &rs.invert()?) * &sn));
        let tan = &sn * &ci;
        let second = &(&b2 + &(&(&tan * &al1) * &b1))
            + &(&(&b1 * &si).scale(0.5) + &(&(&(&cs * &cs) * &b) * &si));
        let third = &a - &(&b1 * &ci);
        let flux = &(&(&a * &b) * &rs.invert()?).scale(0.5) + &(&rs * &(&(&a1 * &b) + &(&a * &b1)));
        Ok([first, second, third, &beta + &sn, flux])
    }

    /// Residual predicted by recombining the reduced equations at `(x, t)`.
    pub fn recombined_residual(&self, p: &AnsatzProfiles, x: &G, t: &G) -> Result<G> {
        let [sigma, ta, tb] = self.invariants_at(x, t)?;
        let e = self.reduced_residual(p, &sigma)?;
        let s = self.id.recombination_signs();
        let mono = [G::one(self.generators()), ta.clone(), tb.clone(), &ta * &tb];
        let mut acc = G::zero(self.generators());
        for i in 0..4 {
            acc += &(&mono[i] * &e[i]).scale(s[i]);
        }
        Ok(acc)
    }

    /// `max |R[ansatz] - Σ s_i m_i E_i|` at `(x, t)`.
    pub fn consistency_at(&self, p: &AnsatzProfiles, x: &G, t: &G) -> Result<f64> {
        let r = self.build_ansatz(p)?.ssg_residual(x, t)?;
        Ok(r.max_abs_diff(&self.recombined_residual(p, x, t)?))
    }

    /// `V Φ` for the generating field `V` of the case.
    pub fn invariance_defect(&self, p: &AnsatzProfiles, x: &G, t: &G) -> Result<f64> {
        let f = self.build_ansatz(p)?;
        Ok(generator_action(&self.generator()?, &f, x, t)?.norm_max())
    }
}

/// `(ξ ∂_x + τ ∂_t + ρ ∂_θ1 + σ ∂_θ2) Φ` for the realized field of `v`.
pub fn generator_action(v: &AlgebraElement, f: &Superfield, x: &G, t: &G) -> Result<G> {
    let k = f.generators();
    let b = f.evaluate_bundle(x, t)?;
    let (th1, th2) = (G::generator(k, THETA1), G::generator(k, THETA2));
    let [c1, c2, c3, d1, d2] = &v.c;
    let xi = &(&(c1 * x).scale(-2.0) + c2) - &(d1 * &th1);
    let ta = &(&(c1 * t).scale(2.0) + c3) - &(d2 * &th2);
    let rho = &(c1 * &th1).scale(-1.0) + d1;
    let sg = &(c1 * &th2) + d2;
    Ok(&(&(&xi * &b.x) + &(&ta * &b.t)) + &(&(&rho * &b.th1) + &(&sg * &b.th2)))
}

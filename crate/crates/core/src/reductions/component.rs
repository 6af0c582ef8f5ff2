//! Reductions of the component system under its one-dimensional subalgebras.
//!
//! Profiles are `u(σ)`, `Θ(σ)`, `Ω(σ)` with `φ = w_φ Θ`, `ψ = w_ψ Ω`; the
//! weights are `(t^{1/2}, t^{-1/2})` for L1 and `(1, 1)` otherwise. The
//! auxiliary field is eliminated by `F = -sin(u/2)`.

use std::sync::Arc;

use serde::Serialize;

use super::cases::{CaseId, ReductionCase};
use super::profile::{AnsatzProfiles, Profile};
use crate::error::{Error, Result};
use crate::grassmann::{GrassmannNumber, Parity};
use crate::superfield::{component_residuals, Superfield};
use crate::superjet::SuperJet;

type G = GrassmannNumber<f64>;
type Jet = SuperJet<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ComponentCaseId {
    L1,
    L2,
    L3,
    L4,
    L5,
}

#[derive(Clone, Debug)]
pub struct ComponentProfiles {
    pub u: Profile,
    pub phi: Profile,
    pub psi: Profile,
}

impl ComponentProfiles {
    pub fn generators(&self) -> usize {
        self.u.generators()
    }

    fn check(&self) -> Result<()> {
        for (p, par) in [
            (&self.u, Parity::Even),
            (&self.phi, Parity::Odd),
            (&self.psi, Parity::Odd),
        ] {
            match p.parity() {
                Some(q) if q == par || p.is_trivially_zero() => {}
                found => {
                    return Err(Error::Parity {
                        expected: par,
                        found: found.unwrap_or(Parity::Mixed),
                    })
                }
            }
        }
        Ok(())
    }

    /// `α = u/2`, `a = Θ`, `b = Ω`, `β = -sin α`.
    pub fn superspace_profiles(&self) -> AnsatzProfiles {
        let alpha = self.u.scale(0.5);
        let beta = alpha.then(Parity::Even, |a| Ok(-a.sin()));
        AnsatzProfiles {
            alpha,
            a: self.phi.clone(),
            b: self.psi.clone(),
            beta,
        }
    }
}

impl ComponentCaseId {
    pub const ALL: [ComponentCaseId; 5] = [
        ComponentCaseId::L1,
        ComponentCaseId::L2,
        ComponentCaseId::L3,
        ComponentCaseId::L4,
        ComponentCaseId::L5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ComponentCaseId::L1 => "L1",
            ComponentCaseId::L2 => "L2",
            ComponentCaseId::L3 => "L3",
            ComponentCaseId::L4 => "L4",
            ComponentCaseId::L5 => "L5",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownVariable(s.to_string()))
    }

    fn sigma(self, x: &Jet, t: &Jet) -> Jet {
        match self {
            ComponentCaseId::L1 => x * t,
            ComponentCaseId::L2 => t.clone(),
            ComponentCaseId::L3 => x.clone(),
            ComponentCaseId::L4 => x - t,
            ComponentCaseId::L5 => x + t,
        }
    }

    fn weights(self, t: &Jet) -> Result<(Jet, Jet)> {
        match self {
            ComponentCaseId::L1 => {
                if t.value().body() <= 0.0 {
                    return Err(Error::Domain(format!(
                        "L1 ansatz needs t > 0, got {}",
                        t.value().body()
                    )));
                }
                let r = t.sqrt()?;
                let ri = r.recip()?;
                Ok((r, ri))
            }
            _ => Ok((t.lift_scalar(1.0), t.lift_scalar(1.0))),
        }
    }

    /// The superfield `u/2 + θ1 φ + θ2 ψ - θ1θ2 sin(u/2)` of the ansatz.
    pub fn build_ansatz(self, p: &ComponentProfiles) -> Result<Superfield> {
        p.check()?;
        let k = p.generators();
        let (p1, p2, p3) = (
            Arc::new(p.clone()),
            Arc::new(p.clone()),
            Arc::new(p.clone()),
        );
        let p4 = Arc::new(p.clone());
        Superfield::from_components(
            k,
            Arc::new(move |x, t| Ok(p1.u.eval(&self.sigma(x, t))?.scale(0.5))),
            Arc::new(move |x, t| Ok(&self.weights(t)?.0 * &p2.phi.eval(&self.sigma(x, t))?)),
            Arc::new(move |x, t| Ok(&self.weights(t)?.1 * &p3.psi.eval(&self.sigma(x, t))?)),
            Arc::new(move |x, t| Ok(-p4.u.eval(&self.sigma(x, t))?.scale(0.5).sin())),
        )
    }

    /// Reduced residuals `(Δa, Δb, Δc)` at `σ`.
    pub fn reduced_residual(self, p: &ComponentProfiles, sigma: &G) -> Result<[G; 3]> {
        let [u, u1, u2] = p.u.derivs(sigma)?;
        let [f, f1, _] = p.phi.derivs(sigma)?;
        let [g, g1, _] = p.psi.derivs(sigma)?;
        let h = u.scale(0.5);
        let (s, c) = (h.sin(), h.cos());
        let two_s = &(&f * &g) * &s.scale(2.0);
        let (fc, gc) = (&c * &f, &c * &g);
        Ok(match self {
            ComponentCaseId::L1 => [
                &(&(sigma * &u2) + &u1) + &(&u.sin() - &two_s),
                &(&f.scale(0.5) + &(sigma * &f1)) + &gc,
                &g1 - &fc,
            ],
            ComponentCaseId::L2 => [&two_s - &u.sin(), &f1 + &gc, fc],
            ComponentCaseId::L3 => [&two_s - &u.sin(), gc, &g1 - &fc],
            ComponentCaseId::L4 => [&(&u.sin() - &u2) - &two_s, &f1 - &gc, &g1 - &fc],
            ComponentCaseId::L5 => [&(&u2 + &u.sin()) - &two_s, &f1 + &gc, &g1 - &fc],
        })
    }

    /// Weights with `(Δ1, Δ2, Δ3) = (w_1 Δa, w_2 Δb, w_3 Δc)` at `(x, t)`.
    pub fn residual_weights(self, k: usize, t: &G) -> Result<[G; 3]> {
        let one = G::one(k);
        Ok(match self {
            ComponentCaseId::L1 => {
                let r = t.sqrt()?;
                [one, r.invert()?, r]
            }
            ComponentCaseId::L2 => [-&one, one.clone(), -&one],
            ComponentCaseId::L3 => [-&one, one.clone(), one],
            ComponentCaseId::L4 => [one.clone(), -&one, one],
            ComponentCaseId::L5 => [one.clone(), one.clone(), one],
        })
    }

    /// `max |Δ_i[ansatz] - w_i Δ_i[reduced]|` at `(x, t)`.
    pub fn consistency_at(self, p: &ComponentProfiles, x: &G, t: &G) -> Result<f64> {
        let f = self.build_ansatz(p)?;
        let [u, phi, psi, ff] = f.components(x, t)?;
        let d = component_residuals(&u, &phi, &psi, &ff)?;
        let spec = crate::superjet::JetSpec::new(&["x", "t"], 0)?;
        let sigma = self.sigma(
            &Jet::variable(&spec, "x", x.clone())?,
            &Jet::variable(&spec, "t", t.clone())?,
        );
        let r = self.reduced_residual(p, sigma.value())?;
        let w = self.residual_weights(p.generators(), t)?;
        Ok((0..3)
            .map(|i| d[i].max_abs_diff(&(&w[i] * &r[i])))
            .fold(d[3].norm_max(), f64::max))
    }

    /// Superspace case, `ε`, and factors `(f_a, f_b, f_c)` with
    /// `E_4 = f_a Δa`, `E_3 = f_b Δb`, `E_2 = f_c Δc`.
    pub fn superspace_slice(self) -> (CaseId, f64, [f64; 3]) {
        match self {
            ComponentCaseId::L1 => (CaseId::S1, 1.0, [0.5, 1.0, 1.0]),
            ComponentCaseId::L2 => (CaseId::S2, 1.0, [0.5, 1.0, 1.0]),
            ComponentCaseId::L3 => (CaseId::S3, 1.0, [0.5, 1.0, 1.0]),
            ComponentCaseId::L4 => (CaseId::S4, 1.0, [-0.5, 1.0, 1.0]),
            ComponentCaseId::L5 => (CaseId::S4, -1.0, [-0.5, -1.0, 1.0]),
        }
    }

    /// `max` deviation of the superspace reduced equations, restricted to
    /// `β = -sin α`, from the scaled component residuals at `σ`.
    pub fn slice_defect(self, p: &ComponentProfiles, sigma: &G) -> Result<f64> {
        let (id, eps, f) = self.superspace_slice();
        let case = ReductionCase::plain(id, eps, p.generators())?;
        let e = case.reduced_residual(&p.superspace_profiles(), sigma)?;
        let d = self.reduced_residual(p, sigma)?;
        Ok([
            e[0].norm_max(),
            e[3].max_abs_diff(&d[0].scale(f[0])),
            e[2].max_abs_diff(&d[1].scale(f[1])),
            e[1].max_abs_diff(&d[2].scale(f[2])),
        ]
        .into_iter()
        .fold(0.0, f64::max))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for c in ComponentCaseId::ALL {
            assert_eq!(ComponentCaseId::parse(c.name()).unwrap(), c);
        }
    }
}

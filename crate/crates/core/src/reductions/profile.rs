//! Profiles: functions of one even variable with Grassmann coefficients.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::grassmann::{GrassmannNumber, Parity};
use crate::series::{Analytic, Constant, Derivative, Polynomial};
use crate::superjet::{JetSpec, SuperJet};

type G = GrassmannNumber<f64>;
type Jet = SuperJet<f64>;

pub type RealFn = Arc<dyn Analytic<f64>>;
pub type JetMap = Arc<dyn Fn(&Jet) -> Result<Jet> + Send + Sync>;

/// `Σ c_i f_i(σ) + Σ g_j(σ)` with constant supernumbers `c_i`, real analytic
/// `f_i` and arbitrary jet maps `g_j` of declared parity.
#[derive(Clone)]
pub struct Profile {
    k: usize,
    terms: Vec<(G, RealFn)>,
    maps: Vec<(Parity, JetMap)>,
}

impl std::fmt::Debug for Profile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list()
            .entries(self.terms.iter().map(|t| &t.0))
            .finish()
    }
}

impl Profile {
    pub fn zero(k: usize) -> Self {
        Self {
            k,
            terms: Vec::new(),
            maps: Vec::new(),
        }
    }

    pub fn constant(c: G) -> Self {
        Self {
            k: c.generators(),
            terms: vec![(c, Arc::new(Constant(1.0)))],
            maps: Vec::new(),
        }
    }

    pub fn real(k: usize, f: impl Analytic<f64> + 'static) -> Self {
        Self::term(G::one(k), f)
    }

    pub fn term(c: G, f: impl Analytic<f64> + 'static) -> Self {
        Self {
            k: c.generators(),
            terms: vec![(c, Arc::new(f))],
            maps: Vec::new(),
        }
    }

    /// `Σ c_i σ^i`.
    pub fn polynomial(coeffs: Vec<G>) -> Result<Self> {
        let k = coeffs
            .first()
            .map(|c| c.generators())
            .ok_or_else(|| Error::Usage("empty polynomial".into()))?;
        let terms = coeffs
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                let mut e = vec![0.0; i + 1];
                e[i] = 1.0;
                (c, Arc::new(Polynomial(e)) as RealFn)
            })
            .collect();
        Ok(Self {
            k,
            terms,
            maps: Vec::new(),
        })
    }

    /// Polynomial of the given degree with random coefficients of one parity
    /// on the listed generators.
    pub fn random<R: Rng + ?Sized>(
        k: usize,
        parity: Parity,
        gens: &[usize],
        degree: usize,
        rng: &mut R,
    ) -> Result<Self> {
        let coeffs = (0..=degree)
            .map(|_| {
                let mut c = G::sample_random_with(k, parity, 2, gens, rng)?;
                if parity == Parity::Even {
                    c = c.scale(0.5);
                }
                Ok(c)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::polynomial(coeffs)
    }

    /// A profile given by a jet map of known parity.
    pub fn map<F>(k: usize, parity: Parity, f: F) -> Self
    where
        F: Fn(&Jet) -> Result<Jet> + Send + Sync + 'static,
    {
        Self {
            k,
            terms: Vec::new(),
            maps: vec![(parity, Arc::new(f))],
        }
    }

    /// `g ∘ self` for a jet-level `g`.
    pub fn then<F>(&self, parity: Parity, g: F) -> Self
    where
        F: Fn(&Jet) -> Result<Jet> + Send + Sync + 'static,
    {
        let inner = self.clone();
        Self::map(self.k, parity, move |s| g(&inner.eval(s)?))
    }

    pub fn generators(&self) -> usize {
        self.k
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.terms.extend(o.terms.iter().cloned());
        out.maps.extend(o.maps.iter().cloned());
        out
    }

    pub fn left_mul(&self, c: &G) -> Self {
        let p = c.parity();
        let pm = |q: Parity| {
            if p == Parity::Mixed {
                Parity::Mixed
            } else {
                q.product(p)
            }
        };
        let c2 = c.clone();
        let mut out = Self {
            k: self.k,
            terms: self.terms.iter().map(|(a, f)| (c * a, f.clone())).collect(),
            maps: Vec::new(),
        };
        for (q, g) in &self.maps {
            let (g, c2) = (g.clone(), c2.clone());
            out.maps
                .push((pm(*q), Arc::new(move |s: &Jet| Ok(g(s)?.left_mul(&c2)))));
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        self.left_mul(&G::scalar(self.k, s))
    }

    /// `d/dσ`; available for pure coefficient-function profiles.
    pub fn derivative(&self) -> Result<Self> {
        if !self.maps.is_empty() {
            return Err(Error::Usage("derivative of a mapped profile".into()));
        }
        Ok(Self {
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|(a, f)| (a.clone(), Arc::new(Derivative(f.clone())) as RealFn))
                .collect(),
            maps: Vec::new(),
        })
    }

    /// Common parity of the coefficients; `None` if they are mixed.
    pub fn parity(&self) -> Option<Parity> {
        let mut out = None;
        for (c, _) in &self.terms {
            if c.is_zero() {
                continue;
            }
            let p = c.parity();
            if p == Parity::Mixed || out.is_some_and(|q| q != p) {
                return None;
            }
            out = Some(p);
        }
        for (p, _) in &self.maps {
            if *p == Parity::Mixed || out.is_some_and(|q| q != *p) {
                return None;
            }
            out = Some(*p);
        }
        Some(out.unwrap_or(Parity::Even))
    }

    /// Composition with an even jet.
    pub fn eval(&self, s: &Jet) -> Result<Jet> {
        let mut acc = s.lift(G::zero(s.generators()));
        for (c, f) in &self.terms {
            acc = &acc + &s.apply_analytic(f.as_ref())?.left_mul(c);
        }
        for (_, g) in &self.maps {
            acc = &acc + &g(s)?;
        }
        Ok(acc)
    }

    /// Jet in a single seed `s` at the even point `sigma`.
    pub fn jet_at(&self, sigma: &G, order: usize) -> Result<Jet> {
        let spec = JetSpec::new(&["s"], order)?;
        self.eval(&Jet::variable(&spec, "s", sigma.clone())?)
    }

    /// `(f, f', f'')` at `sigma`.
    pub fn derivs(&self, sigma: &G) -> Result<[G; 3]> {
        let j = self.jet_at(sigma, 2)?;
        Ok([j.value().clone(), j.d(&["s"])?, j.d(&["s", "s"])?])
    }

    pub fn value(&self, sigma: &G) -> Result<G> {
        Ok(self.jet_at(sigma, 0)?.value().clone())
    }

    pub fn is_trivially_zero(&self) -> bool {
        self.maps.is_empty() && self.terms.iter().all(|t| t.0.is_zero())
    }

    pub fn value_at(&self, sigma: f64) -> Result<G> {
        self.value(&G::scalar(self.k, sigma))
    }
}

/// The four profile slots of a superspace ansatz
/// `Φ = α(σ) + τ_a a(σ) + τ_b b(σ) + τ_a τ_b β(σ)`.
#[derive(Clone, Debug)]
pub struct AnsatzProfiles {
    pub alpha: Profile,
    pub a: Profile,
    pub b: Profile,
    pub beta: Profile,
}

impl AnsatzProfiles {
    pub fn generators(&self) -> usize {
        self.alpha.generators()
    }

    pub fn check(&self) -> Result<()> {
        let want = [
            (&self.alpha, Parity::Even),
            (&self.a, Parity::Odd),
            (&self.b, Parity::Odd),
            (&self.beta, Parity::Even),
        ];
        for (p, par) in want {
            match p.parity() {
                Some(q) if q == par || p.is_trivially_zero() => {}
                found => {
                    return Err(Error::Parity {
                        expected: par,
                        found: found.unwrap_or(Parity::Mixed),
                    });
                }
            }
        }
        Ok(())
    }

    /// Random polynomial profiles on the listed generators.
    pub fn random<R: Rng + ?Sized>(k: usize, gens: &[usize], rng: &mut R) -> Result<Self> {
        Ok(Self {
            alpha: Profile::random(k, Parity::Even, gens, 3, rng)?,
            a: Profile::random(k, Parity::Odd, gens, 2, rng)?,
            b: Profile::random(k, Parity::Odd, gens, 2, rng)?,
            beta: Profile::random(k, Parity::Even, gens, 2, rng)?,
        })
    }
}

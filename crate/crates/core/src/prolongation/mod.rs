//! Graded jet spaces, recursive prolongation of even vector fields and the
//! symmetry criterion.
//!
//! Coefficient functions are evaluated on jets seeded in the even base
//! variables. Each odd base variable is shifted by its own reserved
//! generator `ε`, so `g(θ + ε) = g(θ) + ε ∂_θ g(θ) + …` and odd partials are
//! left derivatives in `ε`.

pub mod component;
mod jetspace;
pub mod ssg;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use jetspace::{CoeffFn, JetPoint, Partials, ProblemSignature};

use crate::error::{Error, Result};
use crate::grassmann::GrassmannNumber;
use crate::superjet::SuperJet;

type G = GrassmannNumber<f64>;
type Jet = SuperJet<f64>;

/// Even vector field `Σ ζ^A ∂_A + Σ φ^α ∂_{u^α}`, coefficients to the left.
#[derive(Clone)]
pub struct VectorFieldSpec {
    pub name: String,
    pub zeta: Vec<CoeffFn>,
    pub phi: Vec<CoeffFn>,
}

impl std::fmt::Debug for VectorFieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "VectorFieldSpec({})", self.name)
    }
}

pub fn coeff<F>(f: F) -> CoeffFn
where
    F: Fn(&[Jet]) -> Result<Jet> + Send + Sync + 'static,
{
    Arc::new(f)
}

pub fn zero_coeff(k: usize) -> CoeffFn {
    coeff(move |a| Ok(a[0].lift(G::zero(k))))
}

pub fn const_coeff(c: G) -> CoeffFn {
    coeff(move |a| Ok(a[0].lift(c.clone())))
}

/// `c · v_i` for a constant `c` and base variable `i`.
pub fn linear_coeff(c: G, i: usize) -> CoeffFn {
    coeff(move |a| Ok(a[i].left_mul(&c)))
}

/// Sum of coefficient functions.
pub fn sum_coeff(parts: Vec<CoeffFn>) -> CoeffFn {
    coeff(move |a| {
        let mut it = parts.iter();
        let first = it.next().expect("non-empty sum");
        let mut acc = first(a)?;
        for p in it {
            acc = &acc + &p(a)?;
        }
        Ok(acc)
    })
}

impl VectorFieldSpec {
    pub fn new(name: &str, zeta: Vec<CoeffFn>, phi: Vec<CoeffFn>) -> Self {
        Self {
            name: name.to_string(),
            zeta,
            phi,
        }
    }

    pub fn zero(sig: &ProblemSignature, k: usize) -> Self {
        Self::new(
            "0",
            (0..sig.n_ind()).map(|_| zero_coeff(k)).collect(),
            (0..sig.n_dep()).map(|_| zero_coeff(k)).collect(),
        )
    }

    fn check(&self, sig: &ProblemSignature) -> Result<()> {
        if self.zeta.len() != sig.n_ind() || self.phi.len() != sig.n_dep() {
            return Err(Error::Usage(format!(
                "vector field `{}` does not match the signature",
                self.name
            )));
        }
        Ok(())
    }

    /// `a·self + b·other` with even constants.
    pub fn combine(&self, a: G, other: &Self, b: G) -> Self {
        let mix = |f: &CoeffFn, g: &CoeffFn| -> CoeffFn {
            let (f, g, a, b) = (f.clone(), g.clone(), a.clone(), b.clone());
            coeff(move |x| Ok(&f(x)?.left_mul(&a) + &g(x)?.left_mul(&b)))
        };
        Self {
            name: format!("({})+({})", self.name, other.name),
            zeta: self
                .zeta
                .iter()
                .zip(&other.zeta)
                .map(|(f, g)| mix(f, g))
                .collect(),
            phi: self
                .phi
                .iter()
                .zip(&other.phi)
                .map(|(f, g)| mix(f, g))
                .collect(),
        }
    }
}

/// Prolonged coefficients `φ^α_J`, keyed by dependent and canonical multi-index.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ProlongedCoefficients {
    pub entries: BTreeMap<(usize, Vec<usize>), G>,
}

impl ProlongedCoefficients {
    pub fn get(&self, alpha: usize, j: &[usize]) -> Result<&G> {
        self.entries.get(&(alpha, j.to_vec())).ok_or_else(|| {
            Error::IncompleteJetPoint(format!("prolonged coefficient {alpha}:{j:?}"))
        })
    }

    /// Max deviation over the keys present in both.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .filter_map(|(k, v)| other.entries.get(k).map(|w| v.max_abs_diff(w)))
            .fold(0.0, f64::max)
    }
}

/// Partials of all coefficient functions at a point.
pub struct FieldPartials {
    pub zeta: Vec<Partials>,
    pub phi: Vec<Partials>,
}

pub fn field_partials(v: &VectorFieldSpec, p: &JetPoint) -> Result<FieldPartials> {
    v.check(p.signature())?;
    Ok(FieldPartials {
        zeta: v
            .zeta
            .iter()
            .map(|f| p.partials(f))
            .collect::<Result<_>>()?,
        phi: v.phi.iter().map(|f| p.partials(f)).collect::<Result<_>>()?,
    })
}

/// `φ^α_A = 𝒟_A φ^α - Σ_C (𝒟_A ζ^C) u^α_C`.
pub fn first_prolongation(fp: &FieldPartials, p: &JetPoint, alpha: usize, a: usize) -> Result<G> {
    let mut acc = p.total_derivative(&fp.phi[alpha], a)?;
    for (c, z) in fp.zeta.iter().enumerate() {
        acc -= &(&p.total_derivative(z, a)? * &p.coord(alpha, &[c])?);
    }
    Ok(acc)
}

/// `φ^α_AB = 𝒟_B φ^α_A - Σ_C (𝒟_B ζ^C) u^α_AC`, with `𝒟_B φ^α_A` expanded
/// by the graded product rule.
pub fn second_prolongation(
    fp: &FieldPartials,
    p: &JetPoint,
    alpha: usize,
    a: usize,
    b: usize,
) -> Result<G> {
    let sig = p.signature();
    let pa = sig.ind_parity(a).bit();
    let pb = sig.ind_parity(b).bit();
    let mut acc = p.total_derivative2(&fp.phi[alpha], a, b)?;
    for (c, z) in fp.zeta.iter().enumerate() {
        let pc = sig.ind_parity(c).bit();
        acc -= &(&p.total_derivative2(z, a, b)? * &p.coord(alpha, &[c])?);
        let t = &p.total_derivative(z, a)? * &p.coord(alpha, &[c, b])?;
        if ((pa + pc) * pb) % 2 == 1 {
            acc += &t;
        } else {
            acc -= &t;
        }
        acc -= &(&p.total_derivative(z, b)? * &p.coord(alpha, &[a, c])?);
    }
    Ok(acc)
}

/// Every first- and canonical second-order prolonged coefficient.
pub fn prolong(v: &VectorFieldSpec, p: &JetPoint) -> Result<ProlongedCoefficients> {
    let fp = field_partials(v, p)?;
    let sig = p.signature().clone();
    let mut out = ProlongedCoefficients::default();
    for alpha in 0..sig.n_dep() {
        for j in sig.multi_indices() {
            let val = match j.as_slice() {
                [a] => first_prolongation(&fp, p, alpha, *a)?,
                [a, b] => second_prolongation(&fp, p, alpha, *a, *b)?,
                _ => unreachable!("order at most two"),
            };
            out.entries.insert((alpha, j), val);
        }
    }
    Ok(out)
}

/// `𝒟_A` of a coefficient function.
pub fn total_derivative(p: &JetPoint, expr: &CoeffFn, a: usize) -> Result<G> {
    p.total_derivative(&p.partials(expr)?, a)
}

/// `𝒟_B 𝒟_A` of a coefficient function.
pub fn total_derivative2(p: &JetPoint, expr: &CoeffFn, a: usize, b: usize) -> Result<G> {
    p.total_derivative2(&p.partials(expr)?, a, b)
}

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::grassmann::{GrassmannNumber, Parity};
use crate::superjet::{JetSpec, SuperJet};

type G = GrassmannNumber<f64>;
type Jet = SuperJet<f64>;

/// Independent and dependent variables with their parities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSignature {
    pub independents: Vec<(String, Parity)>,
    pub dependents: Vec<(String, Parity)>,
    pub order: usize,
}

impl ProblemSignature {
    pub fn new(
        independents: Vec<(&str, Parity)>,
        dependents: Vec<(&str, Parity)>,
    ) -> Result<Arc<Self>> {
        let mut names: Vec<&str> = independents.iter().map(|v| v.0).collect();
        names.extend(dependents.iter().map(|v| v.0));
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Usage(format!("duplicate variable `{n}`")));
            }
        }
        if independents
            .iter()
            .chain(&dependents)
            .any(|v| v.1 == Parity::Mixed)
        {
            return Err(Error::Usage("variables must be even or odd".into()));
        }
        let own = |v: Vec<(&str, Parity)>| v.into_iter().map(|(n, p)| (n.to_string(), p)).collect();
        Ok(Arc::new(Self {
            independents: own(independents),
            dependents: own(dependents),
            order: 2,
        }))
    }

    pub fn n_ind(&self) -> usize {
        self.independents.len()
    }

    pub fn n_dep(&self) -> usize {
        self.dependents.len()
    }

    /// Base variables: independents followed by dependents.
    pub fn base(&self) -> impl Iterator<Item = &(String, Parity)> {
        self.independents.iter().chain(&self.dependents)
    }

    pub fn base_parity(&self, i: usize) -> Parity {
        self.base().nth(i).expect("base index").1
    }

    pub fn ind_parity(&self, a: usize) -> Parity {
        self.independents[a].1
    }

    pub fn dep_parity(&self, alpha: usize) -> Parity {
        self.dependents[alpha].1
    }

    pub fn ind_index(&self, name: &str) -> Result<usize> {
        self.independents
            .iter()
            .position(|v| v.0 == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn dep_index(&self, name: &str) -> Result<usize> {
        self.dependents
            .iter()
            .position(|v| v.0 == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Parity of `u^α_J`.
    pub fn coord_parity(&self, alpha: usize, j: &[usize]) -> Parity {
        let odd = j.iter().filter(|&&a| self.ind_parity(a).is_odd()).count() as u32
            + self.dep_parity(alpha).bit();
        Parity::of_degree(odd)
    }

    /// Sorts `j` into ascending order; `None` if an odd index repeats.
    /// The flag is true when the reordering introduces a minus sign.
    pub fn canonical(&self, j: &[usize]) -> Option<(Vec<usize>, bool)> {
        let mut v = j.to_vec();
        let mut neg = false;
        for i in 0..v.len() {
            for k in 0..v.len() - 1 - i {
                if v[k] > v[k + 1] {
                    if self.ind_parity(v[k]).is_odd() && self.ind_parity(v[k + 1]).is_odd() {
                        neg = !neg;
                    }
                    v.swap(k, k + 1);
                }
            }
        }
        if v.windows(2)
            .any(|w| w[0] == w[1] && self.ind_parity(w[0]).is_odd())
        {
            return None;
        }
        Some((v, neg))
    }

    /// Canonical multi-indices of orders `1..=order`.
    pub fn multi_indices(&self) -> Vec<Vec<usize>> {
        let n = self.n_ind();
        let mut out: Vec<Vec<usize>> = (0..n).map(|a| vec![a]).collect();
        if self.order >= 2 {
            for a in 0..n {
                for b in a..n {
                    if a == b && self.ind_parity(a).is_odd() {
                        continue;
                    }
                    out.push(vec![a, b]);
                }
            }
        }
        out
    }

    pub fn coord_name(&self, alpha: usize, j: &[usize]) -> String {
        let mut s = self.dependents[alpha].0.clone();
        if !j.is_empty() {
            s.push('_');
            for &a in j {
                s.push_str(&self.independents[a].0);
            }
        }
        s
    }
}

/// A sampled point of the graded jet space, plus seed generators used to
/// differentiate coefficient functions in odd base directions.
#[derive(Debug, Clone)]
pub struct JetPoint {
    sig: Arc<ProblemSignature>,
    k: usize,
    base: Vec<G>,
    coords: BTreeMap<(usize, Vec<usize>), G>,
    seeds: Vec<Option<usize>>,
}

impl JetPoint {
    /// `seeds` lists one reserved generator per odd base variable, in base order.
    pub fn new(
        sig: &Arc<ProblemSignature>,
        k: usize,
        base: Vec<G>,
        seeds: &[usize],
    ) -> Result<Self> {
        let n = sig.n_ind() + sig.n_dep();
        if base.len() != n {
            return Err(Error::Usage(format!(
                "expected {n} base values, got {}",
                base.len()
            )));
        }
        let mut it = seeds.iter();
        let mut s = Vec::with_capacity(n);
        for (i, b) in base.iter().enumerate() {
            let p = sig.base_parity(i);
            b.require_parity(p)?;
            if p.is_odd() {
                let g = *it
                    .next()
                    .ok_or_else(|| Error::Usage("missing odd seed generator".into()))?;
                s.push(Some(g));
            } else {
                s.push(None);
            }
        }
        for (g, v) in s
            .iter()
            .flatten()
            .flat_map(|g| base.iter().map(move |v| (g, v)))
        {
            if !v.free_of(*g) {
                return Err(Error::Usage(format!("base value uses seed generator {g}")));
            }
        }
        Ok(Self {
            sig: sig.clone(),
            k,
            base,
            coords: BTreeMap::new(),
            seeds: s,
        })
    }

    /// Random point: every coordinate of the signature's order drawn on `gens`.
    pub fn random<R: Rng + ?Sized>(
        sig: &Arc<ProblemSignature>,
        k: usize,
        seeds: &[usize],
        gens: &[usize],
        max_degree: usize,
        rng: &mut R,
    ) -> Result<Self> {
        let draw = |p: Parity, rng: &mut R| -> Result<G> {
            let mut g = G::sample_random_with(k, p, max_degree, gens, rng)?;
            if p == Parity::Even {
                let b: f64 = rng.gen_range(-1.0..=1.0);
                g = &g.soul() + b;
            }
            Ok(g)
        };
        let base = (0..sig.n_ind() + sig.n_dep())
            .map(|i| draw(sig.base_parity(i), rng))
            .collect::<Result<Vec<_>>>()?;
        let mut p = Self::new(sig, k, base, seeds)?;
        for alpha in 0..sig.n_dep() {
            for j in sig.multi_indices() {
                let v = draw(sig.coord_parity(alpha, &j), rng)?;
                p.coords.insert((alpha, j), v);
            }
        }
        Ok(p)
    }

    pub fn signature(&self) -> &Arc<ProblemSignature> {
        &self.sig
    }

    pub fn generators(&self) -> usize {
        self.k
    }

    pub fn base(&self, i: usize) -> &G {
        &self.base[i]
    }

    pub fn base_values(&self) -> &[G] {
        &self.base
    }

    pub fn set_base(&mut self, i: usize, v: G) -> Result<()> {
        v.require_parity(self.sig.base_parity(i))?;
        self.base[i] = v;
        Ok(())
    }

    pub fn ind(&self, a: usize) -> &G {
        &self.base[a]
    }

    pub fn dep(&self, alpha: usize) -> &G {
        &self.base[self.sig.n_ind() + alpha]
    }

    /// `u^α_J` for any index order, with graded reordering signs.
    pub fn coord(&self, alpha: usize, j: &[usize]) -> Result<G> {
        if j.is_empty() {
            return Ok(self.dep(alpha).clone());
        }
        let Some((c, neg)) = self.sig.canonical(j) else {
            return Ok(G::zero(self.k));
        };
        let v = self
            .coords
            .get(&(alpha, c.clone()))
            .ok_or_else(|| Error::IncompleteJetPoint(self.sig.coord_name(alpha, &c)))?;
        Ok(if neg { -v } else { v.clone() })
    }

    pub fn set_coord(&mut self, alpha: usize, j: &[usize], v: G) -> Result<()> {
        let (c, neg) = self
            .sig
            .canonical(j)
            .ok_or_else(|| Error::Usage("repeated odd index".into()))?;
        v.require_parity(self.sig.coord_parity(alpha, &c))?;
        self.coords.insert((alpha, c), if neg { -v } else { v });
        Ok(())
    }

    pub fn coords(&self) -> &BTreeMap<(usize, Vec<usize>), G> {
        &self.coords
    }

    fn seed_list(&self) -> Vec<usize> {
        self.seeds.iter().flatten().copied().collect()
    }

    fn strip_seeds(&self, g: &G) -> G {
        self.seed_list()
            .into_iter()
            .fold(g.clone(), |acc, s| acc.strip(s))
    }

    /// Values and partials up to order two of a coefficient function.
    pub fn partials(&self, f: &CoeffFn) -> Result<Partials> {
        let sig = &self.sig;
        let even_names: Vec<String> = sig
            .base()
            .filter(|v| v.1 == Parity::Even)
            .map(|v| v.0.clone())
            .collect();
        let spec = JetSpec::new(&even_names, 2)?;
        let args = sig
            .base()
            .enumerate()
            .map(|(i, (name, p))| match p {
                Parity::Even => Jet::variable(&spec, name, self.base[i].clone()),
                _ => {
                    let e = G::generator(self.k, self.seeds[i].expect("odd seed"));
                    Ok(Jet::constant(&spec, &self.base[i] + &e))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let g = f(&args)?;
        let n = args.len();
        let names: Vec<String> = sig.base().map(|v| v.0.clone()).collect();
        let step = |j: &Jet, a: usize| -> Result<Jet> {
            match self.seeds[a] {
                None => j.partial(&names[a]),
                Some(s) => Ok(j.extract_left(s)),
            }
        };
        let value = self.strip_seeds(g.value());
        let mut first = Vec::with_capacity(n);
        let mut second = vec![vec![G::zero(self.k); n]; n];
        for a in 0..n {
            let ja = step(&g, a)?;
            first.push(self.strip_seeds(ja.value()));
            for (b, slot) in second[a].iter_mut().enumerate() {
                *slot = self.strip_seeds(step(&ja, b)?.value());
            }
        }
        Ok(Partials {
            value,
            first,
            second,
        })
    }

    fn ind_parity_bit(&self, a: usize) -> u32 {
        self.sig.ind_parity(a).bit()
    }

    /// `𝒟_A g = g_A + Σ_β u^β_A g_β`.
    pub fn total_derivative(&self, g: &Partials, a: usize) -> Result<G> {
        let n_ind = self.sig.n_ind();
        let mut acc = g.first[a].clone();
        for beta in 0..self.sig.n_dep() {
            acc += &(&self.coord(beta, &[a])? * &g.first[n_ind + beta]);
        }
        Ok(acc)
    }

    /// `𝒟_B 𝒟_A g` for a function of the base variables.
    pub fn total_derivative2(&self, g: &Partials, a: usize, b: usize) -> Result<G> {
        let sig = &self.sig;
        let n_ind = sig.n_ind();
        let nd = sig.n_dep();
        let ub: Vec<G> = (0..nd)
            .map(|c| self.coord(c, &[b]))
            .collect::<Result<_>>()?;
        let mut acc = g.second[a][b].clone();
        for gam in 0..nd {
            acc += &(&ub[gam] * &g.second[a][n_ind + gam]);
        }
        for beta in 0..nd {
            let i = n_ind + beta;
            acc += &(&self.coord(beta, &[a, b])? * &g.first[i]);
            let mut inner = g.second[i][b].clone();
            for gam in 0..nd {
                inner += &(&ub[gam] * &g.second[i][n_ind + gam]);
            }
            let sign_odd = ((sig.dep_parity(beta).bit() + self.ind_parity_bit(a))
                * self.ind_parity_bit(b))
                % 2
                == 1;
            let term = &self.coord(beta, &[a])? * &inner;
            if sign_odd {
                acc -= &term;
            } else {
                acc += &term;
            }
        }
        Ok(acc)
    }
}

/// Jet-evaluable coefficient function of the base variables, in base order.
pub type CoeffFn = Arc<dyn Fn(&[Jet]) -> Result<Jet> + Send + Sync>;

/// Value, `g_a` and `g_ab = ∂_b ∂_a g` of a function at a jet point.
#[derive(Debug, Clone)]
pub struct Partials {
    pub value: G,
    pub first: Vec<G>,
    pub second: Vec<Vec<G>>,
}

impl Partials {
    pub fn d(&self, a: usize) -> &G {
        &self.first[a]
    }

    pub fn dd(&self, a: usize, b: usize) -> &G {
        &self.second[a][b]
    }
}

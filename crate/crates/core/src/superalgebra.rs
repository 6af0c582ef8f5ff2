//! The symmetry superalgebra `{L, P_x, P_t, Q_x, Q_t}` over the Grassmann
//! algebra, its structure table, the adjoint action and the subalgebra
//! catalog.
//!
//! Elements are even: `c_L L + c_Px P_x + c_Pt P_t + c_Qx Q_x + c_Qt Q_t` with
//! even coefficients on the even generators and odd ones on `Q_x`, `Q_t`.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grassmann::{GrassmannNumber, Parity};
use crate::prolongation::{self, component, ssg, JetPoint, VectorFieldSpec};

type G = GrassmannNumber<f64>;

pub const L: usize = 0;
pub const PX: usize = 1;
pub const PT: usize = 2;
pub const QX: usize = 3;
pub const QT: usize = 4;

pub const NAMES: [&str; 5] = ["L", "P_x", "P_t", "Q_x", "Q_t"];

/// Graded bracket table on a basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureTable {
    pub names: Vec<&'static str>,
    pub parities: Vec<Parity>,
    /// `entries[i][j]` holds the coordinates of `[X_i, X_j]`.
    pub entries: Vec<Vec<Vec<f64>>>,
}

impl StructureTable {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    fn odd(&self, i: usize) -> bool {
        self.parities[i].is_odd()
    }

    /// `max |[X_i,X_j] + (-1)^{ij} [X_j,X_i]|`.
    pub fn antisymmetry_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let s = if self.odd(i) && self.odd(j) {
                    1.0
                } else {
                    -1.0
                };
                for l in 0..n {
                    worst = worst.max((self.entries[i][j][l] - s * self.entries[j][i][l]).abs());
                }
            }
        }
        worst
    }

    fn bracket_basis(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut out = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                if a[i] == 0.0 || b[j] == 0.0 {
                    continue;
                }
                for l in 0..n {
                    out[l] += a[i] * b[j] * self.entries[i][j][l];
                }
            }
        }
        out
    }

    /// Super Jacobi defect on basis triples:
    /// `[X,[Y,Z]] - [[X,Y],Z] - (-1)^{xy}[Y,[X,Z]]`.
    pub fn jacobi_defect(&self) -> f64 {
        let n = self.dim();
        let e = |i: usize| {
            let mut v = vec![0.0; n];
            v[i] = 1.0;
            v
        };
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let yz = self.bracket_basis(&e(j), &e(k));
                    let xy = self.bracket_basis(&e(i), &e(j));
                    let xz = self.bracket_basis(&e(i), &e(k));
                    let lhs = self.bracket_basis(&e(i), &yz);
                    let a = self.bracket_basis(&xy, &e(k));
                    let b = self.bracket_basis(&e(j), &xz);
                    let s = if self.odd(i) && self.odd(j) {
                        -1.0
                    } else {
                        1.0
                    };
                    for l in 0..n {
                        worst = worst.max((lhs[l] - a[l] - s * b[l]).abs());
                    }
                }
            }
        }
        worst
    }
}

fn table(
    names: &[&'static str],
    parities: &[Parity],
    nonzero: &[(usize, usize, usize, f64)],
) -> StructureTable {
    let n = names.len();
    let mut entries = vec![vec![vec![0.0; n]; n]; n];
    for &(i, j, l, c) in nonzero {
        entries[i][j][l] = c;
    }
    StructureTable {
        names: names.to_vec(),
        parities: parities.to_vec(),
        entries,
    }
}

/// Supercommutation table of `{L, P_x, P_t, Q_x, Q_t}`, row bracket column.
pub fn structure_table() -> StructureTable {
    use Parity::{Even, Odd};
    table(
        &NAMES,
        &[Even, Even, Even, Odd, Odd],
        &[
            (L, PX, PX, 2.0),
            (L, PT, PT, -2.0),
            (L, QX, QX, 1.0),
            (L, QT, QT, -1.0),
            (PX, L, PX, -2.0),
            (PT, L, PT, 2.0),
            (QX, L, QX, -1.0),
            (QT, L, QT, 1.0),
            (QX, QX, PX, -2.0),
            (QT, QT, PT, -2.0),
        ],
    )
}

/// Commutators of the component-form algebra `{P_x, P_t, D}`.
pub fn component_table() -> StructureTable {
    use Parity::Even;
    table(
        &["P_x", "P_t", "D"],
        &[Even, Even, Even],
        &[
            (0, 2, 0, 2.0),
            (2, 0, 0, -2.0),
            (1, 2, 1, -2.0),
            (2, 1, 1, 2.0),
        ],
    )
}

/// Even element of the superalgebra over the Grassmann algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    pub c: [G; 5],
}

impl AlgebraElement {
    pub fn new(c: [G; 5]) -> Result<Self> {
        let table = structure_table();
        for (ci, p) in c.iter().zip(&table.parities) {
            ci.require_parity(*p)?;
        }
        let k = c[0].generators();
        if let Some(other) = c.iter().find(|ci| ci.generators() != k) {
            return Err(Error::ContextMismatch {
                left: k,
                right: other.generators(),
            });
        }
        Ok(Self { c })
    }

    pub fn zero(k: usize) -> Self {
        Self {
            c: std::array::from_fn(|_| G::zero(k)),
        }
    }

    /// `c · X_i`.
    pub fn basis(k: usize, i: usize, c: G) -> Result<Self> {
        let mut e = Self::zero(k);
        e.c[i] = c;
        Self::new(e.c)
    }

    /// Real multiple of an even generator.
    pub fn even(k: usize, i: usize, c: f64) -> Self {
        let mut e = Self::zero(k);
        e.c[i] = G::scalar(k, c);
        e
    }

    pub fn random<R: Rng + ?Sized>(k: usize, gens: &[usize], rng: &mut R) -> Result<Self> {
        let t = structure_table();
        let c = t
            .parities
            .iter()
            .map(|&p| {
                let g = G::sample_random_with(k, p, 2, gens, rng)?;
                Ok(if p == Parity::Even {
                    &g.soul() + rng.gen_range(-1.0..1.0)
                } else {
                    g
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(c.try_into().expect("five slots"))
    }

    pub fn generators(&self) -> usize {
        self.c[0].generators()
    }

    pub fn in_ideal(&self) -> bool {
        self.c[L].is_zero()
    }

    pub fn scale(&self, a: &G) -> Self {
        Self {
            c: std::array::from_fn(|i| a * &self.c[i]),
        }
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        self.c
            .iter()
            .zip(&o.c)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    pub fn norm_max(&self) -> f64 {
        self.c.iter().map(G::norm_max).fold(0.0, f64::max)
    }

    /// Vector field realization on `(x, t, θ1, θ2, Φ)`.
    pub fn realize(&self) -> VectorFieldSpec {
        let k = self.generators();
        let mut v = ssg::general_symmetry(
            k,
            self.c[L].clone(),
            self.c[PX].clone(),
            self.c[PT].clone(),
            self.c[QX].clone(),
            self.c[QT].clone(),
        );
        v.name = self.to_string();
        v
    }
}

impl std::ops::Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, o: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            c: std::array::from_fn(|i| &self.c[i] + &o.c[i]),
        }
    }
}

impl std::ops::Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, o: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            c: std::array::from_fn(|i| &self.c[i] - &o.c[i]),
        }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .c
            .iter()
            .zip(NAMES)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| format!("({c})*{n}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `[X, Y]` with `[a X_i, b Y_j] = (-1)^{x̃_i b̃} a b [X_i, X_j]`.
pub fn bracket(x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    let t = structure_table();
    let k = x.generators();
    let mut out = AlgebraElement::zero(k);
    for i in 0..5 {
        if x.c[i].is_zero() {
            continue;
        }
        for j in 0..5 {
            if y.c[j].is_zero() {
                continue;
            }
            let mut ab = &x.c[i] * &y.c[j];
            if t.odd(i) && t.odd(j) {
                ab = -ab;
            }
            for l in 0..5 {
                let s = t.entries[i][j][l];
                if s != 0.0 {
                    out.c[l] += &ab.scale(s);
                }
            }
        }
    }
    out
}

/// `Ad_{exp Y} X` by the truncated series, with an estimate of the omitted tail.
#[derive(Debug, Clone)]
pub struct AdjointSeries {
    pub value: AlgebraElement,
    pub terms: usize,
    pub truncation_bound: f64,
}

pub const DEFAULT_SERIES_TERMS: usize = 16;

pub fn adjoint_exp(y: &AlgebraElement, x: &AlgebraElement, series_terms: usize) -> AdjointSeries {
    let n = series_terms.max(1);
    let mut term = x.clone();
    let mut acc = x.clone();
    for j in 1..n {
        term = bracket(y, &term);
        let inv = 1.0 / j as f64;
        term = AlgebraElement {
            c: std::array::from_fn(|i| term.c[i].scale(inv)),
        };
        if term.norm_max() == 0.0 {
            break;
        }
        acc = &acc + &term;
    }
    let r = 2.0 * y.norm_max().max(1.0);
    let mut tail = x.norm_max().max(1.0);
    for j in 1..=n {
        tail *= r / j as f64;
    }
    AdjointSeries {
        value: acc,
        terms: n,
        truncation_bound: tail * r.exp(),
    }
}

/// `(e^k - 1)/k` for even `k`, by its power series when the body is small.
pub fn expm1_over(k: &G) -> Result<G> {
    k.require_parity(Parity::Even)?;
    let b = k.body().abs();
    if b > 1.0 {
        let e = k.exp_even()?;
        return Ok(&(&e - 1.0) * &k.invert()?);
    }
    let n = k.generators();
    let mut acc = G::one(n);
    let mut term = G::one(n);
    for j in 1..64 {
        term = &term * k;
        term = term.scale(1.0 / (j + 1) as f64);
        if term.norm_max() < 1e-18 {
            break;
        }
        acc += &term;
    }
    Ok(acc)
}

/// Exact adjoint action on the ideal `{P_x, P_t, Q_x, Q_t}`.
pub fn adjoint_closed_form(y: &AlgebraElement, x: &AlgebraElement) -> Result<AlgebraElement> {
    if !x.in_ideal() {
        return Err(Error::OutOfIdeal);
    }
    let k = &y.c[L];
    let (eta, lambda) = (&y.c[QX], &y.c[QT]);
    let (alpha, beta, mu, nu) = (&x.c[PX], &x.c[PT], &x.c[QX], &x.c[QT]);
    let ek = k.exp_even()?;
    let emk = (-k).exp_even()?;
    let e2k = &ek * &ek;
    let em2k = &emk * &emk;
    let q = expm1_over(k)?;
    let px = &(&e2k * alpha) + &(&(&(eta * mu) * &ek) * &q).scale(2.0);
    let pt = &(&em2k * beta) + &(&(&(lambda * nu) * &em2k) * &q).scale(2.0);
    let gn = x.generators();
    AlgebraElement::new([G::zero(gn), px, pt, &ek * mu, &emk * nu])
}

/// Result of conjugating `L + αP_x + βP_t + μQ_x + νQ_t` to `L`.
#[derive(Debug, Clone)]
pub struct NonSplitting {
    pub conjugator: AlgebraElement,
    pub image: AlgebraElement,
    pub residual: f64,
    pub iterations: usize,
}

/// Solves `Ad_{exp Y} V = L` for `Y` in the ideal by iterating on the
/// linear part `Y ↦ [Y, L]`.
pub fn conjugate_to_l(v: &AlgebraElement) -> Result<NonSplitting> {
    let k = v.generators();
    if v.c[L].max_abs_diff(&G::one(k)) > 0.0 {
        return Err(Error::Domain("expected unit L coefficient".into()));
    }
    let target = AlgebraElement::even(k, L, 1.0);
    let mut y = AlgebraElement::zero(k);
    let mut image = v.clone();
    let mut iterations = 0;
    for it in 1..=32 {
        iterations = it;
        image = adjoint_exp(&y, v, DEFAULT_SERIES_TERMS).value;
        let r = &image - &target;
        if r.norm_max() < 1e-15 {
            break;
        }
        y.c[PX] += &r.c[PX].scale(0.5);
        y.c[PT] -= &r.c[PT].scale(0.5);
        y.c[QX] += &r.c[QX];
        y.c[QT] -= &r.c[QT];
    }
    let residual = image.max_abs_diff(&target);
    Ok(NonSplitting {
        conjugator: y,
        image,
        residual,
        iterations,
    })
}

/// `V(w^A) - W(v^A)` for every base variable, at a jet point.
pub fn field_commutator(v: &VectorFieldSpec, w: &VectorFieldSpec, p: &JetPoint) -> Result<Vec<G>> {
    let fv = prolongation::field_partials(v, p)?;
    let fw = prolongation::field_partials(w, p)?;
    let pv: Vec<_> = fv.zeta.iter().chain(&fv.phi).collect();
    let pw: Vec<_> = fw.zeta.iter().chain(&fw.phi).collect();
    let n = pv.len();
    let k = p.generators();
    Ok((0..n)
        .map(|a| {
            let mut acc = G::zero(k);
            for b in 0..n {
                acc += &(&pv[b].value * pw[a].d(b));
                acc -= &(&pw[b].value * pv[a].d(b));
            }
            acc
        })
        .collect())
}

/// Coefficient values of a field at a point, base order.
pub fn field_values(v: &VectorFieldSpec, p: &JetPoint) -> Result<Vec<G>> {
    let f = prolongation::field_partials(v, p)?;
    Ok(f.zeta
        .iter()
        .chain(&f.phi)
        .map(|q| q.value.clone())
        .collect())
}

fn max_dev(a: &[G], b: &[G]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.max_abs_diff(y))
        .fold(0.0, f64::max)
}

/// Max deviation between realized commutators and the table, over random
/// element pairs and points.
pub fn verify_structure<R: Rng + ?Sized>(pairs: usize, rng: &mut R) -> Result<f64> {
    let lay = ssg::Layout::new(10, 0);
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let x = AlgebraElement::random(lay.k, &lay.random, rng)?;
        let y = AlgebraElement::random(lay.k, &lay.random, rng)?;
        let p = lay.random_point(rng)?;
        let lhs = field_commutator(&x.realize(), &y.realize(), &p)?;
        let rhs = field_values(&bracket(&x, &y).realize(), &p)?;
        worst = worst.max(max_dev(&lhs, &rhs));
    }
    Ok(worst)
}

/// Field of `a P_x + b P_t + c D`.
pub fn realize_component(k: usize, a: [f64; 3]) -> VectorFieldSpec {
    let s = |c: f64| G::scalar(k, c);
    let v = component::p_x(k).combine(s(a[0]), &component::p_t(k), s(a[1]));
    let mut v = v.combine(G::one(k), &component::dilation(k), s(a[2]));
    v.name = format!("{}*P_x + {}*P_t + {}*D", a[0], a[1], a[2]);
    v
}

/// Same check for the component algebra `{P_x, P_t, D}`.
pub fn verify_component_structure<R: Rng + ?Sized>(pairs: usize, rng: &mut R) -> Result<f64> {
    let lay = component::Layout::default();
    let t = component_table();
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let a: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let b: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let p = lay.random_point(rng)?;
        let lhs = field_commutator(
            &realize_component(lay.k, a),
            &realize_component(lay.k, b),
            &p,
        )?;
        let c = t.bracket_basis(&a, &b);
        let rhs = field_values(&realize_component(lay.k, [c[0], c[1], c[2]]), &p)?;
        worst = worst.max(max_dev(&lhs, &rhs));
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Superspace,
    Component,
}

/// One-dimensional subalgebra template.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubalgebraTemplate {
    pub id: &'static str,
    pub family: Family,
    pub generator: &'static str,
    pub parameters: Vec<&'static str>,
    /// Coordinates in `(L, P_x, P_t, Q_x, Q_t)` or `(P_x, P_t, D)`; parameter
    /// slots are marked by name in `slots`.
    #[serde(skip)]
    pub fixed: Vec<f64>,
    #[serde(skip)]
    pub slots: Vec<(usize, &'static str)>,
}

/// Parameter values for instantiating a template.
#[derive(Debug, Clone)]
pub struct TemplateParams {
    pub eps: f64,
    pub mu: G,
    pub nu: G,
}

impl SubalgebraTemplate {
    /// Superspace instance; `eps` multiplies `P_t`, `mu` and `nu` the odd generators.
    pub fn instantiate(&self, prm: &TemplateParams) -> Result<AlgebraElement> {
        if self.family != Family::Superspace {
            return Err(Error::Usage(format!(
                "{} is a component subalgebra",
                self.id
            )));
        }
        let k = prm.mu.generators();
        let mut c: [G; 5] = std::array::from_fn(|i| G::scalar(k, self.fixed[i]));
        for &(i, name) in &self.slots {
            c[i] = match name {
                "eps" => G::scalar(k, prm.eps),
                "mu" => prm.mu.clone(),
                "nu" => prm.nu.clone(),
                _ => unreachable!("known slot"),
            };
        }
        AlgebraElement::new(c)
    }

    /// Component coordinates `(P_x, P_t, D)`.
    pub fn component_coords(&self) -> Result<[f64; 3]> {
        if self.family != Family::Component {
            return Err(Error::Usage(format!(
                "{} is a superspace subalgebra",
                self.id
            )));
        }
        Ok([self.fixed[0], self.fixed[1], self.fixed[2]])
    }
}

pub fn subalgebra_catalog() -> Vec<SubalgebraTemplate> {
    let s = |id, generator, fixed: [f64; 5], slots: Vec<(usize, &'static str)>| {
        let mut parameters: Vec<&'static str> = slots.iter().map(|s| s.1).collect();
        parameters.dedup();
        SubalgebraTemplate {
            id,
            family: Family::Superspace,
            generator,
            parameters,
            fixed: fixed.to_vec(),
            slots,
        }
    };
    let c = |id, generator, fixed: [f64; 3]| SubalgebraTemplate {
        id,
        family: Family::Component,
        generator,
        parameters: vec![],
        fixed: fixed.to_vec(),
        slots: vec![],
    };
    let (e, m, n) = ((PT, "eps"), (QX, "mu"), (QT, "nu"));
    vec![
        s("S1", "L", [1.0, 0.0, 0.0, 0.0, 0.0], vec![]),
        s("S2", "P_x", [0.0, 1.0, 0.0, 0.0, 0.0], vec![]),
        s("S3", "P_t", [0.0, 0.0, 1.0, 0.0, 0.0], vec![]),
        s("S4", "P_x + eps*P_t", [0.0, 1.0, 0.0, 0.0, 0.0], vec![e]),
        s("S5", "mu*Q_x", [0.0; 5], vec![m]),
        s("S6", "P_x + mu*Q_x", [0.0, 1.0, 0.0, 0.0, 0.0], vec![m]),
        s("S7", "P_t + mu*Q_x", [0.0, 0.0, 1.0, 0.0, 0.0], vec![m]),
        s(
            "S8",
            "P_x + eps*P_t + mu*Q_x",
            [0.0, 1.0, 0.0, 0.0, 0.0],
            vec![e, m],
        ),
        s("S9", "nu*Q_t", [0.0; 5], vec![n]),
        s("S10", "P_x + nu*Q_t", [0.0, 1.0, 0.0, 0.0, 0.0], vec![n]),
        s("S11", "P_t + nu*Q_t", [0.0, 0.0, 1.0, 0.0, 0.0], vec![n]),
        s(
            "S12",
            "P_x + eps*P_t + nu*Q_t",
            [0.0, 1.0, 0.0, 0.0, 0.0],
            vec![e, n],
        ),
        s("S13", "mu*Q_x + nu*Q_t", [0.0; 5], vec![m, n]),
        s(
            "S14",
            "P_x + mu*Q_x + nu*Q_t",
            [0.0, 1.0, 0.0, 0.0, 0.0],
            vec![m, n],
        ),
        s(
            "S15",
            "P_t + mu*Q_x + nu*Q_t",
            [0.0, 0.0, 1.0, 0.0, 0.0],
            vec![m, n],
        ),
        s(
            "S16",
            "P_x + eps*P_t + mu*Q_x + nu*Q_t",
            [0.0, 1.0, 0.0, 0.0, 0.0],
            vec![e, m, n],
        ),
        c("L1", "D", [0.0, 0.0, 1.0]),
        c("L2", "P_x", [1.0, 0.0, 0.0]),
        c("L3", "P_t", [0.0, 1.0, 0.0]),
        c("L4", "P_x + P_t", [1.0, 1.0, 0.0]),
        c("L5", "P_x - P_t", [1.0, -1.0, 0.0]),
    ]
}

pub fn find_subalgebra(id: &str) -> Result<SubalgebraTemplate> {
    subalgebra_catalog()
        .into_iter()
        .find(|t| t.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::UnknownVariable(id.to_string()))
}

/// JSON array of `{id, family, generator, parameters}`.
pub fn catalog_json() -> serde_json::Value {
    serde_json::to_value(subalgebra_catalog()).expect("plain data")
}

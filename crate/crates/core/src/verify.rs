//! Verification suites and their reports.
//!
//! Every check draws from its own RNG, seeded from the run seed and the check
//! name, so the report does not depend on scheduling.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::elliptic::{complete_k, jacobi, jacobi_taylor};
use crate::error::{Error, Result};
use crate::grassmann::{GrassmannNumber, Parity};
use crate::prolongation::{component, prolong, ssg, VectorFieldSpec};
use crate::reductions::catalog::{
    catalog_names, catalog_solution, elliptic_sign_pair_defect, entry_profiles, nilpotent_constant,
    CatalogParams, Tier, Tolerances,
};
use crate::reductions::complex::transformation_check;
use crate::reductions::obstruction::{qx_px_reduction, s5_obstruction, NonstandardField};
use crate::reductions::ode::{
    first_integral_check, integrate_profile_ode, OdeInitial, OdeOptions, ProfileOde,
};
use crate::reductions::{
    AnsatzProfiles, CaseId, ComponentCaseId, ComponentProfiles, Profile, ReductionCase,
};
use crate::superalgebra::{
    adjoint_closed_form, adjoint_exp, bracket, component_table, conjugate_to_l, structure_table,
    verify_component_structure, verify_structure, AlgebraElement, DEFAULT_SERIES_TERMS, L,
};
use crate::superfield::{operator_identities, random_superfield};

type G = GrassmannNumber<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Prolongation,
    Reductions,
    Solutions,
    Elliptic,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [
        Suite::Algebra,
        Suite::Prolongation,
        Suite::Reductions,
        Suite::Solutions,
        Suite::Elliptic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Prolongation => "prolongation",
            Suite::Reductions => "reductions",
            Suite::Solutions => "solutions",
            Suite::Elliptic => "elliptic",
            Suite::All => "all",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub tolerances: Tolerances,
    pub generators: usize,
    pub seed: u64,
    /// Samples per axis for catalog grids.
    pub grid_n: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            tolerances: Tolerances::default(),
            generators: 6,
            seed: 1,
            grid_n: 6,
            jobs: None,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.generators < 4 {
            return Err(Error::Usage(format!(
                "K = {} is below the minimum of 4",
                self.generators
            )));
        }
        if self.generators > 16 {
            return Err(Error::Usage(format!(
                "K = {} exceeds the supported maximum of 16",
                self.generators
            )));
        }
        if self.grid_n == 0 {
            return Err(Error::Usage("grid must be nonempty".into()));
        }
        if self.jobs == Some(0) {
            return Err(Error::Usage("--jobs must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub anchor: String,
    pub status: Status,
    pub max_residual: f64,
    pub tolerance: f64,
    pub samples: usize,
    #[serde(skip)]
    pub wall_ms: f64,
    #[serde(skip)]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    /// Deterministic JSON.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# {} suite\n\n| check | anchor | status | max residual | tolerance | samples | wall ms |\n|---|---|---|---|---|---|---|\n", self.suite);
        for c in &self.checks {
            s.push_str(&format!(
                "| {} | {} | {} | {:.3e} | {:.1e} | {} | {:.1} |\n",
                c.name,
                c.anchor,
                if c.status == Status::Pass {
                    "pass"
                } else {
                    "fail"
                },
                c.max_residual,
                c.tolerance,
                c.samples,
                c.wall_ms
            ));
        }
        s
    }
}

/// How a measured value is judged.
#[derive(Debug, Clone, Copy)]
enum Bound {
    /// `value <= tolerance` for the tier.
    Tier(Tier),
    /// `value <= v`.
    Max(f64),
    /// `value >= v`, for negative controls.
    Min(f64),
}

struct Outcome {
    value: f64,
    samples: usize,
}

type Run = Box<dyn Fn(&Ctx, &mut ChaCha8Rng) -> Result<Outcome> + Send + Sync>;

struct Check {
    name: String,
    anchor: String,
    bound: Bound,
    run: Run,
}

fn check<F>(name: impl Into<String>, anchor: &str, bound: Bound, f: F) -> Check
where
    F: Fn(&Ctx, &mut ChaCha8Rng) -> Result<Outcome> + Send + Sync + 'static,
{
    Check {
        name: name.into(),
        anchor: anchor.into(),
        bound,
        run: Box::new(f),
    }
}

struct Ctx {
    k: usize,
    grid_n: usize,
}

fn out(value: f64, samples: usize) -> Result<Outcome> {
    Ok(Outcome { value, samples })
}

fn seed_for(seed: u64, name: &str) -> u64 {
    let mut h = DefaultHasher::new();
    name.hash(&mut h);
    seed ^ h.finish()
}

fn algebra_checks() -> Vec<Check> {
    vec![
        check(
            "covariant and supersymmetry operator identities",
            "b5",
            Bound::Tier(Tier::Exact),
            |c, rng| {
                let mut worst: f64 = 0.0;
                let mut n = 0;
                for _ in 0..50 {
                    let f = random_superfield(c.k.max(4), 3, rng)?;
                    for _ in 0..10 {
                        let (x, t) = (rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
                        for (_, d) in operator_identities(&f, x, t)? {
                            worst = worst.max(d);
                            n += 1;
                        }
                    }
                }
                out(worst, n)
            },
        ),
        check(
            "realized superalgebra brackets",
            "table3",
            Bound::Tier(Tier::Exact),
            |_, rng| out(verify_structure(40, rng)?, 40),
        ),
        check(
            "realized component algebra brackets",
            "c4",
            Bound::Tier(Tier::Exact),
            |_, rng| out(verify_component_structure(20, rng)?, 20),
        ),
        check(
            "structure table antisymmetry and Jacobi",
            "table3",
            Bound::Tier(Tier::Exact),
            |_, _| {
                let (a, b) = (structure_table(), component_table());
                out(
                    a.antisymmetry_defect()
                        .max(a.jacobi_defect())
                        .max(b.antisymmetry_defect())
                        .max(b.jacobi_defect()),
                    2,
                )
            },
        ),
        check(
            "graded Jacobi on random triples",
            "table3",
            Bound::Tier(Tier::Exact),
            |_, rng| {
                let k = 8;
                let gens: Vec<usize> = (0..k).collect();
                let mut worst: f64 = 0.0;
                for _ in 0..100 {
                    let a = AlgebraElement::random(k, &gens, rng)?;
                    let b = AlgebraElement::random(k, &gens, rng)?;
                    let c = AlgebraElement::random(k, &gens, rng)?;
                    let j = &(&bracket(&a, &bracket(&b, &c)) + &bracket(&b, &bracket(&c, &a)))
                        + &bracket(&c, &bracket(&a, &b));
                    worst = worst.max(j.norm_max());
                }
                out(worst, 100)
            },
        ),
        check(
            "adjoint action closed form vs series",
            "symmie14",
            Bound::Tier(Tier::Trig),
            |_, rng| {
                let k = 8;
                let gens: Vec<usize> = (2..k).collect();
                let ks = [
                    G::scalar(k, -0.5),
                    G::scalar(k, 0.3),
                    G::monomial(k, &[0, 1], 1.0),
                ];
                let mut worst: f64 = 0.0;
                let mut n = 0;
                for kv in &ks {
                    for _ in 0..10 {
                        let mut y = AlgebraElement::random(k, &gens, rng)?;
                        y.c[L] = kv.clone();
                        let mut x = AlgebraElement::random(k, &gens, rng)?;
                        x.c[L] = G::zero(k);
                        let a = adjoint_exp(&y, &x, DEFAULT_SERIES_TERMS).value;
                        let b = adjoint_closed_form(&y, &x)?;
                        worst = worst.max(a.max_abs_diff(&b));
                        n += 1;
                    }
                }
                out(worst, n)
            },
        ),
        check(
            "non-splitting conjugation to L",
            "symmie33",
            Bound::Tier(Tier::Exact),
            |_, rng| {
                let k = 8;
                let gens: Vec<usize> = (0..k).collect();
                let mut worst: f64 = 0.0;
                for _ in 0..20 {
                    let mut v = AlgebraElement::random(k, &gens, rng)?;
                    v.c[L] = G::one(k);
                    worst = worst.max(conjugate_to_l(&v)?.residual);
                }
                out(worst, 20)
            },
        ),
    ]
}

fn ssg_fields(lay: &ssg::Layout) -> Vec<VectorFieldSpec> {
    let k = lay.k;
    vec![
        ssg::l(k),
        ssg::p_x(k),
        ssg::p_t(k),
        ssg::q_x(lay.param(0)),
        ssg::q_t(lay.param(0)),
        ssg::d_phi(k),
        ssg::phi_scaling(k),
    ]
}

fn component_fields(k: usize) -> Vec<VectorFieldSpec> {
    vec![
        component::p_x(k),
        component::p_t(k),
        component::dilation(k),
        component::d_u(k),
    ]
}

fn prolongation_checks() -> Vec<Check> {
    vec![
        check(
            "superfield prolongation recursive vs expanded",
            "symmie7A",
            Bound::Tier(Tier::Exact),
            |_, rng| {
                let lay = ssg::Layout::default();
                let fields = ssg_fields(&lay);
                let mut worst: f64 = 0.0;
                for _ in 0..100 {
                    let p = lay.random_point(rng)?;
                    for v in &fields {
                        worst =
                            worst.max(prolong(v, &p)?.max_abs_diff(&ssg::prolong_expanded(v, &p)?));
                    }
                }
                out(worst, 100 * fields.len())
            },
        ),
        check(
            "component prolongation recursive vs expanded",
            "c1C",
            Bound::Tier(Tier::Exact),
            |_, rng| {
                let lay = component::Layout::default();
                let fields = component_fields(lay.k);
                let mut worst: f64 = 0.0;
                for _ in 0..100 {
                    let p = lay.random_point(rng)?;
                    for v in &fields {
                        worst = worst.max(
                            prolong(v, &p)?.max_abs_diff(&component::prolong_expanded(v, &p)?),
                        );
                    }
                }
                out(worst, 100 * fields.len())
            },
        ),
        check(
            "superfield symmetry criterion for L, P_x, P_t, Q_x, Q_t",
            "symmie7",
            Bound::Tier(Tier::Exact),
            |_, rng| {
                let lay = ssg::Layout::default();
                let fields: Vec<_> = ssg_fields(&lay).into_iter().take(5).collect();
                let mut worst: f64 = 0.0;
                for _ in 0..200 {
                    let p = lay.random_point(rng)?;
                    for v in &fields {
                        worst = worst.max(ssg::symmetry_residual(v, &p)?.norm_max());
                    }
                }
                out(worst, 200 * fields.len())
            },
        ),
        check(
            "component symmetry criterion",
            "c1F",
            Bound::Tier(Tier::Exact),
            |_, rng| {
                let lay = component::Layout::default();
                let fields: Vec<_> = component_fields(lay.k).into_iter().take(3).collect();
                let mut worst: f64 = 0.0;
                for _ in 0..200 {
                    let p = lay.random_point(rng)?;
                    for v in &fields {
                        for r in component::symmetry_residual(v, &p)? {
                            worst = worst.max(r.norm_max());
                        }
                    }
                }
                out(worst, 200 * fields.len())
            },
        ),
        check(
            "negative control d_Phi (min body residual)",
            "symmie8",
            Bound::Min(0.1),
            |_, rng| {
                let lay = ssg::Layout::default();
                let v = ssg::d_phi(lay.k);
                let mut least = f64::INFINITY;
                let mut n = 0;
                while n < 200 {
                    let p = lay.random_point(rng)?;
                    if p.dep(0).body().cos().abs() < 0.1 {
                        continue;
                    }
                    least = least.min(ssg::symmetry_residual(&v, &p)?.body().abs());
                    n += 1;
                }
                out(least, n)
            },
        ),
        check(
            "negative control d_u in component form (max residual)",
            "c1G",
            Bound::Min(1e-3),
            |_, rng| {
                let lay = component::Layout::default();
                let v = component::d_u(lay.k);
                let mut least = f64::INFINITY;
                for _ in 0..50 {
                    let p = lay.random_point(rng)?;
                    let r = component::symmetry_residual(&v, &p)?;
                    least = least.min(r.iter().map(G::norm_max).fold(0.0, f64::max));
                }
                out(least, 50)
            },
        ),
    ]
}

fn reductions_checks() -> Vec<Check> {
    let mut v = Vec::new();
    const K: usize = 10;
    for id in CaseId::ALL {
        for eps in [1.0, -1.0] {
            if !id.uses_eps() && eps < 0.0 {
                continue;
            }
            let name = if id.uses_eps() {
                format!("reduction consistency {} eps={eps}", id.name())
            } else {
                format!("reduction consistency {}", id.name())
            };
            v.push(check(
                name,
                "table5",
                Bound::Tier(Tier::Trig),
                move |_, rng| {
                    let param = if id.odd_parameter().is_some() {
                        G::generator(K, 2)
                    } else {
                        G::zero(K)
                    };
                    let case = ReductionCase::new(id, eps, param)?;
                    let gens: Vec<usize> = (3..K).collect();
                    let mut worst: f64 = 0.0;
                    for _ in 0..6 {
                        let p = AnsatzProfiles::random(K, &gens, rng)?;
                        let x = G::scalar(K, rng.gen_range(0.3..1.5));
                        let t = G::scalar(K, rng.gen_range(0.3..1.5));
                        worst = worst.max(case.consistency_at(&p, &x, &t)?);
                        worst = worst.max(case.invariance_defect(&p, &x, &t)?);
                    }
                    out(worst, 6)
                },
            ));
        }
    }
    for id in ComponentCaseId::ALL {
        v.push(check(
            format!("component reduction {} and superspace slice", id.name()),
            "table2",
            Bound::Tier(Tier::Exact),
            move |_, rng| {
                let gens: Vec<usize> = (2..K).collect();
                let mut worst: f64 = 0.0;
                for _ in 0..4 {
                    let p = ComponentProfiles {
                        u: Profile::random(K, Parity::Even, &gens, 3, rng)?,
                        phi: Profile::random(K, Parity::Odd, &gens, 2, rng)?,
                        psi: Profile::random(K, Parity::Odd, &gens, 2, rng)?,
                    };
                    let x = G::scalar(K, rng.gen_range(0.5..1.5));
                    let t = G::scalar(K, rng.gen_range(0.5..1.5));
                    worst = worst.max(id.consistency_at(&p, &x, &t)?);
                    worst = worst.max(id.slice_defect(&p, &G::scalar(K, rng.gen_range(0.5..1.5)))?);
                }
                out(worst, 4)
            },
        ));
    }
    v.push(check(
        "rewritten S1 system on the d18 profiles",
        "d7",
        Bound::Tier(Tier::Trig),
        |c, _| {
            let p = CatalogParams {
                generators: c.k,
                ..CatalogParams::default()
            };
            let pr = entry_profiles("d18", &p)?;
            let case = ReductionCase::plain(CaseId::S1, 1.0, c.k)?;
            let mut worst: f64 = 0.0;
            for i in 0..26 {
                let s = G::scalar(c.k, 0.5 + 0.1 * i as f64);
                for r in case.s1_eliminated_residual(&pr, &s)? {
                    worst = worst.max(r.norm_max());
                }
            }
            out(worst, 26)
        },
    ));
    v.push(check(
        "C0 constant along d18",
        "d7",
        Bound::Tier(Tier::Trig),
        |c, _| {
            let p = CatalogParams {
                generators: c.k,
                ..CatalogParams::default()
            };
            let s: Vec<f64> = (0..26).map(|i| 0.5 + 0.1 * i as f64).collect();
            let (drift, soul) = nilpotent_constant(CaseId::S1, &entry_profiles("d18", &p)?, &s)?;
            out(if soul { drift } else { f64::INFINITY }, s.len())
        },
    ));
    v.push(check(
        "K0 constant along d5",
        "res4",
        Bound::Tier(Tier::Trig),
        |c, _| {
            let p = CatalogParams {
                generators: c.k,
                ..CatalogParams::default()
            };
            let s: Vec<f64> = (0..41).map(|i| -2.0 + 0.1 * i as f64).collect();
            let (drift, soul) = nilpotent_constant(CaseId::S4, &entry_profiles("d5", &p)?, &s)?;
            out(if soul { drift } else { f64::INFINITY }, s.len())
        },
    ));
    v.push(check(
        "beta sign pair for the elliptic entries",
        "ginv16",
        Bound::Tier(Tier::Trig),
        |_, _| {
            let s: Vec<f64> = (0..81).map(|i| -4.0 + 0.1 * i as f64).collect();
            let mut worst: f64 = 0.0;
            for m in [0.2, 0.5, 0.9] {
                worst = worst.max(elliptic_sign_pair_defect(m, &s)?);
            }
            out(worst, 3 * s.len())
        },
    ));
    for (name, anchor) in [
        ("alpha = i ln y maps d7 to d14", "d14"),
        ("z = ±2i sigma maps d14 to d15", "d15"),
        ("odd sector in y form", "d16"),
    ] {
        v.push(check(
            name,
            anchor,
            Bound::Tier(Tier::Trig),
            move |_, rng| {
                let r = transformation_check(rng, 200);
                out(
                    match anchor {
                        "d14" => r.d13_to_d14,
                        "d15" => r.d14_to_d15,
                        _ => r.d16,
                    },
                    r.samples,
                )
            },
        ));
    }
    v.push(check(
        "S5 invariants: full residual equals the transformed equation",
        "nonstandard2",
        Bound::Tier(Tier::Exact),
        |_, rng| {
            let k = 7;
            let field = NonstandardField::random(k, &[3, 4, 5, 6], rng)?;
            let rec = s5_obstruction(&G::generator(k, 2), &field, &[-0.4, 0.3, 1.1])?;
            out(rec.identity_defect, 9)
        },
    ));
    v.push(check(
        "S5 invariants: explicit x coefficient (min norm)",
        "nonstandard2",
        Bound::Min(1e-3),
        |_, rng| {
            let k = 7;
            let field = NonstandardField::random(k, &[3, 4, 5, 6], rng)?;
            let rec = s5_obstruction(&G::generator(k, 2), &field, &[-0.4, 0.3, 1.1])?;
            let mut least = f64::INFINITY;
            for (c, d) in rec.x_coefficient.iter().zip(&rec.x_dependence) {
                least = least.min(if (c - d).abs() < 1e-12 { *c } else { 0.0 });
            }
            out(least, rec.x_coefficient.len())
        },
    ));
    v.push(check(
        "{Q_x, P_x} reduction admits only k pi",
        "nonstandard3",
        Bound::Tier(Tier::Exact),
        |_, rng| {
            let rec = qx_px_reduction(6, [-7.0, 7.0], 281, rng)?;
            let ok = rec.roots.len() == 5 && rec.min_cos > 0.5;
            let worst = rec
                .reduction_defect
                .max(rec.root_error)
                .max(rec.soul_after_newton);
            out(if ok { worst } else { f64::INFINITY }, rec.roots.len())
        },
    ));
    v
}

fn solution_checks() -> Vec<Check> {
    catalog_names()
        .into_iter()
        .map(|name| {
            let p = CatalogParams::default();
            let tier = catalog_solution(name, &p)
                .map(|e| e.tier)
                .unwrap_or(Tier::Exact);
            check(
                format!("catalog {name}"),
                name,
                Bound::Tier(tier),
                move |c, _| {
                    let p = CatalogParams {
                        generators: c.k,
                        grid_n: c.grid_n,
                        ..CatalogParams::default()
                    };
                    let e = catalog_solution(name, &p)?;
                    let (worst, n) = e.max_residual()?;
                    out(worst, n)
                },
            )
        })
        .collect()
}

fn elliptic_checks() -> Vec<Check> {
    const MS: [f64; 9] = [-1.0, -0.5, 0.0, 0.1, 0.5, 0.75, 0.9, 0.999, 1.0];
    let sep = |h: f64| -> Result<(f64, f64)> {
        let sys = ProfileOde::Rebp { eps: -1.0, k0: 0.0 };
        let opts = OdeOptions {
            step: h,
            ..OdeOptions::default()
        };
        let t = integrate_profile_ode(sys, &sys.default_initial(), -2.0, 2.0, &opts)?;
        let worst = t
            .sigma
            .iter()
            .zip(&t.y)
            .map(|(s, y)| (y[0] - s.tanh().asin()).abs())
            .fold(0.0, f64::max);
        Ok((worst, first_integral_check(&t, 0.0)?))
    };
    vec![
        check(
            "Pythagorean identities",
            "ginv15",
            Bound::Tier(Tier::Exact),
            |_, _| {
                let mut worst: f64 = 0.0;
                let mut n = 0;
                for m in MS {
                    for i in 0..81 {
                        worst = worst.max(jacobi(-8.0 + 0.2 * i as f64, m)?.pythagorean_defect());
                        n += 1;
                    }
                }
                out(worst, n)
            },
        ),
        check(
            "sn at the quarter period",
            "ginv15",
            Bound::Tier(Tier::Exact),
            |_, _| {
                let mut worst: f64 = 0.0;
                for m in [-1.0f64, -0.5, 0.1, 0.5, 0.9] {
                    worst = worst.max((jacobi(complete_k(m)?, m)?.sn - 1.0).abs());
                }
                out(worst, 5)
            },
        ),
        check(
            "Taylor expansion reproduces sn, cn, dn at u + h",
            "ginv15",
            Bound::Tier(Tier::Exact),
            |_, _| {
                let h = 0.05;
                let mut worst: f64 = 0.0;
                let mut n = 0;
                for m in MS {
                    for i in 0..21 {
                        let u = -2.0 + 0.2 * i as f64;
                        let coeffs = jacobi_taylor(u, m, 14)?;
                        let e = jacobi(u + h, m)?;
                        for (c, v) in coeffs.iter().zip([e.sn, e.cn, e.dn]) {
                            let sum = c.iter().rev().fold(0.0, |acc, a| acc * h + a);
                            worst = worst.max((sum - v).abs());
                        }
                        n += 1;
                    }
                }
                out(worst, n)
            },
        ),
        check(
            "rebp first-integral drift at h = 0.01",
            "d2",
            Bound::Tier(Tier::Elliptic),
            move |_, _| out(sep(0.01)?.1, 401),
        ),
        check(
            "rebp RK4 order: |drift(h)/drift(h/2) / 16 - 1|",
            "d2",
            Bound::Max(0.2),
            move |_, _| {
                let (a, b) = (sep(0.01)?.1, sep(0.005)?.1);
                out((a / b / 16.0 - 1.0).abs(), 2)
            },
        ),
        check(
            "rebp separatrix matches arcsin(tanh)",
            "d5",
            Bound::Tier(Tier::Elliptic),
            move |_, _| out(sep(0.01)?.0, 401),
        ),
        check(
            "ginv12 at k = 0 is harmonic",
            "ginv12",
            Bound::Tier(Tier::Elliptic),
            |_, _| {
                let sys = ProfileOde::Ginv12 { eps: -1.0, k: 0.0 };
                let init = OdeInitial {
                    sigma0: 0.0,
                    y: vec![1.0],
                    dy: vec![0.0],
                };
                let t = integrate_profile_ode(sys, &init, 0.0, 2.0, &OdeOptions::default())?;
                let worst = t
                    .sigma
                    .iter()
                    .zip(&t.y)
                    .map(|(s, y)| (y[0] - s.cos()).abs())
                    .fold(0.0, f64::max);
                out(worst, t.len())
            },
        ),
    ]
}

fn suite_checks(s: Suite) -> Vec<Check> {
    match s {
        Suite::Algebra => algebra_checks(),
        Suite::Prolongation => prolongation_checks(),
        Suite::Reductions => reductions_checks(),
        Suite::Solutions => solution_checks(),
        Suite::Elliptic => elliptic_checks(),
        Suite::All => Suite::EACH.into_iter().flat_map(suite_checks).collect(),
    }
}

/// Names of the checks a suite runs, in report order.
pub fn check_names(s: Suite) -> Vec<String> {
    suite_checks(s).into_iter().map(|c| c.name).collect()
}

/// Runs a suite with checks in parallel; record order is fixed.
pub fn run_suite(cfg: &VerifyConfig) -> Result<Report> {
    cfg.validate()?;
    match cfg.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Usage(e.to_string()))?
            .install(|| run_checks(cfg)),
        None => run_checks(cfg),
    }
}

fn run_checks(cfg: &VerifyConfig) -> Result<Report> {
    let ctx = Ctx {
        k: cfg.generators,
        grid_n: cfg.grid_n,
    };
    let checks = suite_checks(cfg.suite);
    let records = checks
        .par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed_for(cfg.seed, &c.name));
            let start = Instant::now();
            let res = (c.run)(&ctx, &mut rng);
            let wall_ms = start.elapsed().as_secs_f64() * 1e3;
            let v = res.as_ref().map(|o| o.value).unwrap_or(f64::NAN);
            let (tolerance, pass) = match c.bound {
                Bound::Tier(t) => (cfg.tolerances.get(t), v <= cfg.tolerances.get(t)),
                Bound::Max(m) => (m, v <= m),
                Bound::Min(m) => (m, v >= m),
            };
            let (value, samples, error) = match res {
                Ok(o) => (o.value, o.samples, None),
                Err(e) => (f64::INFINITY, 0, Some(e.to_string())),
            };
            CheckRecord {
                name: c.name.clone(),
                anchor: c.anchor.clone(),
                status: if pass && error.is_none() && value.is_finite() {
                    Status::Pass
                } else {
                    Status::Fail
                },
                max_residual: value,
                tolerance,
                samples,
                wall_ms,
                error,
            }
        })
        .collect();
    Ok(Report {
        suite: cfg.suite.name().to_string(),
        checks: records,
    })
}

//! Truncated Taylor jets in even seed variables with supernumber coefficients.
//!
//! Entries are raw partial derivatives `∂^J f`, indexed by multi-indices of
//! total degree at most `order`. Products follow the Leibniz rule; the left
//! factor's coefficients stay on the left so graded signs come from the
//! Grassmann layer alone.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grassmann::{GrassmannNumber, Parity};
use crate::scalar::Scalar;
use crate::series::Analytic;

pub const MAX_ORDER: usize = 3;

#[derive(Debug, PartialEq, Eq)]
pub struct JetSpec {
    vars: Vec<String>,
    order: usize,
    indices: Vec<Vec<u8>>,
    leibniz: Vec<Vec<(usize, usize, u32)>>,
}

fn binom(n: u32, k: u32) -> u32 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl JetSpec {
    pub fn new<S: AsRef<str>>(vars: &[S], order: usize) -> Result<Arc<Self>> {
        if order == 0 && vars.is_empty() {
            return Err(Error::Usage("jet spec needs at least one variable".into()));
        }
        if order > MAX_ORDER {
            return Err(Error::Usage(format!(
                "jet order {order} exceeds {MAX_ORDER}"
            )));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Usage(format!("duplicate seed variable `{v}`")));
            }
        }
        let n = vars.len();
        let mut indices = Vec::new();
        for deg in 0..=order {
            let mut cur = vec![0u8; n];
            enumerate(&mut indices, &mut cur, 0, deg);
        }
        let position = |j: &[u8]| {
            indices
                .iter()
                .position(|x| x.as_slice() == j)
                .expect("index present")
        };
        let mut leibniz = Vec::with_capacity(indices.len());
        for j in &indices {
            let mut entries = Vec::new();
            for (ii, i) in indices.iter().enumerate() {
                if i.iter().zip(j).all(|(a, b)| a <= b) {
                    let rest: Vec<u8> = j.iter().zip(i).map(|(b, a)| b - a).collect();
                    let c = j
                        .iter()
                        .zip(i)
                        .map(|(&b, &a)| binom(b as u32, a as u32))
                        .product();
                    entries.push((ii, position(&rest), c));
                }
            }
            leibniz.push(entries);
        }
        Ok(Arc::new(Self {
            vars,
            order,
            indices,
            leibniz,
        }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[Vec<u8>] {
        &self.indices
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn position(&self, j: &[u8]) -> Option<usize> {
        self.indices.iter().position(|x| x.as_slice() == j)
    }

    fn same_vars(&self, other: &Self) -> bool {
        self.vars == other.vars
    }
}

fn enumerate(out: &mut Vec<Vec<u8>>, cur: &mut Vec<u8>, pos: usize, left: usize) {
    if pos + 1 >= cur.len() {
        if let Some(last) = cur.last_mut() {
            *last = left as u8;
            out.push(cur.clone());
            *cur.last_mut().unwrap() = 0;
        } else if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for v in (0..=left).rev() {
        cur[pos] = v as u8;
        enumerate(out, cur, pos + 1, left - v);
    }
    cur[pos] = 0;
}

#[derive(Clone, PartialEq)]
pub struct SuperJet<T> {
    spec: Arc<JetSpec>,
    c: Vec<GrassmannNumber<T>>,
}

impl<T: Scalar> SuperJet<T> {
    pub fn zero(spec: &Arc<JetSpec>, k: usize) -> Self {
        Self {
            spec: spec.clone(),
            c: vec![GrassmannNumber::zero(k); spec.len()],
        }
    }

    pub fn constant(spec: &Arc<JetSpec>, value: GrassmannNumber<T>) -> Self {
        let mut z = Self::zero(spec, value.generators());
        z.c[0] = value;
        z
    }

    pub fn variable(spec: &Arc<JetSpec>, name: &str, value: GrassmannNumber<T>) -> Result<Self> {
        let v = spec.var_index(name)?;
        let k = value.generators();
        let mut z = Self::constant(spec, value);
        if spec.order >= 1 {
            let mut j = vec![0u8; spec.vars.len()];
            j[v] = 1;
            let p = spec.position(&j).expect("first-order slot");
            z.c[p] = GrassmannNumber::one(k);
        }
        Ok(z)
    }

    /// Builds a jet from explicit raw derivatives, in [`JetSpec::indices`] order.
    pub fn from_coefficients(spec: &Arc<JetSpec>, c: Vec<GrassmannNumber<T>>) -> Result<Self> {
        if c.len() != spec.len() {
            return Err(Error::SpecMismatch);
        }
        Ok(Self {
            spec: spec.clone(),
            c,
        })
    }

    /// Same spec, constant value.
    pub fn lift(&self, value: GrassmannNumber<T>) -> Self {
        Self::constant(&self.spec, value)
    }

    pub fn lift_scalar(&self, v: T) -> Self {
        self.lift(GrassmannNumber::scalar(self.generators(), v))
    }

    pub fn spec(&self) -> &Arc<JetSpec> {
        &self.spec
    }

    pub fn generators(&self) -> usize {
        self.c[0].generators()
    }

    pub fn coefficients(&self) -> &[GrassmannNumber<T>] {
        &self.c
    }

    pub fn value(&self) -> &GrassmannNumber<T> {
        &self.c[0]
    }

    /// Raw derivative for multi-index `j`; zero beyond the order.
    pub fn at(&self, j: &[u8]) -> GrassmannNumber<T> {
        match self.spec.position(j) {
            Some(p) => self.c[p].clone(),
            None => GrassmannNumber::zero(self.generators()),
        }
    }

    /// Raw derivative with respect to the named variables, repetition allowed.
    pub fn d(&self, vars: &[&str]) -> Result<GrassmannNumber<T>> {
        let mut j = vec![0u8; self.spec.vars.len()];
        for v in vars {
            j[self.spec.var_index(v)?] += 1;
        }
        Ok(self.at(&j))
    }

    pub fn parity(&self) -> Parity {
        let mut p: Option<Parity> = None;
        for c in &self.c {
            if c.is_zero() {
                continue;
            }
            let q = c.parity();
            match p {
                None => p = Some(q),
                Some(prev) if prev != q => return Parity::Mixed,
                _ => {}
            }
        }
        p.unwrap_or(Parity::Even)
    }

    pub fn has_parity(&self, p: Parity) -> bool {
        self.c.iter().all(|c| c.has_parity(p))
    }

    pub fn require_parity(&self, p: Parity) -> Result<()> {
        if self.has_parity(p) {
            Ok(())
        } else {
            Err(Error::Parity {
                expected: p,
                found: self.parity(),
            })
        }
    }

    pub fn map(&self, f: impl Fn(&GrassmannNumber<T>) -> GrassmannNumber<T>) -> Self {
        Self {
            spec: self.spec.clone(),
            c: self.c.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|g| g.scale(s))
    }

    /// `g · f` with `g` constant.
    pub fn left_mul(&self, g: &GrassmannNumber<T>) -> Self {
        self.map(|c| g * c)
    }

    /// `f · g` with `g` constant.
    pub fn right_mul(&self, g: &GrassmannNumber<T>) -> Self {
        self.map(|c| c * g)
    }

    pub fn strip(&self, gen: usize) -> Self {
        self.map(|c| c.strip(gen))
    }

    pub fn extract_left(&self, gen: usize) -> Self {
        self.map(|c| c.extract_left(gen))
    }

    pub fn max_abs(&self) -> T {
        self.c.iter().fold(T::zero(), |m, c| m.max(c.norm_max()))
    }

    /// Drops derivatives above `order`.
    pub fn truncate(&self, order: usize) -> Self {
        if order >= self.spec.order {
            return self.clone();
        }
        let spec = JetSpec::new(&self.spec.vars, order).expect("lower order spec");
        let c = spec.indices.iter().map(|j| self.at(j)).collect();
        Self { spec, c }
    }

    /// Jet of `∂f/∂var`, one order lower.
    pub fn partial(&self, var: &str) -> Result<Self> {
        let v = self.spec.var_index(var)?;
        if self.spec.order == 0 {
            return Err(Error::Usage("cannot differentiate an order-0 jet".into()));
        }
        let spec = JetSpec::new(&self.spec.vars, self.spec.order - 1)?;
        let c = spec
            .indices
            .iter()
            .map(|j| {
                let mut j2 = j.clone();
                j2[v] += 1;
                self.at(&j2)
            })
            .collect();
        Ok(Self { spec, c })
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        assert!(self.spec.same_vars(&other.spec), "{}", Error::SpecMismatch);
        let o = self.spec.order.min(other.spec.order);
        (self.truncate(o), other.truncate(o))
    }

    fn mul_same(&self, o: &Self) -> Self {
        let c = self
            .spec
            .leibniz
            .iter()
            .map(|entries| {
                let mut acc = GrassmannNumber::zero(self.generators());
                for &(i, r, b) in entries {
                    if self.c[i].is_zero() || o.c[r].is_zero() {
                        continue;
                    }
                    let p = &self.c[i] * &o.c[r];
                    acc += &if b == 1 {
                        p
                    } else {
                        p.scale(T::of_usize(b as usize))
                    };
                }
                acc
            })
            .collect();
        Self {
            spec: self.spec.clone(),
            c,
        }
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if *self.spec != *o.spec {
            return Err(Error::SpecMismatch);
        }
        Ok(self.mul_same(o))
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        if *self.spec != *o.spec {
            return Err(Error::SpecMismatch);
        }
        Ok(self + o)
    }

    /// Faà di Bruno composition `f ∘ a` for even `a`.
    pub fn apply_analytic(&self, f: &dyn Analytic<T>) -> Result<Self> {
        self.require_parity(Parity::Even)?;
        let b = self.c[0].body();
        let nmax = self.spec.order + self.generators() / 2;
        let coef = f.taylor(b, nmax)?;
        let mut n = self.clone();
        n.c[0] = n.c[0].soul();
        let mut acc = self.lift_scalar(coef[nmax]);
        for j in (0..nmax).rev() {
            acc = acc.mul_same(&n);
            acc.c[0] += coef[j];
        }
        Ok(acc)
    }

    pub fn sin(&self) -> Self {
        self.apply_analytic(&crate::series::Sin)
            .expect("sin needs an even jet")
    }

    pub fn cos(&self) -> Self {
        self.apply_analytic(&crate::series::Cos)
            .expect("cos needs an even jet")
    }

    pub fn exp(&self) -> Self {
        self.apply_analytic(&crate::series::Exp)
            .expect("exp needs an even jet")
    }

    pub fn ln(&self) -> Result<Self> {
        self.apply_analytic(&crate::series::Ln)
    }

    pub fn sqrt(&self) -> Result<Self> {
        self.apply_analytic(&crate::series::Sqrt)
    }

    pub fn powf(&self, p: T) -> Result<Self> {
        self.apply_analytic(&crate::series::Powf(p))
    }

    pub fn recip(&self) -> Result<Self> {
        self.apply_analytic(&crate::series::Recip)
    }

    pub fn max_abs_diff(&self, o: &Self) -> T {
        (self - o).max_abs()
    }
}

impl<T: Scalar> fmt::Debug for SuperJet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (j, c) in self.spec.indices.iter().zip(&self.c) {
            m.entry(j, &format_args!("{c}"));
        }
        m.finish()
    }
}

impl<T: Scalar> Add for &SuperJet<T> {
    type Output = SuperJet<T>;
    fn add(self, o: &SuperJet<T>) -> SuperJet<T> {
        let (a, b) = self.aligned(o);
        SuperJet {
            spec: a.spec.clone(),
            c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect(),
        }
    }
}

impl<T: Scalar> Sub for &SuperJet<T> {
    type Output = SuperJet<T>;
    fn sub(self, o: &SuperJet<T>) -> SuperJet<T> {
        let (a, b) = self.aligned(o);
        SuperJet {
            spec: a.spec.clone(),
            c: a.c.iter().zip(&b.c).map(|(x, y)| x - y).collect(),
        }
    }
}

impl<T: Scalar> Mul for &SuperJet<T> {
    type Output = SuperJet<T>;
    fn mul(self, o: &SuperJet<T>) -> SuperJet<T> {
        let (a, b) = self.aligned(o);
        a.mul_same(&b)
    }
}

impl<T: Scalar> Neg for &SuperJet<T> {
    type Output = SuperJet<T>;
    fn neg(self) -> SuperJet<T> {
        self.scale(-T::one())
    }
}

impl<T: Scalar> Neg for SuperJet<T> {
    type Output = SuperJet<T>;
    fn neg(self) -> SuperJet<T> {
        self.scale(-T::one())
    }
}

macro_rules! owned_jet_binops {
    ($($tr:ident $m:ident),*) => {$(
        impl<T: Scalar> $tr for SuperJet<T> {
            type Output = SuperJet<T>;
            fn $m(self, o: SuperJet<T>) -> SuperJet<T> { (&self).$m(&o) }
        }
        impl<T: Scalar> $tr<&SuperJet<T>> for SuperJet<T> {
            type Output = SuperJet<T>;
            fn $m(self, o: &SuperJet<T>) -> SuperJet<T> { (&self).$m(o) }
        }
        impl<T: Scalar> $tr<SuperJet<T>> for &SuperJet<T> {
            type Output = SuperJet<T>;
            fn $m(self, o: SuperJet<T>) -> SuperJet<T> { self.$m(&o) }
        }
    )*};
}
owned_jet_binops!(Add add, Sub sub, Mul mul);

impl<T: Scalar> Add<T> for &SuperJet<T> {
    type Output = SuperJet<T>;
    fn add(self, v: T) -> SuperJet<T> {
        let mut out = self.clone();
        out.c[0] += v;
        out
    }
}

impl<T: Scalar> Add<T> for SuperJet<T> {
    type Output = SuperJet<T>;
    fn add(self, v: T) -> SuperJet<T> {
        &self + v
    }
}

impl<T: Scalar> Mul<T> for &SuperJet<T> {
    type Output = SuperJet<T>;
    fn mul(self, v: T) -> SuperJet<T> {
        self.scale(v)
    }
}

impl<T: Scalar> Mul<T> for SuperJet<T> {
    type Output = SuperJet<T>;
    fn mul(self, v: T) -> SuperJet<T> {
        self.scale(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_layout() {
        let s = JetSpec::new(&["x", "t"], 2).unwrap();
        let idx: Vec<Vec<u8>> = s.indices().to_vec();
        assert_eq!(
            idx,
            vec![
                vec![0, 0],
                vec![1, 0],
                vec![0, 1],
                vec![2, 0],
                vec![1, 1],
                vec![0, 2]
            ]
        );
        assert_eq!(JetSpec::new(&["x", "t", "u"], 3).unwrap().len(), 20);
        assert!(JetSpec::new(&["x", "x"], 1).is_err());
    }

    #[test]
    fn leibniz_binomials() {
        let s = JetSpec::new(&["x"], 3).unwrap();
        let x = SuperJet::<f64>::variable(&s, "x", GrassmannNumber::scalar(4, 2.0)).unwrap();
        let x3 = &(&x * &x) * &x;
        assert_eq!(x3.d(&["x", "x", "x"]).unwrap().body(), 6.0);
        assert_eq!(x3.d(&["x", "x"]).unwrap().body(), 12.0);
    }
}

//! Real Grassmann algebra with finitely many generators.
//!
//! A [`GrassmannNumber`] is a sparse list of `(mask, coefficient)` pairs,
//! where bit `i` of the mask marks generator `ξ_i`. Terms are kept sorted by
//! mask value and exact zeros are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{self, Analytic};

pub const DEFAULT_GENERATORS: usize = 8;
pub const MAX_GENERATORS: usize = 24;
pub const INVERT_EPSILON: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    pub fn of_degree(d: u32) -> Self {
        if d.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Parity of a product of homogeneous factors.
    pub fn product(self, other: Parity) -> Parity {
        match (self, other) {
            (Parity::Mixed, _) | (_, Parity::Mixed) => Parity::Mixed,
            (a, b) if a == b => Parity::Even,
            _ => Parity::Odd,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// 0 for even, 1 for odd.
    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
            Parity::Mixed => panic!("mixed parity has no grading bit"),
        }
    }
}

/// Sign of `ξ_a ξ_b` when merged into canonical order, for disjoint masks.
#[inline]
pub fn merge_sign(a: u32, b: u32) -> bool {
    let mut s = 0u32;
    let mut a2 = a >> 1;
    while a2 != 0 {
        s += (a2 & b).count_ones();
        a2 >>= 1;
    }
    s % 2 == 1
}

/// Generator count plus named reserved generator roles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraContext {
    generators: usize,
    reserved: BTreeMap<String, usize>,
}

impl AlgebraContext {
    /// Context with `θ1 = ξ_0` and `θ2 = ξ_1` reserved.
    pub fn new(generators: usize) -> Result<Self> {
        if !(2..=MAX_GENERATORS).contains(&generators) {
            return Err(Error::Usage(format!(
                "generator count must lie in 2..={MAX_GENERATORS}, got {generators}"
            )));
        }
        let mut reserved = BTreeMap::new();
        reserved.insert("theta1".to_string(), 0);
        reserved.insert("theta2".to_string(), 1);
        Ok(Self {
            generators,
            reserved,
        })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn theta1(&self) -> usize {
        self.reserved["theta1"]
    }

    pub fn theta2(&self) -> usize {
        self.reserved["theta2"]
    }

    pub fn index(&self, role: &str) -> Option<usize> {
        self.reserved.get(role).copied()
    }

    pub fn reserved(&self) -> &BTreeMap<String, usize> {
        &self.reserved
    }

    /// Reserves the lowest free generator for `role`. Idempotent per role.
    pub fn reserve(&mut self, role: &str) -> Result<usize> {
        if let Some(i) = self.index(role) {
            return Ok(i);
        }
        let i = (0..self.generators)
            .find(|i| !self.reserved.values().any(|v| v == i))
            .ok_or_else(|| Error::Usage(format!("no free generator left for `{role}`")))?;
        self.reserved.insert(role.to_string(), i);
        Ok(i)
    }

    /// Generators not bound to any role.
    pub fn free_generators(&self) -> Vec<usize> {
        (0..self.generators)
            .filter(|i| !self.reserved.values().any(|v| v == i))
            .collect()
    }

    pub fn generator<T: Scalar>(&self, role: &str) -> Result<GrassmannNumber<T>> {
        let i = self
            .index(role)
            .ok_or_else(|| Error::UnknownVariable(role.to_string()))?;
        Ok(GrassmannNumber::generator(self.generators, i))
    }
}

impl Default for AlgebraContext {
    fn default() -> Self {
        Self::new(DEFAULT_GENERATORS).expect("default generator count is valid")
    }
}

#[derive(Clone, PartialEq)]
pub struct GrassmannNumber<T> {
    k: usize,
    terms: Vec<(u32, T)>,
}

impl<T: Scalar> GrassmannNumber<T> {
    pub fn zero(k: usize) -> Self {
        assert!(k <= MAX_GENERATORS, "too many generators: {k}");
        Self {
            k,
            terms: Vec::new(),
        }
    }

    pub fn scalar(k: usize, v: T) -> Self {
        let mut z = Self::zero(k);
        if v != T::zero() {
            z.terms.push((0, v));
        }
        z
    }

    pub fn one(k: usize) -> Self {
        Self::scalar(k, T::one())
    }

    /// The generator `ξ_i` (zero-based).
    pub fn generator(k: usize, i: usize) -> Self {
        assert!(i < k, "generator index {i} out of range for K = {k}");
        Self {
            k,
            terms: vec![(1u32 << i, T::one())],
        }
    }

    /// Builds from arbitrary `(mask, coefficient)` pairs, summing duplicates.
    pub fn from_terms(k: usize, terms: impl IntoIterator<Item = (u32, T)>) -> Self {
        let limit = if k >= 32 { u32::MAX } else { (1u32 << k) - 1 };
        let mut map: BTreeMap<u32, T> = BTreeMap::new();
        for (m, c) in terms {
            assert!(
                m & !limit == 0,
                "mask {m:#b} uses generators beyond K = {k}"
            );
            *map.entry(m).or_insert_with(T::zero) += c;
        }
        Self {
            k,
            terms: map.into_iter().filter(|(_, c)| *c != T::zero()).collect(),
        }
    }

    /// Product of the listed generators in the given order.
    pub fn monomial(k: usize, gens: &[usize], c: T) -> Self {
        let mut out = Self::scalar(k, c);
        for &g in gens {
            out = &out * &Self::generator(k, g);
        }
        out
    }

    /// Same generator count, scalar value.
    pub fn lift(&self, v: T) -> Self {
        Self::scalar(self.k, v)
    }

    pub fn generators(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[(u32, T)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mask: u32) -> T {
        self.terms
            .binary_search_by_key(&mask, |t| t.0)
            .map(|i| self.terms[i].1)
            .unwrap_or_else(|_| T::zero())
    }

    pub fn body(&self) -> T {
        match self.terms.first() {
            Some(&(0, c)) => c,
            _ => T::zero(),
        }
    }

    pub fn soul(&self) -> Self {
        Self {
            k: self.k,
            terms: self.terms.iter().copied().filter(|t| t.0 != 0).collect(),
        }
    }

    pub fn body_soul(&self) -> (T, Self) {
        (self.body(), self.soul())
    }

    pub fn parity(&self) -> Parity {
        let mut even = false;
        let mut odd = false;
        for &(m, _) in &self.terms {
            if m.count_ones() % 2 == 0 {
                even = true;
            } else {
                odd = true;
            }
        }
        match (even, odd) {
            (_, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Mixed,
        }
    }

    /// Zero counts as both even and odd.
    pub fn has_parity(&self, p: Parity) -> bool {
        self.is_zero() || self.parity() == p
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

    pub fn even_part(&self) -> Self {
        self.filter(|m| m.count_ones() % 2 == 0)
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|m| m.count_ones() % 2 == 1)
    }

    fn filter(&self, keep: impl Fn(u32) -> bool) -> Self {
        Self {
            k: self.k,
            terms: self.terms.iter().copied().filter(|t| keep(t.0)).collect(),
        }
    }

    /// Max absolute coefficient.
    pub fn norm_max(&self) -> T {
        self.terms.iter().fold(T::zero(), |m, t| m.max(t.1.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (self - other).norm_max()
    }

    pub fn scale(&self, s: T) -> Self {
        if s == T::zero() {
            return Self::zero(self.k);
        }
        Self {
            k: self.k,
            terms: self.terms.iter().map(|&(m, c)| (m, c * s)).collect(),
        }
    }

    pub fn map_coefficients<U: Scalar>(&self, f: impl Fn(T) -> U) -> GrassmannNumber<U> {
        GrassmannNumber::from_terms(self.k, self.terms.iter().map(|&(m, c)| (m, f(c))))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::ContextMismatch {
                left: self.k,
                right: other.k,
            });
        }
        Ok(self.mul_unchecked(other))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::ContextMismatch {
                left: self.k,
                right: other.k,
            });
        }
        Ok(self.merge(other, T::one()))
    }

    fn merge(&self, other: &Self, s: T) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0, b[j].1 * s));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a[i].1 + b[j].1 * s;
                    if c != T::zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(m, c)| (m, c * s)));
        Self {
            k: self.k,
            terms: out,
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.k);
        }
        if self.k <= 16 {
            let mut dense = vec![T::zero(); 1usize << self.k];
            let mut touched = false;
            for &(ma, ca) in &self.terms {
                for &(mb, cb) in &other.terms {
                    if ma & mb != 0 {
                        continue;
                    }
                    let v = ca * cb;
                    let slot = &mut dense[(ma | mb) as usize];
                    if merge_sign(ma, mb) {
                        *slot -= v;
                    } else {
                        *slot += v;
                    }
                    touched = true;
                }
            }
            if !touched {
                return Self::zero(self.k);
            }
            let terms = dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| *c != T::zero())
                .map(|(m, c)| (m as u32, c))
                .collect();
            Self { k: self.k, terms }
        } else {
            let mut map: BTreeMap<u32, T> = BTreeMap::new();
            for &(ma, ca) in &self.terms {
                for &(mb, cb) in &other.terms {
                    if ma & mb != 0 {
                        continue;
                    }
                    let v = if merge_sign(ma, mb) {
                        -(ca * cb)
                    } else {
                        ca * cb
                    };
                    *map.entry(ma | mb).or_insert_with(T::zero) += v;
                }
            }
            Self {
                k: self.k,
                terms: map.into_iter().filter(|(_, c)| *c != T::zero()).collect(),
            }
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = self.lift(T::one());
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn invert(&self) -> Result<Self> {
        let b = self.body();
        if b.abs() <= T::of(INVERT_EPSILON) {
            return Err(Error::NonInvertible);
        }
        let n = self.soul().scale(-T::one() / b);
        let mut acc = self.lift(T::one());
        let mut pw = self.lift(T::one());
        for _ in 0..self.k {
            pw = &pw * &n;
            if pw.is_zero() {
                break;
            }
            acc += &pw;
        }
        Ok(acc.scale(T::one() / b))
    }

    /// `f(body) + Σ f^(j)(body) soul^j / j!` for even arguments.
    pub fn apply_analytic(&self, f: &dyn Analytic<T>) -> Result<Self> {
        self.require_parity(Parity::Even)?;
        let (b, s) = self.body_soul();
        let nmax = self.k / 2;
        let c = f.taylor(b, nmax)?;
        if s.is_zero() {
            return Ok(self.lift(c[0]));
        }
        let mut acc = self.lift(c[nmax]);
        for j in (0..nmax).rev() {
            acc = &acc * &s;
            acc += c[j];
        }
        Ok(acc)
    }

    /// # Panics
    /// On non-even input.
    pub fn sin(&self) -> Self {
        self.apply_analytic(&series::Sin)
            .expect("sin needs an even supernumber")
    }

    /// # Panics
    /// On non-even input.
    pub fn cos(&self) -> Self {
        self.apply_analytic(&series::Cos)
            .expect("cos needs an even supernumber")
    }

    pub fn exp_even(&self) -> Result<Self> {
        self.apply_analytic(&series::Exp)
    }

    pub fn log_even(&self) -> Result<Self> {
        self.require_parity(Parity::Even)?;
        if !(self.body() > T::zero()) {
            return Err(Error::Domain(format!(
                "log of non-positive body {}",
                self.body()
            )));
        }
        self.apply_analytic(&series::Ln)
    }

    pub fn sqrt(&self) -> Result<Self> {
        self.apply_analytic(&series::Sqrt)
    }

    pub fn powf(&self, p: T) -> Result<Self> {
        self.apply_analytic(&series::Powf(p))
    }

    /// Sets `ξ_g = 0`.
    pub fn strip(&self, g: usize) -> Self {
        let bit = 1u32 << g;
        self.filter(|m| m & bit == 0)
    }

    /// Left derivative `∂/∂ξ_g`.
    pub fn extract_left(&self, g: usize) -> Self {
        let bit = 1u32 << g;
        let below = bit - 1;
        let terms = self
            .terms
            .iter()
            .filter(|t| t.0 & bit != 0)
            .map(|&(m, c)| {
                let r = m & !bit;
                if (m & below).count_ones() % 2 == 1 {
                    (r, -c)
                } else {
                    (r, c)
                }
            })
            .collect();
        Self { k: self.k, terms }
    }

    /// True when no term involves generator `g`.
    pub fn free_of(&self, g: usize) -> bool {
        let bit = 1u32 << g;
        self.terms.iter().all(|t| t.0 & bit == 0)
    }

    /// Uniform `[-1, 1]` coefficients on every subset of `gens` with the
    /// requested parity and at most `max_degree` elements.
    pub fn sample_random_with<R: Rng + ?Sized>(
        k: usize,
        parity: Parity,
        max_degree: usize,
        gens: &[usize],
        rng: &mut R,
    ) -> Result<Self> {
        if parity == Parity::Mixed {
            return Err(Error::Usage("cannot sample mixed parity".into()));
        }
        if max_degree > k {
            return Err(Error::Usage(format!("degree {max_degree} exceeds K = {k}")));
        }
        let want = parity.bit();
        let mut terms = Vec::new();
        let n = gens.len();
        for sub in 0u32..(1u32 << n) {
            let d = sub.count_ones();
            if d % 2 != want || d as usize > max_degree {
                continue;
            }
            let mut m = 0u32;
            for (i, &g) in gens.iter().enumerate() {
                if sub & (1 << i) != 0 {
                    m |= 1 << g;
                }
            }
            let c: f64 = rng.gen_range(-1.0..=1.0);
            terms.push((m, T::of(c)));
        }
        Ok(Self::from_terms(k, terms))
    }

    pub fn sample_random(k: usize, parity: Parity, max_degree: usize, seed: u64) -> Result<Self> {
        let gens: Vec<usize> = (0..k).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::sample_random_with(k, parity, max_degree, &gens, &mut rng)
    }

    /// Parses the [`fmt::Display`] grammar, e.g. `3 - 0.5*x1^x2 + x3`.
    pub fn parse(k: usize, s: &str) -> Result<Self> {
        let err = |m: &str| Error::Parse(format!("{m} in `{s}`"));
        let word = |c: char| c.is_alphanumeric() || c == '.';
        let mut prev: Option<char> = None;
        let mut gap = false;
        for c in s.chars() {
            if c.is_whitespace() {
                gap = true;
                continue;
            }
            if gap && prev.is_some_and(word) && word(c) {
                return Err(err("missing operator"));
            }
            prev = Some(c);
            gap = false;
        }
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(err("empty input"));
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let mut neg = false;
            let mut signs = 0;
            while i < chars.len() && matches!(chars[i], '+' | '-') {
                neg ^= chars[i] == '-';
                signs += 1;
                i += 1;
            }
            if signs == 0 && !pieces.is_empty() {
                return Err(err("missing operator"));
            }
            let mut term = String::new();
            while i < chars.len() {
                let ch = chars[i];
                let exponent =
                    matches!(term.chars().last(), Some('e' | 'E')) && !term.contains('x');
                if matches!(ch, '+' | '-') && !exponent {
                    break;
                }
                term.push(ch);
                i += 1;
            }
            if term.is_empty() {
                return Err(err("dangling operator"));
            }
            pieces.push((neg, term));
        }
        let mut acc = Self::zero(k);
        for (neg, p) in pieces {
            let (coef, gens) = match p.find('x') {
                None => (p.as_str(), ""),
                Some(0) => ("", p.as_str()),
                Some(pos) => {
                    let (c, g) = p.split_at(pos);
                    (
                        c.strip_suffix('*')
                            .ok_or_else(|| err("expected `*` before generators"))?,
                        g,
                    )
                }
            };
            let c: f64 = if coef.is_empty() {
                1.0
            } else {
                coef.parse().map_err(|_| err("bad coefficient"))?
            };
            let mut idx = Vec::new();
            if !gens.is_empty() {
                for g in gens.split('^') {
                    let n: usize = g
                        .strip_prefix('x')
                        .and_then(|d| d.parse().ok())
                        .ok_or_else(|| err("bad generator"))?;
                    if n == 0 || n > k {
                        return Err(err("generator index out of range"));
                    }
                    idx.push(n - 1);
                }
            }
            let c = if neg { -c } else { c };
            acc += &Self::monomial(k, &idx, T::of(c));
        }
        Ok(acc)
    }
}

fn check_k(a: usize, b: usize) {
    if a != b {
        panic!("{}", Error::ContextMismatch { left: a, right: b });
    }
}

impl<T: Scalar> fmt::Display for GrassmannNumber<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, &(m, c)) in self.terms.iter().enumerate() {
            let neg = c < T::zero();
            let a = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let gens: Vec<String> = (0..32)
                .filter(|i| m & (1 << i) != 0)
                .map(|i| format!("x{}", i + 1))
                .collect();
            if m == 0 {
                write!(f, "{a}")?;
            } else if a == T::one() {
                write!(f, "{}", gens.join("^"))?;
            } else {
                write!(f, "{a}*{}", gens.join("^"))?;
            }
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for GrassmannNumber<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{}[{}]", self.k, self)
    }
}

impl<T: Scalar> Add for &GrassmannNumber<T> {
    type Output = GrassmannNumber<T>;
    fn add(self, o: &GrassmannNumber<T>) -> GrassmannNumber<T> {
        check_k(self.k, o.k);
        self.merge(o, T::one())
    }
}

impl<T: Scalar> Sub for &GrassmannNumber<T> {
    type Output = GrassmannNumber<T>;
    fn sub(self, o: &GrassmannNumber<T>) -> GrassmannNumber<T> {
        check_k(self.k, o.k);
        self.merge(o, -T::one())
    }
}

impl<T: Scalar> Mul for &GrassmannNumber<T> {
    type Output = GrassmannNumber<T>;
    fn mul(self, o: &GrassmannNumber<T>) -> GrassmannNumber<T> {
        check_k(self.k, o.k);
        self.mul_unchecked(o)
    }
}

impl<T: Scalar> Neg for &GrassmannNumber<T> {
    type Output = GrassmannNumber<T>;
    fn neg(self) -> GrassmannNumber<T> {
        self.scale(-T::one())
    }
}

impl<T: Scalar> Neg for GrassmannNumber<T> {
    type Output = GrassmannNumber<T>;
    fn neg(self) -> GrassmannNumber<T> {
        self.scale(-T::one())
    }
}

macro_rules! owned_binops {
    ($($tr:ident $m:ident),*) => {$(
        impl<T: Scalar> $tr for GrassmannNumber<T> {
            type Output = GrassmannNumber<T>;
            fn $m(self, o: GrassmannNumber<T>) -> GrassmannNumber<T> { (&self).$m(&o) }
        }
        impl<T: Scalar> $tr<&GrassmannNumber<T>> for GrassmannNumber<T> {
            type Output = GrassmannNumber<T>;
            fn $m(self, o: &GrassmannNumber<T>) -> GrassmannNumber<T> { (&self).$m(o) }
        }
        impl<T: Scalar> $tr<GrassmannNumber<T>> for &GrassmannNumber<T> {
            type Output = GrassmannNumber<T>;
            fn $m(self, o: GrassmannNumber<T>) -> GrassmannNumber<T> { self.$m(&o) }
        }
    )*};
}
owned_binops!(Add add, Sub sub, Mul mul);

impl<T: Scalar> Add<T> for &GrassmannNumber<T> {
    type Output = GrassmannNumber<T>;
    fn add(self, v: T) -> GrassmannNumber<T> {
        self + &self.lift(v)
    }
}

impl<T: Scalar> Add<T> for GrassmannNumber<T> {
    type Output = GrassmannNumber<T>;
    fn add(self, v: T) -> GrassmannNumber<T> {
        &self + v
    }
}

impl<T: Scalar> Sub<T> for &GrassmannNumber<T> {
    type Output = GrassmannNumber<T>;
    fn sub(self, v: T) -> GrassmannNumber<T> {
        self + (-v)
    }
}

impl<T: Scalar> Sub<T> for GrassmannNumber<T> {
    type Output = GrassmannNumber<T>;
    fn sub(self, v: T) -> GrassmannNumber<T> {
        &self + (-v)
    }
}

impl<T: Scalar> Mul<T> for &GrassmannNumber<T> {
    type Output = GrassmannNumber<T>;
    fn mul(self, v: T) -> GrassmannNumber<T> {
        self.scale(v)
    }
}

impl<T: Scalar> Mul<T> for GrassmannNumber<T> {
    type Output = GrassmannNumber<T>;
    fn mul(self, v: T) -> GrassmannNumber<T> {
        self.scale(v)
    }
}

impl<T: Scalar> AddAssign<&GrassmannNumber<T>> for GrassmannNumber<T> {
    fn add_assign(&mut self, o: &GrassmannNumber<T>) {
        *self = &*self + o;
    }
}

impl<T: Scalar> AddAssign for GrassmannNumber<T> {
    fn add_assign(&mut self, o: GrassmannNumber<T>) {
        *self = &*self + &o;
    }
}

impl<T: Scalar> SubAssign<&GrassmannNumber<T>> for GrassmannNumber<T> {
    fn sub_assign(&mut self, o: &GrassmannNumber<T>) {
        *self = &*self - o;
    }
}

impl<T: Scalar> SubAssign for GrassmannNumber<T> {
    fn sub_assign(&mut self, o: GrassmannNumber<T>) {
        *self = &*self - &o;
    }
}

impl<T: Scalar> AddAssign<T> for GrassmannNumber<T> {
    fn add_assign(&mut self, v: T) {
        *self = &*self + v;
    }
}

impl<T: Scalar> MulAssign<&GrassmannNumber<T>> for GrassmannNumber<T> {
    fn mul_assign(&mut self, o: &GrassmannNumber<T>) {
        *self = &*self * o;
    }
}

impl<T: Scalar> MulAssign<T> for GrassmannNumber<T> {
    fn mul_assign(&mut self, v: T) {
        *self = self.scale(v);
    }
}

impl<T: Scalar> Serialize for GrassmannNumber<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = GrassmannNumber<f64>;

    #[test]
    fn merge_sign_counts_inversions() {
        // ξ2 ξ1 = -ξ1 ξ2
        assert!(merge_sign(0b10, 0b01));
        assert!(!merge_sign(0b01, 0b10));
        // ξ3 (ξ1 ξ2) = + ξ1 ξ2 ξ3
        assert!(!merge_sign(0b100, 0b011));
    }

    #[test]
    fn display_round_trip() {
        let a = G::parse(8, "3 - 0.5*x1^x2 + x3").unwrap();
        assert_eq!(a.to_string(), "3 - 0.5*x1^x2 + x3");
        assert_eq!(G::parse(8, &a.to_string()).unwrap(), a);
        assert_eq!(G::parse(8, "x2^x1").unwrap(), G::monomial(8, &[0, 1], -1.0));
        assert_eq!(G::parse(8, "1e-3").unwrap(), G::scalar(8, 1e-3));
        assert!(G::parse(8, "x9").is_err());
        assert!(G::parse(8, "2+").is_err());
    }

    #[test]
    fn extract_left_signs() {
        let t = G::monomial(8, &[0, 1], 1.0);
        assert_eq!(t.extract_left(0), G::generator(8, 1));
        assert_eq!(t.extract_left(1), -G::generator(8, 0));
    }

    #[test]
    fn context_reserve() {
        let mut c = AlgebraContext::default();
        assert_eq!(c.reserve("mu").unwrap(), 2);
        assert_eq!(c.reserve("mu").unwrap(), 2);
        assert_eq!(c.reserve("nu").unwrap(), 3);
        assert_eq!(c.free_generators(), vec![4, 5, 6, 7]);
        assert!(AlgebraContext::new(1).is_err());
    }
}

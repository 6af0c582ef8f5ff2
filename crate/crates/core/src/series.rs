//! Truncated univariate Taylor series and the [`Analytic`] function trait.
//!
//! A [`Series`] stores normalized coefficients `c_k = f^(k)(x0) / k!`.
//! Elementary functions are composed through the usual convolution
//! recurrences, so `Series::variable(x0, n).sin()` yields the Taylor
//! expansion of `sin` at `x0` to degree `n`.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Series<T> {
    c: Vec<T>,
}

impl<T: Scalar> Series<T> {
    pub fn from_coeffs(c: Vec<T>) -> Self {
        assert!(!c.is_empty(), "series needs at least one coefficient");
        Self { c }
    }

    pub fn constant(v: T, n: usize) -> Self {
        let mut c = vec![T::zero(); n + 1];
        c[0] = v;
        Self { c }
    }

    /// The identity function expanded at `x0`.
    pub fn variable(x0: T, n: usize) -> Self {
        let mut c = vec![T::zero(); n + 1];
        c[0] = x0;
        if n >= 1 {
            c[1] = T::one();
        }
        Self { c }
    }

    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.c
    }

    pub fn value(&self) -> T {
        self.c[0]
    }

    /// `k`-th raw derivative at the expansion point.
    pub fn derivative_at(&self, k: usize) -> T {
        let mut f = T::one();
        for j in 2..=k {
            f *= T::of_usize(j);
        }
        self.c.get(k).copied().unwrap_or_else(T::zero) * f
    }

    /// Evaluates the truncated polynomial at offset `h` from the expansion point.
    pub fn eval(&self, h: T) -> T {
        self.c.iter().rev().fold(T::zero(), |acc, &c| acc * h + c)
    }

    /// Formal derivative; the degree drops by one.
    pub fn differentiate(&self) -> Self {
        if self.c.len() == 1 {
            return Self::constant(T::zero(), 0);
        }
        let c = (1..self.c.len())
            .map(|k| self.c[k] * T::of_usize(k))
            .collect();
        Self { c }
    }

    /// Re-expands the truncated polynomial about `x0 + h`.
    pub fn shift(&self, h: T) -> Self {
        let n = self.c.len();
        let mut out = self.c.clone();
        // repeated synthetic division (Taylor shift)
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let v = out[j + 1] * h;
                out[j] += v;
            }
        }
        Self { c: out }
    }

    fn n(&self) -> usize {
        self.c.len()
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.n(), other.n(), "series degree mismatch");
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            c: self.c.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn add_scalar(&self, s: T) -> Self {
        let mut c = self.c.clone();
        c[0] += s;
        Self { c }
    }

    pub fn div(&self, b: &Self) -> Result<Self> {
        self.check(b);
        if b.c[0] == T::zero() {
            return Err(Error::Domain("series division by zero".into()));
        }
        let n = self.n();
        let mut q = vec![T::zero(); n];
        for k in 0..n {
            let mut acc = self.c[k];
            for j in 1..=k {
                acc -= b.c[j] * q[k - j];
            }
            q[k] = acc / b.c[0];
        }
        Ok(Self { c: q })
    }

    pub fn recip(&self) -> Result<Self> {
        Self::constant(T::one(), self.degree()).div(self)
    }

    /// Integrates `y' = q * a'` given `y(x0) = y0`.
    fn integrate_chain(&self, q: &Self, y0: T) -> Self {
        let n = self.n();
        let mut y = vec![T::zero(); n];
        y[0] = y0;
        for k in 1..n {
            let mut acc = T::zero();
            for j in 1..=k {
                acc += T::of_usize(j) * self.c[j] * q.c[k - j];
            }
            y[k] = acc / T::of_usize(k);
        }
        Self { c: y }
    }

    pub fn exp(&self) -> Self {
        let n = self.n();
        let mut e = vec![T::zero(); n];
        e[0] = self.c[0].exp();
        for k in 1..n {
            let mut acc = T::zero();
            for j in 1..=k {
                acc += T::of_usize(j) * self.c[j] * e[k - j];
            }
            e[k] = acc / T::of_usize(k);
        }
        Self { c: e }
    }

    pub fn ln(&self) -> Result<Self> {
        let a0 = self.c[0];
        if !(a0 > T::zero()) {
            return Err(Error::Domain(format!("ln of non-positive value {a0}")));
        }
        let n = self.n();
        let mut l = vec![T::zero(); n];
        l[0] = a0.ln();
        for k in 1..n {
            let mut acc = T::zero();
            for j in 1..k {
                acc += T::of_usize(j) * l[j] * self.c[k - j];
            }
            l[k] = (self.c[k] - acc / T::of_usize(k)) / a0;
        }
        Ok(Self { c: l })
    }

    fn trig_pair(&self, hyperbolic: bool) -> (Self, Self) {
        let n = self.n();
        let mut s = vec![T::zero(); n];
        let mut c = vec![T::zero(); n];
        if hyperbolic {
            s[0] = self.c[0].sinh();
            c[0] = self.c[0].cosh();
        } else {
            s[0] = self.c[0].sin();
            c[0] = self.c[0].cos();
        }
        for k in 1..n {
            let mut ss = T::zero();
            let mut cc = T::zero();
            for j in 1..=k {
                let w = T::of_usize(j) * self.c[j];
                ss += w * c[k - j];
                cc += w * s[k - j];
            }
            let kk = T::of_usize(k);
            s[k] = ss / kk;
            c[k] = if hyperbolic { cc / kk } else { -cc / kk };
        }
        (Self { c: s }, Self { c })
    }

    pub fn sin_cos(&self) -> (Self, Self) {
        self.trig_pair(false)
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    pub fn sinh(&self) -> Self {
        self.trig_pair(true).0
    }

    pub fn cosh(&self) -> Self {
        self.trig_pair(true).1
    }

    pub fn tan(&self) -> Result<Self> {
        let (s, c) = self.sin_cos();
        s.div(&c)
    }

    pub fn tanh(&self) -> Self {
        let (s, c) = self.trig_pair(true);
        s.div(&c).expect("cosh is positive")
    }

    pub fn sqrt(&self) -> Result<Self> {
        let a0 = self.c[0];
        if !(a0 > T::zero()) {
            return Err(Error::Domain(format!(
                "sqrt expansion at non-positive value {a0}"
            )));
        }
        let n = self.n();
        let mut r = vec![T::zero(); n];
        r[0] = a0.sqrt();
        let two = T::of(2.0);
        for k in 1..n {
            let mut acc = self.c[k];
            for j in 1..k {
                acc -= r[j] * r[k - j];
            }
            r[k] = acc / (two * r[0]);
        }
        Ok(Self { c: r })
    }

    pub fn powf(&self, p: T) -> Result<Self> {
        let a0 = self.c[0];
        if !(a0 > T::zero()) {
            return Err(Error::Domain(format!(
                "powf expansion at non-positive value {a0}"
            )));
        }
        let n = self.n();
        let mut w = vec![T::zero(); n];
        w[0] = a0.powf(p);
        for k in 1..n {
            let mut acc = T::zero();
            for j in 1..=k {
                acc += ((p + T::one()) * T::of_usize(j) - T::of_usize(k)) * self.c[j] * w[k - j];
            }
            w[k] = acc / (T::of_usize(k) * a0);
        }
        Ok(Self { c: w })
    }

    pub fn atan(&self) -> Self {
        let q = (self * self)
            .add_scalar(T::one())
            .recip()
            .expect("1 + a^2 > 0");
        self.integrate_chain(&q, self.c[0].atan())
    }

    fn asin_derivative(&self) -> Result<Self> {
        let a0 = self.c[0];
        if !(a0.abs() < T::one()) {
            return Err(Error::Domain(format!(
                "asin/acos expansion at |x| >= 1: {a0}"
            )));
        }
        (self * self)
            .scale(-T::one())
            .add_scalar(T::one())
            .sqrt()?
            .recip()
    }

    pub fn asin(&self) -> Result<Self> {
        let q = self.asin_derivative()?;
        Ok(self.integrate_chain(&q, self.c[0].asin()))
    }

    pub fn acos(&self) -> Result<Self> {
        let q = self.asin_derivative()?.scale(-T::one());
        Ok(self.integrate_chain(&q, self.c[0].acos()))
    }

    pub fn atanh(&self) -> Result<Self> {
        let a0 = self.c[0];
        if !(a0.abs() < T::one()) {
            return Err(Error::Domain(format!("atanh expansion at |x| >= 1: {a0}")));
        }
        let q = (self * self)
            .scale(-T::one())
            .add_scalar(T::one())
            .recip()?;
        Ok(self.integrate_chain(&q, a0.atanh()))
    }

    /// Composes `f` after this series.
    pub fn compose(&self, f: &dyn Analytic<T>) -> Result<Self> {
        let n = self.degree();
        let outer = f.taylor(self.c[0], n)?;
        let mut h = self.clone();
        h.c[0] = T::zero();
        let mut acc = Self::constant(outer[n], n);
        for k in (0..n).rev() {
            acc = (&acc * &h).add_scalar(outer[k]);
        }
        Ok(acc)
    }
}

impl<T: Scalar> Add for &Series<T> {
    type Output = Series<T>;
    fn add(self, o: &Series<T>) -> Series<T> {
        self.check(o);
        Series {
            c: self.c.iter().zip(&o.c).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<T: Scalar> Sub for &Series<T> {
    type Output = Series<T>;
    fn sub(self, o: &Series<T>) -> Series<T> {
        self.check(o);
        Series {
            c: self.c.iter().zip(&o.c).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl<T: Scalar> Neg for &Series<T> {
    type Output = Series<T>;
    fn neg(self) -> Series<T> {
        self.scale(-T::one())
    }
}

impl<T: Scalar> Mul for &Series<T> {
    type Output = Series<T>;
    fn mul(self, o: &Series<T>) -> Series<T> {
        self.check(o);
        let n = self.n();
        let mut c = vec![T::zero(); n];
        for (i, &a) in self.c.iter().enumerate() {
            if a == T::zero() {
                continue;
            }
            for j in 0..n - i {
                c[i + j] += a * o.c[j];
            }
        }
        Series { c }
    }
}

/// A real function that can report its Taylor coefficients at a point.
pub trait Analytic<T: Scalar>: Send + Sync {
    /// Normalized Taylor coefficients `f^(k)(x) / k!` for `k = 0..=n`.
    fn taylor(&self, x: T, n: usize) -> Result<Vec<T>>;

    fn value(&self, x: T) -> Result<T> {
        Ok(self.taylor(x, 0)?[0])
    }
}

impl<T: Scalar, A: Analytic<T> + ?Sized> Analytic<T> for Arc<A> {
    fn taylor(&self, x: T, n: usize) -> Result<Vec<T>> {
        (**self).taylor(x, n)
    }
}

impl<T: Scalar, A: Analytic<T> + ?Sized> Analytic<T> for &A {
    fn taylor(&self, x: T, n: usize) -> Result<Vec<T>> {
        (**self).taylor(x, n)
    }
}

macro_rules! elementary {
    ($($(#[$m:meta])* $name:ident => |$s:ident| $body:expr;)*) => {
        $(
            $(#[$m])*
            #[derive(Debug, Clone, Copy, Default)]
            pub struct $name;

            impl<T: Scalar> Analytic<T> for $name {
                fn taylor(&self, x: T, n: usize) -> Result<Vec<T>> {
                    let $s = Series::variable(x, n);
                    Ok($body.into_coeffs())
                }
            }
        )*
    };
}

elementary! {
    Sin => |s| s.sin();
    Cos => |s| s.cos();
    Exp => |s| s.exp();
    Ln => |s| s.ln()?;
    Sqrt => |s| s.sqrt()?;
    Sinh => |s| s.sinh();
    Cosh => |s| s.cosh();
    Tan => |s| s.tan()?;
    Tanh => |s| s.tanh();
    Atan => |s| s.atan();
    Asin => |s| s.asin()?;
    Acos => |s| s.acos()?;
    Atanh => |s| s.atanh()?;
    Recip => |s| s.recip()?;
}

/// `x^p` for positive `x`.
#[derive(Debug, Clone, Copy)]
pub struct Powf<T>(pub T);

impl<T: Scalar> Analytic<T> for Powf<T> {
    fn taylor(&self, x: T, n: usize) -> Result<Vec<T>> {
        Ok(Series::variable(x, n).powf(self.0)?.into_coeffs())
    }
}

/// Polynomial with coefficients in ascending order.
#[derive(Debug, Clone)]
pub struct Polynomial<T>(pub Vec<T>);

impl<T: Scalar> Analytic<T> for Polynomial<T> {
    fn taylor(&self, x: T, n: usize) -> Result<Vec<T>> {
        let mut c = self.0.clone();
        if c.is_empty() {
            c.push(T::zero());
        }
        let shifted = Series::from_coeffs(c).shift(x).into_coeffs();
        Ok((0..=n)
            .map(|k| shifted.get(k).copied().unwrap_or_else(T::zero))
            .collect())
    }
}

/// Any closure producing Taylor coefficients.
pub struct FnAnalytic<F>(pub F);

impl<T: Scalar, F> Analytic<T> for FnAnalytic<F>
where
    F: Fn(T, usize) -> Result<Vec<T>> + Send + Sync,
{
    fn taylor(&self, x: T, n: usize) -> Result<Vec<T>> {
        (self.0)(x, n)
    }
}

/// Function built from a series-level closure applied to the seed variable.
pub struct SeriesFn<F>(pub F);

impl<T: Scalar, F> Analytic<T> for SeriesFn<F>
where
    F: Fn(&Series<T>) -> Result<Series<T>> + Send + Sync,
{
    fn taylor(&self, x: T, n: usize) -> Result<Vec<T>> {
        Ok((self.0)(&Series::variable(x, n))?.into_coeffs())
    }
}

/// The derivative `f'` of an analytic function.
pub struct Derivative<A>(pub A);

impl<T: Scalar, A: Analytic<T>> Analytic<T> for Derivative<A> {
    fn taylor(&self, x: T, n: usize) -> Result<Vec<T>> {
        let c = self.0.taylor(x, n + 1)?;
        Ok((0..=n).map(|k| c[k + 1] * T::of_usize(k + 1)).collect())
    }
}

/// `f(a x + b)`.
pub struct Affine<T, A> {
    pub inner: A,
    pub a: T,
    pub b: T,
}

impl<T: Scalar, A: Analytic<T>> Analytic<T> for Affine<T, A> {
    fn taylor(&self, x: T, n: usize) -> Result<Vec<T>> {
        let c = self.inner.taylor(self.a * x + self.b, n)?;
        let mut p = T::one();
        Ok(c.into_iter()
            .map(|v| {
                let r = v * p;
                p *= self.a;
                r
            })
            .collect())
    }
}

/// Constant multiple `s f`.
pub struct Scaled<T, A>(pub T, pub A);

impl<T: Scalar, A: Analytic<T>> Analytic<T> for Scaled<T, A> {
    fn taylor(&self, x: T, n: usize) -> Result<Vec<T>> {
        Ok(self
            .1
            .taylor(x, n)?
            .into_iter()
            .map(|v| v * self.0)
            .collect())
    }
}

/// The constant function.
#[derive(Debug, Clone, Copy)]
pub struct Constant<T>(pub T);

impl<T: Scalar> Analytic<T> for Constant<T> {
    fn taylor(&self, _x: T, n: usize) -> Result<Vec<T>> {
        let mut c = vec![T::zero(); n + 1];
        c[0] = self.0;
        Ok(c)
    }
}

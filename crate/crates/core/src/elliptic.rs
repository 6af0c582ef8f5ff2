//! Jacobi elliptic functions `sn`, `cn`, `dn` for real argument and real
//! parameter `m ≤ 1`.

use crate::error::{Error, Result};
use crate::grassmann::GrassmannNumber;
use crate::scalar::Scalar;
use crate::series::Analytic;
use crate::superjet::{JetSpec, SuperJet};

const AGM_DEPTH: usize = 24;
const AGM_GAP: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticTriple<T> {
    pub u: T,
    pub m: T,
    pub sn: T,
    pub cn: T,
    pub dn: T,
}

impl<T: Scalar> EllipticTriple<T> {
    /// `max(|sn² + cn² - 1|, |dn² + m sn² - 1|)`.
    pub fn pythagorean_defect(&self) -> T {
        let a = (self.sn * self.sn + self.cn * self.cn - T::one()).abs();
        let b = (self.dn * self.dn + self.m * self.sn * self.sn - T::one()).abs();
        a.max(b)
    }
}

pub fn jacobi<T: Scalar>(u: T, m: T) -> Result<EllipticTriple<T>> {
    let one = T::one();
    if m > one || m.is_nan() {
        return Err(Error::UnsupportedParameter(m.to_f64_lossy()));
    }
    let (sn, cn, dn) = if m == T::zero() {
        (u.sin(), u.cos(), one)
    } else if m == one {
        let s = one / u.cosh();
        (u.tanh(), s, s)
    } else if m < T::zero() {
        let mc = one - m;
        let mp = -m / mc;
        let r = mc.sqrt();
        let e = jacobi(u * r, mp)?;
        (e.sn / (e.dn * r), e.cn / e.dn, one / e.dn)
    } else {
        descend(u, m)
    };
    Ok(EllipticTriple { u, m, sn, cn, dn })
}

fn descend<T: Scalar>(u: T, m: T) -> (T, T, T) {
    let half = T::of(0.5);
    let mut a = vec![T::one()];
    let mut c = vec![m.sqrt()];
    let mut b = (T::one() - m).sqrt();
    for _ in 0..AGM_DEPTH {
        let an = a[a.len() - 1];
        let cn = (an - b) * half;
        let a1 = (an + b) * half;
        b = (an * b).sqrt();
        a.push(a1);
        c.push(cn);
        if cn.abs() < T::of(AGM_GAP) {
            break;
        }
    }
    let n = a.len() - 1;
    let mut phi = T::of(2.0).powi(n as i32) * a[n] * u;
    let mut prev = phi;
    for i in (1..=n).rev() {
        prev = phi;
        phi = (phi + (c[i] / a[i] * phi.sin()).asin()) * half;
    }
    let sn = phi.sin();
    let cn = phi.cos();
    let dn = if cn.abs() > T::of(0.5) {
        cn / (prev - phi).cos()
    } else {
        (T::one() - m * sn * sn).sqrt()
    };
    (sn, cn, dn)
}

pub fn agm<T: Scalar>(mut a: T, mut b: T) -> T {
    let half = T::of(0.5);
    for _ in 0..AGM_DEPTH * 2 {
        let a1 = (a + b) * half;
        b = (a * b).sqrt();
        a = a1;
        if (a - b).abs() <= T::of(AGM_GAP) * a.abs() {
            break;
        }
    }
    (a + b) * half
}

/// Complete elliptic integral of the first kind, `m < 1`.
pub fn complete_k<T: Scalar>(m: T) -> Result<T> {
    if !(m < T::one()) {
        return Err(Error::UnsupportedParameter(m.to_f64_lossy()));
    }
    Ok(T::FRAC_PI_2() / agm(T::one(), (T::one() - m).sqrt()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JacobiKind {
    Sn,
    Cn,
    Dn,
}

/// Normalized Taylor coefficients of `(sn, cn, dn)` at `u` from the
/// system `sn' = cn dn`, `cn' = -sn dn`, `dn' = -m sn cn`.
pub fn jacobi_taylor<T: Scalar>(u: T, m: T, n: usize) -> Result<[Vec<T>; 3]> {
    let e = jacobi(u, m)?;
    let mut s = vec![e.sn];
    let mut c = vec![e.cn];
    let mut d = vec![e.dn];
    let conv = |a: &[T], b: &[T], k: usize| (0..=k).map(|i| a[i] * b[k - i]).sum::<T>();
    for k in 0..n {
        let kk = T::of_usize(k + 1);
        let cd = conv(&c, &d, k);
        let sd = conv(&s, &d, k);
        let sc = conv(&s, &c, k);
        s.push(cd / kk);
        c.push(-sd / kk);
        d.push(-m * sc / kk);
    }
    Ok([s, c, d])
}

/// One Jacobi function with fixed parameter, usable in jet composition.
#[derive(Debug, Clone, Copy)]
pub struct Jacobi<T> {
    pub kind: JacobiKind,
    pub m: T,
}

impl<T: Scalar> Analytic<T> for Jacobi<T> {
    fn taylor(&self, x: T, n: usize) -> Result<Vec<T>> {
        let [s, c, d] = jacobi_taylor(x, self.m, n)?;
        Ok(match self.kind {
            JacobiKind::Sn => s,
            JacobiKind::Cn => c,
            JacobiKind::Dn => d,
        })
    }
}

pub fn sn<T: Scalar>(m: T) -> Jacobi<T> {
    Jacobi {
        kind: JacobiKind::Sn,
        m,
    }
}

pub fn cn<T: Scalar>(m: T) -> Jacobi<T> {
    Jacobi {
        kind: JacobiKind::Cn,
        m,
    }
}

pub fn dn<T: Scalar>(m: T) -> Jacobi<T> {
    Jacobi {
        kind: JacobiKind::Dn,
        m,
    }
}

/// `(sn, cn, dn)` of an even supernumber, as jets in a seed `u` of the
/// given order centred at `u`.
pub fn jacobi_jet<T: Scalar>(
    u: &GrassmannNumber<T>,
    m: T,
    order: usize,
) -> Result<[SuperJet<T>; 3]> {
    let spec = JetSpec::new(&["u"], order)?;
    let seed = SuperJet::variable(&spec, "u", u.clone())?;
    Ok([
        seed.apply_analytic(&sn(m))?,
        seed.apply_analytic(&cn(m))?,
        seed.apply_analytic(&dn(m))?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_values() {
        let e = jacobi(0.0, 0.5).unwrap();
        assert_eq!((e.sn, e.cn, e.dn), (0.0, 1.0, 1.0));
        assert!(jacobi(1.0, 1.5).is_err());
    }

    #[test]
    fn quarter_period_hits_one() {
        for &m in &[0.1f64, 0.5, 0.9, -0.7] {
            let k = complete_k(m).unwrap();
            let e = jacobi(k, m).unwrap();
            assert!((e.sn - 1.0).abs() < 1e-13, "m = {m}: sn(K) = {}", e.sn);
        }
    }
}

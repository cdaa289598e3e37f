use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::Serialize;

/// Relative size below which a leading coefficient produced by cancellation
/// in `add`/`sub` is treated as an exact zero.
pub(crate) const CANCEL_EPS: f64 = 64.0 * f64::EPSILON;

/// Dense complex polynomial, coefficients in ascending degree order.
///
/// The coefficient vector is kept trimmed: the last entry is nonzero unless
/// the polynomial is identically zero, in which case the vector is empty.
#[derive(Clone, Debug, PartialEq, Default, Serialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `z`.
    pub fn identity() -> Self {
        Self::from_real(&[0.0, 1.0])
    }

    /// `lead * prod (z - r)`.
    pub fn from_roots(roots: &[Complex64], lead: Complex64) -> Self {
        let mut c = vec![lead];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (k, &ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= ck * r;
            }
            c = next;
        }
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value together with `sum |c_k| |z|^k`, the scale used for backward
    /// error and vanishing tests.
    pub fn eval_with_scale(&self, z: Complex64) -> (Complex64, f64) {
        let r = z.norm();
        let mut v = Complex64::new(0.0, 0.0);
        let mut s = 0.0;
        for &c in self.coeffs.iter().rev() {
            v = v * z + c;
            s = s * r + c.norm();
        }
        (v, s)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    /// Divide by the leading coefficient. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.scale(self.leading().inv()).coeffs;
        if let Some(last) = c.last_mut() {
            *last = Complex64::new(1.0, 0.0);
        }
        Self { coeffs: c }
    }

    /// Coefficients of `w -> p(center + w)`.
    pub fn taylor_shift(&self, center: Complex64) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let hi = c[j + 1];
                c[j] += center * hi;
            }
        }
        Self::new(c)
    }

    /// Quotient of the division by `(z - root)`, remainder discarded.
    ///
    /// Forward synthetic division for `|root| <= 1`, backward otherwise;
    /// each direction is the numerically stable one in its regime.
    pub fn deflate(&self, root: Complex64) -> Self {
        let n = self.coeffs.len();
        if n <= 1 {
            return Self::zero();
        }
        let a = &self.coeffs;
        let mut q = vec![Complex64::new(0.0, 0.0); n - 1];
        if root.norm() <= 1.0 {
            q[n - 2] = a[n - 1];
            for k in (0..n - 2).rev() {
                q[k] = a[k + 1] + root * q[k + 1];
            }
        } else {
            // a_0 = -root q_0, a_k = q_{k-1} - root q_k
            let rinv = root.inv();
            q[0] = -a[0] * rinv;
            for k in 1..n - 1 {
                q[k] = (q[k - 1] - a[k]) * rinv;
            }
        }
        Self::new(q)
    }

    /// Euclidean division, `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let lead_inv = d.leading().inv();
        let mut q = vec![Complex64::new(0.0, 0.0); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = r[k + dd] * lead_inv;
            q[k] = t;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                r[k + j] -= t * dj;
            }
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    /// Drop leading coefficients whose magnitude is below `rel * scale`.
    pub(crate) fn trim_relative(mut self, scale: f64) -> Self {
        let cut = CANCEL_EPS * scale;
        while self.coeffs.last().is_some_and(|c| c.norm() <= cut) {
            self.coeffs.pop();
        }
        self
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Poly::one(), |acc, _| &acc * self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.norm() == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        Ok(())
    }
}

fn add_impl(a: &Poly, b: &Poly, sign: f64) -> Poly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let c = (0..n).map(|k| a.coeff(k) + b.coeff(k) * sign).collect();
    let scale = a.max_abs().max(b.max_abs());
    Poly::new(c).trim_relative(scale)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        add_impl(self, rhs, 1.0)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        add_impl(self, rhs, -1.0)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn trims_on_construction() {
        let p = Poly::new(vec![c(1.0), c(0.0), c(0.0)]);
        assert_eq!(p.degree(), Some(0));
        assert!(Poly::new(vec![c(0.0)]).is_zero());
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn cancellation_drops_degree() {
        let z = Poly::identity();
        let one_minus_z = Poly::from_real(&[1.0, -1.0]);
        assert_eq!(&z + &one_minus_z, Poly::one());
    }

    #[test]
    fn from_roots_and_eval() {
        let p = Poly::from_roots(&[c(1.0), c(-1.0)], c(1.0));
        assert_eq!(p, Poly::from_real(&[-1.0, 0.0, 1.0]));
        assert_eq!(p.eval(c(3.0)), c(8.0));
    }

    #[test]
    fn taylor_shift_matches_eval() {
        let p = Poly::from_real(&[2.0, -1.0, 0.5, 3.0]);
        let z0 = Complex64::new(0.3, -0.2);
        let q = p.taylor_shift(z0);
        for w in [c(0.0), c(0.1), Complex64::new(-0.4, 0.7)] {
            assert!((q.eval(w) - p.eval(z0 + w)).norm() < 1e-13);
        }
    }

    #[test]
    fn deflate_both_directions() {
        let small = Complex64::new(0.25, 0.5);
        let big = Complex64::new(3.0, -2.0);
        let p = Poly::from_roots(&[small, big, c(0.7)], c(2.0));
        let q1 = p.deflate(small);
        let q2 = p.deflate(big);
        let e1 = Poly::from_roots(&[big, c(0.7)], c(2.0));
        let e2 = Poly::from_roots(&[small, c(0.7)], c(2.0));
        for k in 0..3 {
            assert!((q1.coeff(k) - e1.coeff(k)).norm() < 1e-12);
            assert!((q2.coeff(k) - e2.coeff(k)).norm() < 1e-12);
        }
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = Poly::from_real(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        let d = Poly::from_real(&[-1.0, 0.0, 2.0]);
        let (q, r) = a.div_rem(&d);
        let back = &(&q * &d) + &r;
        for k in 0..5 {
            assert!((back.coeff(k) - a.coeff(k)).norm() < 1e-12);
        }
        assert!(r.degree().unwrap_or(0) < 2);
    }
}

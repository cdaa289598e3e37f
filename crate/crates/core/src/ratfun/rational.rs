use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::Poly;
use super::roots::{poly_roots, Root};
use super::RatError;

/// Two roots are treated as common when they are closer than
/// `COPRIME_TOL * (1 + max(|a|, |b|))`.
pub const COPRIME_TOL: f64 = 1e-8;

/// Coprime ratio `num / den` with a monic denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

/// What a reduction did, for callers that need to surface borderline
/// cancellation decisions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct ReduceReport {
    /// Number of root pairs cancelled, counted with multiplicity.
    pub cancelled: usize,
    /// Set when some cancel/keep decision was within a factor of ten of
    /// the coprimality threshold.
    pub near_threshold: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl RatFun {
    /// Reduce `num / den` to coprime, den-monic form.
    pub fn new(num: Poly, den: Poly) -> Result<Self, RatError> {
        Self::reduce_with_report(num, den).map(|(f, _)| f)
    }

    pub fn reduce_with_report(num: Poly, den: Poly) -> Result<(Self, ReduceReport), RatError> {
        if den.is_zero() {
            return Err(RatError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok((Self::zero(), ReduceReport::default()));
        }
        let mut report = ReduceReport::default();
        let (mut num, mut den) = (num, den);
        if num.degree() > Some(0) && den.degree() > Some(0) {
            let nr = poly_roots(&num)?;
            let dr = poly_roots(&den)?;
            let (pairs, near) = match_roots(&nr, &dr);
            report.near_threshold = near;
            for (a, b, k) in pairs {
                for _ in 0..k {
                    num = num.deflate(a);
                    den = den.deflate(b);
                }
                report.cancelled += k;
            }
        }
        let lead = den.leading().inv();
        Ok((
            Self {
                num: num.scale(lead),
                den: den.monic(),
            },
            report,
        ))
    }

    /// Build without any reduction; the caller guarantees the pair is
    /// already coprime.
    pub(crate) fn from_parts_unchecked(num: Poly, den: Poly) -> Self {
        let lead = den.leading().inv();
        Self {
            num: num.scale(lead),
            den: den.monic(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn identity() -> Self {
        Self::from_poly(Poly::identity())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Value at `z`, or `PoleAtPoint` when the denominator vanishes to
    /// working precision.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, RatError> {
        let (d, scale) = self.den.eval_with_scale(z);
        if d.norm() <= 4.0 * f64::EPSILON * scale {
            return Err(RatError::PoleAtPoint(z));
        }
        Ok(self.num.eval(z) / d)
    }

    pub fn poles(&self) -> Result<Vec<Root>, RatError> {
        if self.den.degree() == Some(0) {
            return Ok(Vec::new());
        }
        poly_roots(&self.den)
    }

    pub fn zeros(&self) -> Result<Vec<Root>, RatError> {
        poly_roots(&self.num)
    }

    /// Taylor coefficients `f^(j)(center) / j!` for `j < len`, computed by
    /// power-series division of the shifted numerator and denominator.
    pub fn jet(&self, center: Complex64, len: usize) -> Result<Jet, RatError> {
        let (d0, scale) = self.den.eval_with_scale(center);
        if d0.norm() <= 1e-12 * scale {
            return Err(RatError::PoleAtCenter(center));
        }
        let n = self.num.taylor_shift(center);
        let d = self.den.taylor_shift(center);
        Ok(Jet {
            center,
            coeffs: series_div(n.coeffs(), d.coeffs(), len),
        })
    }

    pub fn add(&self, other: &RatFun) -> Result<RatFun, RatError> {
        self.add_signed(other, 1.0)
    }

    pub fn sub(&self, other: &RatFun) -> Result<RatFun, RatError> {
        self.add_signed(other, -1.0)
    }

    fn add_signed(&self, other: &RatFun, sign: f64) -> Result<RatFun, RatError> {
        let rhs = other.num.scale(Complex64::new(sign, 0.0));
        if self.den == other.den {
            return RatFun::new(&self.num + &rhs, self.den.clone());
        }
        RatFun::new(
            &(&self.num * &other.den) + &(&rhs * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn mul(&self, other: &RatFun) -> Result<RatFun, RatError> {
        RatFun::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun, RatError> {
        if other.is_zero() {
            return Err(RatError::ZeroDenominator);
        }
        RatFun::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn scale(&self, s: Complex64) -> RatFun {
        if s == Complex64::new(0.0, 0.0) {
            return RatFun::zero();
        }
        Self {
            num: self.num.scale(s),
            den: self.den.clone(),
        }
    }

    pub fn arith(&self, other: &RatFun, op: ArithOp) -> Result<RatFun, RatError> {
        match op {
            ArithOp::Add => self.add(other),
            ArithOp::Sub => self.sub(other),
            ArithOp::Mul => self.mul(other),
            ArithOp::Div => self.div(other),
        }
    }

    /// Largest coefficient-wise distance to `other`, both in canonical form.
    pub fn coeff_distance(&self, other: &RatFun) -> f64 {
        fn dist(a: &Poly, b: &Poly) -> f64 {
            let n = a.coeffs().len().max(b.coeffs().len());
            (0..n)
                .map(|k| (a.coeff(k) - b.coeff(k)).norm())
                .fold(0.0, f64::max)
        }
        dist(&self.num, &other.num).max(dist(&self.den, &other.den))
    }
}

/// Deflate `num` and `den` by each listed root, up to its multiplicity,
/// for as long as both vanish there relative to `tol`. Used where a
/// shared factor is known in advance; a multiple root is otherwise
/// located only to about the square root of working precision.
pub(crate) fn deflate_shared(mut num: Poly, mut den: Poly, roots: &[(Complex64, usize)], tol: f64) -> (Poly, Poly) {
    let vanishes = |p: &Poly, a: Complex64| {
        let (v, scale) = p.eval_with_scale(a);
        v.norm() <= tol * scale
    };
    for &(a, mult) in roots {
        for _ in 0..mult {
            if num.is_zero() || den.degree() == Some(0) || !vanishes(&num, a) || !vanishes(&den, a) {
                break;
            }
            num = num.deflate(a);
            den = den.deflate(a);
        }
    }
    (num, den)
}

/// Tolerance on the remainder, relative to the operands, for the exact
/// quotients below.
const QUOTIENT_TOL: f64 = 1e-9;

fn quotient_if_exact(n: &Poly, d: &Poly, q: Poly) -> Option<Poly> {
    let r = n - &(&q * d);
    let scale = n.max_abs().max(q.max_abs() * d.max_abs());
    (r.max_abs() <= QUOTIENT_TOL * scale).then_some(q)
}

/// `n / d` by top-down long division, which is stable when the roots of
/// `d` lie in the closed disk; `None` unless `d` divides `n` up to rounding.
pub(crate) fn exact_quotient_inner(n: &Poly, d: &Poly) -> Option<Poly> {
    if n.degree()? < d.degree()? {
        return None;
    }
    quotient_if_exact(n, d, n.div_rem(d).0)
}

/// `n / d` by power-series division, which is stable when the roots of
/// `d` lie outside the disk; `None` unless `d` divides `n` up to rounding.
pub(crate) fn exact_quotient_outer(n: &Poly, d: &Poly) -> Option<Poly> {
    let (dn, dd) = (n.degree()?, d.degree()?);
    if dn < dd || d.coeff(0).norm() == 0.0 {
        return None;
    }
    quotient_if_exact(n, d, Poly::new(series_div(n.coeffs(), d.coeffs(), dn - dd + 1)))
}

/// First `len` coefficients of the power series `n / d`, `d[0] != 0`.
pub(crate) fn series_div(n: &[Complex64], d: &[Complex64], len: usize) -> Vec<Complex64> {
    let d0inv = d[0].inv();
    let mut c: Vec<Complex64> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = n.get(k).copied().unwrap_or_default();
        for j in 1..=k.min(d.len().saturating_sub(1)) {
            acc -= d[j] * c[k - j];
        }
        c.push(acc * d0inv);
    }
    c
}

/// Greedy nearest-first matching of numerator and denominator roots.
/// Returns `(num_root, den_root, count)` triples and the near-threshold flag.
fn match_roots(nr: &[Root], dr: &[Root]) -> (Vec<(Complex64, Complex64, usize)>, bool) {
    let mut left: Vec<usize> = nr.iter().map(|r| r.multiplicity).collect();
    let mut right: Vec<usize> = dr.iter().map(|r| r.multiplicity).collect();
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    let mut near = false;
    for (i, a) in nr.iter().enumerate() {
        for (j, b) in dr.iter().enumerate() {
            let tol = COPRIME_TOL * (1.0 + a.value.norm().max(b.value.norm()));
            let ratio = (a.value - b.value).norm() / tol;
            if ratio < 1.0 {
                candidates.push((ratio, i, j));
            }
            if (0.1..10.0).contains(&ratio) {
                near = true;
            }
        }
    }
    candidates.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut pairs = Vec::new();
    for (_, i, j) in candidates {
        let k = left[i].min(right[j]);
        if k > 0 {
            left[i] -= k;
            right[j] -= k;
            pairs.push((nr[i].value, dr[j].value, k));
        }
    }
    (pairs, near)
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] / [{}]", self.num, self.den)
    }
}

#[derive(Serialize, Deserialize)]
struct RatFunWire {
    num: Vec<Complex64>,
    den: Vec<Complex64>,
}

impl Serialize for RatFun {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatFunWire {
            num: self.num.coeffs().to_vec(),
            den: self.den.coeffs().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFun {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = RatFunWire::deserialize(d)?;
        RatFun::new(Poly::new(w.num), Poly::new(w.den)).map_err(serde::de::Error::custom)
    }
}

/// Taylor jet `c_j = f^(j)(center) / j!`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Jet {
    pub center: Complex64,
    pub coeffs: Vec<Complex64>,
}

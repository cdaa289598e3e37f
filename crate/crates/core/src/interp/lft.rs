use num_complex::Complex64;
use serde::Serialize;

use super::{InterpError, InterpProblem, Theta};
use crate::ratfun::{deflate_shared, exact_quotient_inner, exact_quotient_outer, series_div, Jet, Poly, RatError, RatFun, ReduceReport};
use crate::schurclass::{class_index, Blaschke, SchurError, CONTRACTIVE_TOL};

/// Tolerance, relative to the size of the summands, below which
/// `Theta21 S + Theta22 B` is taken to vanish at a node.
const VANISH_TOL: f64 = 1e-9;

/// Parameter `(S, B)`: `S` a rational Schur function, `B` a Blaschke product,
/// no common zeros in the disk.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParamPair {
    pub s: RatFun,
    pub b: Blaschke,
}

impl ParamPair {
    pub fn new(s: RatFun, b: Blaschke) -> Result<Self, InterpError> {
        let kl = class_index(&s, CONTRACTIVE_TOL).map_err(|e| match e {
            SchurError::NotContractive { sup } => {
                InterpError::InvalidParameter(format!("S is not contractive (sup {sup})"))
            }
            e => e.into(),
        })?;
        if kl.index != 0 {
            return Err(InterpError::InvalidParameter(format!("S has {} poles in the disk", kl.index)));
        }
        for &a in b.zeros() {
            let v = s.eval(a)?;
            if v.norm() <= VANISH_TOL {
                return Err(InterpError::InvalidParameter(format!("S and B share the zero {a}")));
            }
        }
        Ok(Self { s, b })
    }

    /// Split `E` into its Krein–Langer pair `E = S / B`.
    pub fn from_e(e: &RatFun) -> Result<Self, InterpError> {
        let kl = class_index(e, CONTRACTIVE_TOL)?;
        Ok(Self { s: kl.s, b: kl.b })
    }

    pub fn e(&self) -> Result<RatFun, InterpError> {
        let (bn, bd) = self.b.num_den();
        let s = &self.s;
        Ok(RatFun::new(s.num() * &bd, s.den() * &bn)?)
    }

    /// Index of `E = S / B`.
    pub fn kappa_tilde(&self) -> usize {
        self.b.degree()
    }
}

/// A ratio kept without cancelling common factors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Unreduced {
    pub num: Poly,
    pub den: Poly,
}

impl Unreduced {
    pub fn eval(&self, z: Complex64) -> Result<Complex64, RatError> {
        let (d, scale) = self.den.eval_with_scale(z);
        if d.norm() <= 4.0 * f64::EPSILON * scale {
            return Err(RatError::PoleAtPoint(z));
        }
        Ok(self.num.eval(z) / d)
    }

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

    pub fn reduce(&self) -> Result<RatFun, RatError> {
        RatFun::new(self.num.clone(), self.den.clone())
    }
}

/// `f = U / V` with `U = Theta11 S + Theta12 B`, `V = Theta21 S + Theta22 B`.
#[derive(Clone, Debug, Serialize)]
pub struct LftPair {
    pub f: RatFun,
    pub u: Unreduced,
    pub v: Unreduced,
    pub reduction: ReduceReport,
}

fn shared(theta: &Theta) -> Result<&crate::ratfun::SharedDen, InterpError> {
    theta
        .rational
        .shared()
        .ok_or_else(|| InterpError::SelfCheckFailed("Theta lacks its shared-denominator form".into()))
}

pub fn lft_apply(theta: &Theta, param: &ParamPair) -> Result<LftPair, InterpError> {
    let sh = shared(theta)?;
    let n = &sh.nums;
    let (sn, sd) = (param.s.num(), param.s.den());
    let (bn, bd) = param.b.num_den();
    let s_part = sn * &bd;
    let b_part = &bn * sd;
    let u_num = &(&n[0][0] * &s_part) + &(&n[0][1] * &b_part);
    let v_num = &(&n[1][0] * &s_part) + &(&n[1][1] * &b_part);
    if v_num.is_zero() {
        return Err(InterpError::DegenerateDenominator);
    }
    let common = &(&sh.den * sd) * &bd;
    let (f, reduction) = RatFun::reduce_with_report(u_num.clone(), v_num.clone())?;
    Ok(LftPair {
        f,
        u: Unreduced {
            num: u_num,
            den: common.clone(),
        },
        v: Unreduced {
            num: v_num,
            den: common,
        },
        reduction,
    })
}

/// `E = (f Theta22 - Theta12) / (Theta11 - f Theta21)`.
const DET_FACTOR_TOL: f64 = 1e-9;

pub fn lft_invert(theta: &Theta, f: &RatFun) -> Result<RatFun, InterpError> {
    let sh = shared(theta)?;
    let n = &sh.nums;
    let (p, q) = (f.num(), f.den());
    let num = &(p * &n[1][1]) - &(q * &n[0][1]);
    let den = &(q * &n[0][0]) - &(p * &n[1][0]);
    if den.is_zero() {
        return Err(InterpError::IdenticallyZeroDenominator);
    }
    let (num, den) = strip_det_factor(theta, num, den);
    Ok(RatFun::new(num, den)?)
}

/// Both polynomials carry `det` of Theta's numerator matrix, namely
/// `(z - z_i)^{n_i}` times the shared denominator, when `f` comes from
/// `lft_apply`. Each factor is divided out in its stable direction; if
/// either division leaves a remainder, fall back to deflating the factors
/// where both polynomials vanish.
fn strip_det_factor(theta: &Theta, num: Poly, den: Poly) -> (Poly, Poly) {
    let nodes: Vec<Complex64> = theta
        .pick
        .sys
        .blocks
        .iter()
        .flat_map(|&(z, m)| std::iter::repeat_n(z, m))
        .collect();
    let inner = Poly::from_roots(&nodes, Complex64::new(1.0, 0.0));
    let exact = |p: &Poly| {
        let outer = theta.rational.shared()?.den.clone();
        exact_quotient_outer(&exact_quotient_inner(p, &inner)?, &outer)
    };
    if let (Some(n), Some(d)) = (exact(&num), exact(&den)) {
        return (n, d);
    }
    let mut roots = Vec::new();
    for &(z, mult) in &theta.pick.sys.blocks {
        roots.push((z, mult));
        if z.norm() > 0.0 {
            roots.push((z.conj().inv(), mult));
        }
    }
    deflate_shared(num, den, &roots, DET_FACTOR_TOL)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NodeAdmissibility {
    pub index: usize,
    pub z: Complex64,
    /// `Theta21(z_i) S(z_i) + Theta22(z_i) B(z_i)`.
    pub v: Complex64,
    pub ok: bool,
    /// `E = S / B` has a pole at the node.
    pub pole_clause: bool,
    /// The pole is of order above one, or the node carries derivative
    /// conditions; the scalar pole clause does not settle such cases and
    /// the classification report is authoritative.
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdmissibleReport {
    pub pass: bool,
    pub nodes: Vec<NodeAdmissibility>,
}

pub fn admissible(theta: &Theta, param: &ParamPair, problem: &InterpProblem) -> Result<AdmissibleReport, InterpError> {
    let mut nodes = Vec::with_capacity(problem.nodes.len());
    for (index, node) in problem.nodes.iter().enumerate() {
        let z = node.z;
        let th = theta.eval(z)?;
        let s = param.s.eval(z)?;
        let b = param.b.eval(z);
        let (t1, t2) = (th[1][0] * s, th[1][1] * b);
        let v = t1 + t2;
        let ok = v.norm() > VANISH_TOL * (1.0 + t1.norm() + t2.norm());
        let order = param.b.zeros().iter().filter(|&&a| (a - z).norm() <= 1e-12).count();
        let pole_clause = order > 0;
        nodes.push(NodeAdmissibility {
            index,
            z,
            v,
            ok,
            pole_clause,
            flagged: pole_clause && (order > 1 || node.multiplicity() > 1),
        });
    }
    Ok(AdmissibleReport {
        pass: nodes.iter().all(|n| n.ok),
        nodes,
    })
}

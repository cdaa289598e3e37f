use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::{InterpError, PickSystem};
use crate::ratfun::{Mat2, Poly, RatFun, RatMat2};
use crate::schurclass::zeros_in_disk;

/// `Theta(z) = I + (z - 1) L (I - z T^*)^{-1} K` with `L = [E^*; C^*]` and
/// `K = P^{-1} (I - T)^{-1} [E, -C]`, kept in structured and rational form.
#[derive(Clone, Debug, Serialize)]
pub struct Theta {
    #[serde(skip)]
    pub pick: PickSystem,
    pub rational: RatMat2,
    pub det_closed_form: RatFun,
    #[serde(skip)]
    l: DMatrix<Complex64>,
    #[serde(skip)]
    k: DMatrix<Complex64>,
}

const J: [f64; 2] = [1.0, -1.0];

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// `1 - z w`.
fn lin(w: Complex64) -> Poly {
    Poly::new(vec![one(), -w])
}

pub fn build_theta(ps: &PickSystem) -> Result<Theta, InterpError> {
    let p_inv = ps.p_inv()?;
    let sys = &ps.sys;
    let n = sys.dim();
    let mut ec = DMatrix::zeros(n, 2);
    ec.set_column(0, &sys.e);
    ec.set_column(1, &(-&sys.c));
    let i_minus_t = DMatrix::<Complex64>::identity(n, n) - &sys.t;
    let right = i_minus_t.lu().solve(&ec).ok_or(InterpError::SingularPick { n_zero: 0 })?;
    let k = p_inv * right;
    let mut l = DMatrix::zeros(2, n);
    l.set_row(0, &sys.e.adjoint());
    l.set_row(1, &sys.c.adjoint());

    // common denominator D(z) = prod (1 - z conj z_i)^{n_i}
    let den = sys
        .blocks
        .iter()
        .fold(Poly::one(), |acc, &(z, m)| &acc * &lin(z.conj()).pow(m));
    let mut nums = [[Poly::zero(), Poly::zero()], [Poly::zero(), Poly::zero()]];
    let mut off = 0;
    for (i, &(z, m)) in sys.blocks.iter().enumerate() {
        let w = z.conj();
        let others = sys
            .blocks
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(Poly::one(), |acc, (_, &(zj, mj))| &acc * &lin(zj.conj()).pow(mj));
        let t_adj = sys.t.view((off, off), (m, m)).adjoint();
        let nil = &t_adj - DMatrix::<Complex64>::identity(m, m) * w;
        let lb = l.columns(off, m).into_owned();
        let kb = k.rows(off, m).into_owned();
        let mut nil_k = DMatrix::<Complex64>::identity(m, m);
        for kk in 0..m {
            // D(z) times the z^k N^k / (1 - z w)^{k+1} term of the block resolvent
            let q = &(&Poly::identity().pow(kk) * &lin(w).pow(m - 1 - kk)) * &others;
            let s = &lb * &nil_k * &kb;
            for a in 0..2 {
                for b in 0..2 {
                    nums[a][b] = &nums[a][b] + &q.scale(s[(a, b)]);
                }
            }
            nil_k = &nil_k * &nil;
        }
        off += m;
    }
    let z_minus_one = Poly::from_real(&[-1.0, 1.0]);
    for (a, row) in nums.iter_mut().enumerate() {
        for (b, entry) in row.iter_mut().enumerate() {
            let mut e = &z_minus_one * entry;
            if a == b {
                e = &e + &den;
            }
            *entry = e;
        }
    }
    let rational = RatMat2::from_shared(nums, den)?;

    let mut det_num = Poly::one();
    let mut det_den = Poly::one();
    for &(z, m) in &sys.blocks {
        let top = Poly::new(vec![-z, one()]).scale(one() - z.conj());
        let bottom = lin(z.conj()).scale(one() - z);
        det_num = &det_num * &top.pow(m);
        det_den = &det_den * &bottom.pow(m);
    }
    let det_closed_form = RatFun::new(det_num, det_den)?;
    Ok(Theta {
        pick: ps.clone(),
        rational,
        det_closed_form,
        l,
        k,
    })
}

impl Theta {
    /// Rational form evaluated entrywise.
    pub fn eval(&self, z: Complex64) -> Result<Mat2, InterpError> {
        Ok(self.rational.eval(z)?)
    }

    /// Direct evaluation of the defining formula.
    pub fn eval_structured(&self, z: Complex64) -> Result<Mat2, InterpError> {
        let sys = &self.pick.sys;
        let n = sys.dim();
        let a = DMatrix::<Complex64>::identity(n, n) - sys.t.adjoint() * z;
        let x = a.lu().solve(&self.k).ok_or(InterpError::Rat(crate::ratfun::RatError::PoleAtPoint(z)))?;
        let m = &self.l * x * (z - one());
        Ok([[one() + m[(0, 0)], m[(0, 1)]], [m[(1, 0)], one() + m[(1, 1)]]])
    }

    pub fn entry(&self, i: usize, j: usize) -> &RatFun {
        self.rational.entry(i, j)
    }

    /// Right side of the kernel identity:
    /// `L (I - z T^*)^{-1} P^{-1} (I - conj(zeta) T)^{-1} [E, C]`.
    pub fn kernel_rhs(&self, z: Complex64, zeta: Complex64) -> Result<Mat2, InterpError> {
        let sys = &self.pick.sys;
        let n = sys.dim();
        let id = DMatrix::<Complex64>::identity(n, n);
        let mut ec = DMatrix::zeros(n, 2);
        ec.set_column(0, &sys.e);
        ec.set_column(1, &sys.c);
        let sing = || InterpError::Rat(crate::ratfun::RatError::PoleAtPoint(z));
        let right = (&id - &sys.t * zeta.conj()).lu().solve(&ec).ok_or_else(sing)?;
        let mid = self.pick.p_inv()? * right;
        let left = (&id - sys.t.adjoint() * z).lu().solve(&mid).ok_or_else(sing)?;
        let m = &self.l * left;
        Ok([[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]])
    }
}

/// Outcome of the structural checks on a constructed `Theta`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelfCheckReport {
    pub j_unitarity: f64,
    pub kernel_identity: f64,
    pub zeros_theta11: usize,
    pub sq_plus: usize,
    pub zeros_theta22: usize,
    pub sq_minus: usize,
    pub min_theta21_theta22: f64,
    pub node_residue: f64,
    pub det_mismatch: f64,
    pub structured_mismatch: f64,
    pub failures: Vec<String>,
    pub pass: bool,
}

const J_UNITARY_TOL: f64 = 1e-9;
const KERNEL_TOL: f64 = 1e-8;
const NONDEGENERATE_TOL: f64 = 1e-6;
const RESIDUE_TOL: f64 = 1e-8;
const AGREEMENT_TOL: f64 = 1e-9;
const DISK_GRID: usize = 100;

/// Deterministic well-spread points in the disk of radius `r`.
fn sunflower(count: usize, r: f64, twist: f64) -> Vec<Complex64> {
    let golden = TAU * (1.0 - 1.0 / ((1.0 + 5f64.sqrt()) / 2.0));
    (0..count)
        .map(|k| Complex64::from_polar(r * ((k as f64 + 0.5) / count as f64).sqrt(), golden * k as f64 + twist))
        .collect()
}

fn max_entry(m: &Mat2) -> f64 {
    m.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max)
}

fn sub(a: &Mat2, b: &Mat2) -> Mat2 {
    [[a[0][0] - b[0][0], a[0][1] - b[0][1]], [a[1][0] - b[1][0], a[1][1] - b[1][1]]]
}

/// `A J B^*`.
fn j_product(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = (0..2).map(|k| a[i][k] * J[k] * b[j][k].conj()).sum();
        }
    }
    out
}

fn adjoint(a: &Mat2) -> Mat2 {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

fn j_mat() -> Mat2 {
    [[one(), Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), -one()]]
}

/// Largest principal-part coefficient of `(zI - T)^{-1} [E, -C] Theta(z)`
/// over all nodes.
fn node_residue(theta: &Theta) -> Result<f64, InterpError> {
    let sys = &theta.pick.sys;
    let mut worst: f64 = 0.0;
    let mut off = 0;
    for &(z, m) in &sys.blocks {
        let mut jets = [[Vec::new(), Vec::new()], [Vec::new(), Vec::new()]];
        for (a, row) in jets.iter_mut().enumerate() {
            for (b, slot) in row.iter_mut().enumerate() {
                *slot = theta.entry(a, b).jet(z, m)?.coeffs;
            }
        }
        let coef = |j: usize| -> DMatrix<Complex64> {
            DMatrix::from_fn(2, 2, |a, b| jets[a][b][j])
        };
        let mut x = DMatrix::zeros(m, 2);
        for r in 0..m {
            x[(r, 0)] = sys.e[off + r];
            x[(r, 1)] = -sys.c[off + r];
        }
        let nil = sys.t.view((off, off), (m, m)) - DMatrix::<Complex64>::identity(m, m) * z;
        let mut powers = vec![DMatrix::<Complex64>::identity(m, m)];
        for kk in 1..m {
            let next = &powers[kk - 1] * &nil;
            powers.push(next);
        }
        for r in 0..m {
            let mut acc = DMatrix::<Complex64>::zeros(m, 2);
            for (kk, pk) in powers.iter().enumerate().skip(r) {
                acc += pk * &x * coef(kk - r);
            }
            worst = worst.max(acc.iter().map(|v| v.norm()).fold(0.0, f64::max));
        }
        off += m;
    }
    Ok(worst)
}

/// Run every structural check and collect the failing clauses.
pub fn selfcheck_report(theta: &Theta, samples: usize) -> Result<SelfCheckReport, InterpError> {
    let samples = samples.max(1);
    let jm = j_mat();
    let mut j_unitarity: f64 = 0.0;
    for k in 0..samples {
        let t = Complex64::from_polar(1.0, TAU * k as f64 / samples as f64);
        let th = theta.eval(t)?;
        let left = j_product(&adjoint(&th), &adjoint(&th));
        let right = j_product(&th, &th);
        j_unitarity = j_unitarity.max(max_entry(&sub(&left, &jm))).max(max_entry(&sub(&right, &jm)));
    }

    let zs = sunflower(samples, 0.95, 0.0);
    let zetas = sunflower(samples, 0.95, 1.3);
    let mut kernel_identity: f64 = 0.0;
    for (i, &z) in zs.iter().enumerate() {
        let zeta = zetas[(i * 7 + 3) % samples];
        let a = theta.eval(z)?;
        let b = theta.eval(zeta)?;
        let lhs = sub(&jm, &j_product(&a, &b));
        let scale = one() - z * zeta.conj();
        let lhs = lhs.map(|row| row.map(|x| x / scale));
        kernel_identity = kernel_identity.max(max_entry(&sub(&lhs, &theta.kernel_rhs(z, zeta)?)));
    }

    let zeros_theta11 = zeros_in_disk(theta.entry(0, 0))?;
    let zeros_theta22 = zeros_in_disk(theta.entry(1, 1))?;
    let mut min_theta21_theta22 = f64::INFINITY;
    for z in sunflower(DISK_GRID, 0.99, 0.2) {
        let th = theta.eval(z)?;
        min_theta21_theta22 = min_theta21_theta22.min(th[1][0].norm() + th[1][1].norm());
    }
    let node_residue = node_residue(theta)?;

    let det = theta.rational.det()?;
    let mut det_mismatch: f64 = 0.0;
    let mut structured_mismatch: f64 = 0.0;
    for (i, z) in sunflower(32, 0.95, 0.7).into_iter().enumerate() {
        if i < 16 {
            det_mismatch = det_mismatch.max((det.eval(z)? - theta.det_closed_form.eval(z)?).norm());
        }
        structured_mismatch = structured_mismatch.max(max_entry(&sub(&theta.eval(z)?, &theta.eval_structured(z)?)));
    }

    let (sq_plus, sq_minus) = (theta.pick.sq_plus(), theta.pick.sq_minus());
    let mut failures = Vec::new();
    if !(j_unitarity <= J_UNITARY_TOL) {
        failures.push(format!("J-unitarity residual {j_unitarity:e}"));
    }
    if !(kernel_identity <= KERNEL_TOL) {
        failures.push(format!("kernel identity residual {kernel_identity:e}"));
    }
    if zeros_theta11 != sq_plus {
        failures.push(format!("Theta11 has {zeros_theta11} zeros in the disk, expected {sq_plus}"));
    }
    if zeros_theta22 != sq_minus {
        failures.push(format!("Theta22 has {zeros_theta22} zeros in the disk, expected {sq_minus}"));
    }
    if !(min_theta21_theta22 > NONDEGENERATE_TOL) {
        failures.push(format!("|Theta21| + |Theta22| drops to {min_theta21_theta22:e}"));
    }
    if !(node_residue <= RESIDUE_TOL) {
        failures.push(format!("node residue {node_residue:e}"));
    }
    if !(det_mismatch <= AGREEMENT_TOL) {
        failures.push(format!("determinant mismatch {det_mismatch:e}"));
    }
    if !(structured_mismatch <= AGREEMENT_TOL) {
        failures.push(format!("structured and rational forms differ by {structured_mismatch:e}"));
    }
    Ok(SelfCheckReport {
        j_unitarity,
        kernel_identity,
        zeros_theta11,
        sq_plus,
        zeros_theta22,
        sq_minus,
        min_theta21_theta22,
        node_residue,
        det_mismatch,
        structured_mismatch,
        pass: failures.is_empty(),
        failures,
    })
}

/// As `selfcheck_report`, but a failing clause is an error.
pub fn theta_selfcheck(theta: &Theta, samples: usize) -> Result<SelfCheckReport, InterpError> {
    let report = selfcheck_report(theta, samples)?;
    if report.pass {
        Ok(report)
    } else {
        Err(InterpError::SelfCheckFailed(report.failures.join("; ")))
    }
}

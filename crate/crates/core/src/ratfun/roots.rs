//! Simultaneous polynomial root finding.
//!
//! Aberth–Ehrlich iteration does the bulk of the work; if it does not meet
//! its stopping rule within the iteration budget the eigenvalues of the
//! companion matrix are used instead. Roots closer than the clustering
//! radius are merged into one root with multiplicity, and the merged value
//! is polished by Newton's method on the derivative of matching order.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::poly::Poly;
use super::RatError;

pub const MAX_ITERATIONS: usize = 200;
pub const CLUSTER_RADIUS: f64 = 1e-6;

/// A root together with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// All roots of `p`, clustered by multiplicity.
pub fn poly_roots(p: &Poly) -> Result<Vec<Root>, RatError> {
    poly_roots_with(p, CLUSTER_RADIUS)
}

pub fn poly_roots_with(p: &Poly, cluster_radius: f64) -> Result<Vec<Root>, RatError> {
    let raw = raw_roots(p)?;
    Ok(cluster(p, raw, cluster_radius))
}

/// Flatten roots into a list that repeats each value `multiplicity` times.
pub fn expand(roots: &[Root]) -> Vec<Complex64> {
    roots
        .iter()
        .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
        .collect()
}

/// Unclustered roots, one entry per root counted with multiplicity.
pub fn raw_roots(p: &Poly) -> Result<Vec<Complex64>, RatError> {
    if p.is_zero() {
        return Err(RatError::ZeroPolynomial);
    }
    let c = p.coeffs();
    let zeros_at_origin = c.iter().take_while(|x| x.norm() == 0.0).count();
    let q = Poly::new(c[zeros_at_origin..].to_vec()).monic();
    let mut out = vec![Complex64::new(0.0, 0.0); zeros_at_origin];
    match q.degree() {
        Some(0) => {}
        Some(1) => out.push(-q.coeff(0)),
        Some(_) => match aberth(&q) {
            Some(r) => out.extend(r),
            None => out.extend(companion_roots(&q)?),
        },
        None => unreachable!(),
    }
    Ok(out)
}

fn initial_guesses(q: &Poly) -> Vec<Complex64> {
    let d = q.degree().unwrap_or(0);
    // q is monic; this is within a factor two of the largest root modulus
    let mut radius = (0..d)
        .map(|k| q.coeff(k).norm().powf(1.0 / (d - k) as f64))
        .fold(0.0, f64::max);
    if !(radius.is_finite() && radius > 0.0) {
        radius = 1.0;
    }
    (0..d)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / d as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect()
}

/// Aberth–Ehrlich iteration on a monic polynomial of degree >= 2.
fn aberth(q: &Poly) -> Option<Vec<Complex64>> {
    let dq = q.derivative();
    let mut z = initial_guesses(q);
    let d = z.len();
    let mut done = vec![false; d];
    for _ in 0..MAX_ITERATIONS {
        for i in 0..d {
            if done[i] {
                continue;
            }
            let (pv, scale) = q.eval_with_scale(z[i]);
            if pv.norm() <= 8.0 * f64::EPSILON * scale {
                done[i] = true;
                continue;
            }
            let ratio = pv / dq.eval(z[i]);
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                return None;
            }
            z[i] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * (1.0 + z[i].norm()) {
                done[i] = true;
            }
        }
        if done.iter().all(|&x| x) {
            return Some(z);
        }
    }
    None
}

fn companion_roots(q: &Poly) -> Result<Vec<Complex64>, RatError> {
    let d = q.degree().unwrap_or(0);
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..d {
        m[(i, d - 1)] = -q.coeff(i);
    }
    let schur = m
        .try_schur(f64::EPSILON, 10_000)
        .ok_or(RatError::NoConvergence)?;
    let ev = schur.eigenvalues().ok_or(RatError::NoConvergence)?;
    if ev.iter().any(|v| !v.is_finite()) {
        return Err(RatError::NoConvergence);
    }
    Ok(ev.iter().copied().collect())
}

/// Merge roots within `radius * (1 + |z|)` of each other (single linkage),
/// then polish each cluster of size `m > 1` with Newton on `p^(m-1)`.
fn cluster(p: &Poly, raw: Vec<Complex64>, radius: f64) -> Vec<Root> {
    let n = raw.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        let mut j = i;
        while label[j] != r {
            let next = label[j];
            label[j] = r;
            j = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let tol = radius * (1.0 + raw[i].norm().max(raw[j].norm()));
            if (raw[i] - raw[j]).norm() < tol {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                if a != b {
                    label[b] = a;
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Complex64>)> = Vec::new();
    for i in 0..n {
        let r = find(&mut label, i);
        match groups.iter_mut().find(|(g, _)| *g == r) {
            Some((_, members)) => members.push(raw[i]),
            None => groups.push((r, vec![raw[i]])),
        }
    }
    groups
        .into_iter()
        .map(|(_, members)| {
            let m = members.len();
            let mean = members.iter().sum::<Complex64>() / m as f64;
            let value = if m > 1 {
                polish_multiple(p, mean, m, radius)
            } else {
                mean
            };
            Root {
                value,
                multiplicity: m,
            }
        })
        .collect()
}

fn polish_multiple(p: &Poly, start: Complex64, m: usize, radius: f64) -> Complex64 {
    let mut g = p.clone();
    for _ in 1..m {
        g = g.derivative();
    }
    let dg = g.derivative();
    let mut z = start;
    for _ in 0..20 {
        let (gv, scale) = g.eval_with_scale(z);
        if gv.norm() <= 4.0 * f64::EPSILON * scale {
            break;
        }
        let step = gv / dg.eval(z);
        if !step.is_finite() {
            return start;
        }
        z -= step;
    }
    // a cluster that was not a true multiple root may drift; keep the mean
    if (z - start).norm() > 10.0 * radius * (1.0 + start.norm()) {
        start
    } else {
        z
    }
}

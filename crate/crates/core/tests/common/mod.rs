#![allow(dead_code)]

use nevpick::interp::{
    admissible, build_theta, pick_system, InterpProblem, Node, ParamPair, PickSystem, Theta,
};
use nevpick::ratfun::{Poly, RatFun};
use nevpick::schurclass::{boundary_sup, Blaschke};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn in_disk(rng: &mut Rng8, r: f64) -> Complex64 {
    let rho = r * rng.random::<f64>().sqrt();
    Complex64::from_polar(rho, rng.random::<f64>() * std::f64::consts::TAU)
}

pub fn worked(kappa: usize) -> InterpProblem {
    InterpProblem::new(
        vec![Node::new(c(0.0), vec![c(1.0)]), Node::new(c(0.5), vec![c(0.5)])],
        kappa,
    )
    .unwrap()
}

/// `(-4z^2 + 7z - 2) / (-4z^2 + 8z - 2)`, the solution for `E = 1/2`.
pub fn half_solution() -> RatFun {
    RatFun::new(Poly::from_real(&[-2.0, 7.0, -4.0]), Poly::from_real(&[-2.0, 8.0, -4.0])).unwrap()
}

/// `(-8z^3 + 8z^2 + 3z - 2) / (-8z^3 + 12z^2 + 2z - 2)`, the solution for `E = 1/(4z)`.
pub fn quarter_solution() -> RatFun {
    RatFun::new(
        Poly::from_real(&[-2.0, 3.0, 8.0, -8.0]),
        Poly::from_real(&[-2.0, 2.0, 12.0, -8.0]),
    )
    .unwrap()
}

/// Random nodes (at most `max_nodes`, multiplicities at most `max_mult`,
/// moduli at most `radius`, pairwise separated by 0.15) with random data.
pub fn random_problem_raw(rng: &mut Rng8, max_nodes: usize, max_mult: usize, radius: f64) -> InterpProblem {
    let k = rng.random_range(1..=max_nodes);
    let mut nodes: Vec<Node> = Vec::new();
    while nodes.len() < k {
        let z = in_disk(rng, radius);
        if nodes.iter().any(|n| (n.z - z).norm() < 0.15) {
            continue;
        }
        let m = rng.random_range(1..=max_mult);
        let values = (0..m)
            .map(|j| in_disk(rng, if j == 0 { 1.3 } else { 0.8 }))
            .collect();
        nodes.push(Node::new(z, values));
    }
    InterpProblem::new(nodes, 0).unwrap()
}

/// Random problem whose Pick matrix is comfortably invertible; `kappa` is
/// set to `sq_-(P)`.
pub fn random_problem(rng: &mut Rng8) -> (InterpProblem, PickSystem) {
    loop {
        let p = random_problem_raw(rng, 3, 2, 0.7);
        let Ok(ps) = pick_system(&p) else { continue };
        let ev = nevpick::hermlin::eigenvalues(&ps.p);
        let min = ev.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
        let max = ev.iter().map(|x| x.abs()).fold(0.0, f64::max);
        if min < 1e-2 * max.max(1.0) {
            continue;
        }
        let kappa = ps.sq_minus();
        return (p.with_kappa(kappa), ps);
    }
}

/// Random rational Schur function of degree at most 2 with poles outside
/// the disk of radius 1.3, scaled to boundary sup 0.95.
pub fn random_schur(rng: &mut Rng8) -> RatFun {
    let dn = rng.random_range(0..=2);
    let dd = rng.random_range(0..=2);
    let num = Poly::new((0..=dn).map(|_| in_disk(rng, 1.0)).collect());
    let poles: Vec<Complex64> = (0..dd)
        .map(|_| {
            let w = in_disk(rng, 1.0 / 1.3);
            if w.norm() < 1e-3 { c(10.0) } else { 1.0 / w.conj() }
        })
        .collect();
    let den = Poly::from_roots(&poles, c(1.0));
    let f = RatFun::new(num, den).unwrap();
    if f.is_zero() {
        return RatFun::constant(c(0.5));
    }
    let (sup, _) = boundary_sup(&f).unwrap();
    f.scale(c(0.95 / sup))
}

pub fn random_blaschke(rng: &mut Rng8, degree: usize) -> Blaschke {
    let zeros = (0..degree).map(|_| in_disk(rng, 0.8)).collect();
    let factor = Complex64::from_polar(1.0, rng.random::<f64>() * std::f64::consts::TAU);
    Blaschke::new(zeros, factor).unwrap()
}

/// A nondegenerate problem with its `Theta`, and an admissible parameter;
/// the problem's `kappa` is `sq_-(P) + deg B`.
pub fn random_admissible(rng: &mut Rng8) -> (InterpProblem, Theta, ParamPair) {
    loop {
        let (p, ps) = random_problem(rng);
        let theta = build_theta(&ps).unwrap();
        for _ in 0..20 {
            let deg = rng.random_range(0..=2);
            let param = match ParamPair::new(random_schur(rng), random_blaschke(rng, deg)) {
                Ok(x) => x,
                Err(_) => continue,
            };
            let adm = admissible(&theta, &param, &p).unwrap();
            let margin = adm.nodes.iter().map(|n| n.v.norm()).fold(f64::INFINITY, f64::min);
            if adm.pass && margin > 1e-3 {
                let kappa = ps.sq_minus() + param.b.degree();
                return (p.with_kappa(kappa), theta, param);
            }
        }
    }
}

/// A parameter forcing `Theta21 S + Theta22 B` to vanish at one node: with
/// `t = -Theta22(z_i) B(z_i) / Theta21(z_i)` of modulus below one, take
/// `S = (t + w phi) / (1 + conj(t) w phi)`, `phi` the disk automorphism
/// vanishing at `z_i`.
pub fn random_degenerate(rng: &mut Rng8) -> (InterpProblem, Theta, ParamPair, usize) {
    loop {
        let (p, ps) = random_problem(rng);
        let theta = build_theta(&ps).unwrap();
        for _ in 0..20 {
            let i = rng.random_range(0..p.nodes.len());
            let zi = p.nodes[i].z;
            let deg = rng.random_range(0..=1);
            let b = random_blaschke(rng, deg);
            if b.zeros().iter().any(|a| p.nodes.iter().any(|n| (n.z - a).norm() < 0.05)) {
                continue;
            }
            let th = theta.eval(zi).unwrap();
            if th[1][0].norm() < 1e-3 {
                continue;
            }
            let t = -th[1][1] * b.eval(zi) / th[1][0];
            if t.norm() > 0.9 {
                continue;
            }
            let w = in_disk(rng, 0.9);
            let phi_num = Poly::new(vec![-zi, c(1.0)]);
            let phi_den = Poly::new(vec![c(1.0), -zi.conj()]);
            let num = &phi_den.scale(t) + &phi_num.scale(w);
            let den = &phi_den + &phi_num.scale(t.conj() * w);
            let Ok(s) = RatFun::new(num, den) else { continue };
            let Ok(param) = ParamPair::new(s, b) else { continue };
            return (p, theta, param, i);
        }
    }
}

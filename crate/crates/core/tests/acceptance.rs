//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use nevpick::interp::{
    big_kernel_negsquares, build_theta, classify_parameter, default_contours, divisor_remainder, lft_apply,
    lft_invert, omega_check, pick_system, schwarz_pick_matrix, verify_solution, InterpError,
    InterpProblem, ParamPair, Theta, VERIFY_TOL,
};
use nevpick::ratfun::{Poly, RatFun};
use nevpick::schurclass::{
    class_index, default_grid, winding_count, zeros_in_disk, Blaschke, ContourSpec, CONTRACTIVE_TOL,
    DEFAULT_KERNEL_TOL,
};
use num_complex::Complex64;

const GOLDEN_TOL: f64 = 1e-12;
const GOLDEN_TIME: Duration = Duration::from_secs(1);
const INTERP_TOL: f64 = 1e-10;
const J_UNITARY_TOL: f64 = 1e-9;
const KERNEL_IDENTITY_TOL: f64 = 1e-8;
const NONDEGENERATE_TOL: f64 = 1e-6;
const RESIDUE_TOL: f64 = 1e-8;
const PROPERTY_TIME: Duration = Duration::from_secs(30);
const ROUND_TRIP_TOL: f64 = 1e-8;
const SCHWARZ_PICK_TOL: f64 = 1e-6;
const SCHWARZ_PICK_RADIUS: f64 = 0.85;
const SCHWARZ_PICK_POINTS: usize = 128;
const REMAINDER_TOL: f64 = 1e-9;

const RANDOM_PROBLEMS: usize = 50;
const RANDOM_PARAMS: usize = 50;
const DEGENERATE_PARAMS: usize = 20;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn max_entry(m: &[[Complex64; 2]; 2]) -> f64 {
    m.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max)
}

fn mat_close(m: &nalgebra::DMatrix<Complex64>, want: &[f64]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, w) in want.iter().enumerate() {
        let (r, col) = (i / m.ncols(), i % m.ncols());
        worst = worst.max((m[(r, col)] - c(*w)).norm());
    }
    worst
}

fn worked_theta(kappa: usize) -> Theta {
    build_theta(&pick_system(&worked(kappa)).unwrap()).unwrap()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let ps = pick_system(&worked(1)).map_err(|e| e.to_string())?;
    let dp = mat_close(ps.p.matrix(), &[0.0, 0.5, 0.5, 1.0]);
    let dinv = mat_close(ps.p_inv.as_ref().unwrap(), &[-4.0, 2.0, 2.0, 0.0]);
    ensure(dp <= GOLDEN_TOL, || format!("P off by {dp:e}"))?;
    ensure(dinv <= GOLDEN_TOL, || format!("P^-1 off by {dinv:e}"))?;
    let inertia = (ps.inertia.n_plus, ps.inertia.n_minus, ps.inertia.n_zero);
    ensure(inertia == (1, 1, 0), || format!("inertia {inertia:?}"))?;
    let theta = build_theta(&ps).map_err(|e| e.to_string())?;
    let den = Poly::from_real(&[2.0, -1.0]);
    let nums = [
        [Poly::from_real(&[-2.0, 3.0]), Poly::from_real(&[0.0, 2.0, -2.0])],
        [Poly::from_real(&[-2.0, 2.0]), Poly::from_real(&[0.0, 3.0, -2.0])],
    ];
    let mut dtheta: f64 = 0.0;
    for a in 0..2 {
        for b in 0..2 {
            let want = RatFun::new(nums[a][b].clone(), den.clone()).unwrap();
            dtheta = dtheta.max(theta.entry(a, b).coeff_distance(&want));
        }
    }
    ensure(dtheta <= GOLDEN_TOL, || format!("Theta off by {dtheta:e}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < GOLDEN_TIME, || format!("took {elapsed:?}"))?;
    Ok(format!("P {dp:.1e}, P^-1 {dinv:.1e}, Theta {dtheta:.1e}, inertia (1,1,0), {elapsed:?}"))
}

fn check_conditions(f: &RatFun, index: usize) -> Result<(f64, f64), String> {
    let r0 = (f.eval(c(0.0)).map_err(|e| e.to_string())? - c(1.0)).norm();
    let r1 = (f.eval(c(0.5)).map_err(|e| e.to_string())? - c(0.5)).norm();
    ensure(r0 <= INTERP_TOL && r1 <= INTERP_TOL, || format!("residuals {r0:e}, {r1:e}"))?;
    let kl = class_index(f, CONTRACTIVE_TOL).map_err(|e| e.to_string())?;
    ensure(kl.index == index, || format!("class index {} instead of {index}", kl.index))?;
    Ok((r0, r1))
}

fn criterion_2_solutions() -> Vec<(usize, RatFun)> {
    let half = ParamPair::new(RatFun::constant(c(0.5)), Blaschke::one()).unwrap();
    let quarter = ParamPair::from_e(&RatFun::new(Poly::from_real(&[0.25]), Poly::identity()).unwrap()).unwrap();
    vec![
        (1, lft_apply(&worked_theta(1), &half).unwrap().f),
        (2, lft_apply(&worked_theta(2), &quarter).unwrap().f),
    ]
}

fn criterion_2() -> Check {
    let sols = criterion_2_solutions();
    let (a0, a1) = check_conditions(&sols[0].1, 1)?;
    let (b0, b1) = check_conditions(&sols[1].1, 2)?;
    let da = sols[0].1.coeff_distance(&half_solution());
    let db = sols[1].1.coeff_distance(&quarter_solution());
    ensure(da <= INTERP_TOL && db <= INTERP_TOL, || format!("closed forms differ by {da:e}, {db:e}"))?;
    Ok(format!(
        "E=1/2: residuals {:.1e}, index 1; E=1/(4z): residuals {:.1e}, index 2",
        a0.max(a1),
        b0.max(b1)
    ))
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let mut rng = rng(3);
    let (mut ju, mut ki, mut md, mut res) = (0.0f64, 0.0f64, f64::INFINITY, 0.0f64);
    let jm = [[c(1.0), c(0.0)], [c(0.0), c(-1.0)]];
    for case in 0..RANDOM_PROBLEMS {
        let (_, ps) = random_problem(&mut rng);
        let theta = build_theta(&ps).map_err(|e| format!("case {case}: {e}"))?;
        for k in 0..64 {
            let t = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 64.0);
            let th = theta.eval(t).unwrap();
            let mut d = [[c(0.0); 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    let v: Complex64 = (0..2).map(|l| th[l][i].conj() * jm[l][l] * th[l][j]).sum();
                    d[i][j] = v - jm[i][j];
                }
            }
            ju = ju.max(max_entry(&d));
        }
        for _ in 0..16 {
            let (z, zeta) = (in_disk(&mut rng, 0.95), in_disk(&mut rng, 0.95));
            let (a, b) = (theta.eval(z).unwrap(), theta.eval(zeta).unwrap());
            let rhs = theta.kernel_rhs(z, zeta).unwrap();
            let mut d = [[c(0.0); 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    let ajb: Complex64 = (0..2).map(|l| a[i][l] * jm[l][l] * b[j][l].conj()).sum();
                    d[i][j] = (jm[i][j] - ajb) / (c(1.0) - z * zeta.conj()) - rhs[i][j];
                }
            }
            ki = ki.max(max_entry(&d));
        }
        let n11 = zeros_in_disk(theta.entry(0, 0)).map_err(|e| e.to_string())?;
        let n22 = zeros_in_disk(theta.entry(1, 1)).map_err(|e| e.to_string())?;
        ensure(n11 == ps.sq_plus() && n22 == ps.sq_minus(), || {
            format!("case {case}: N(Theta11) = {n11}, N(Theta22) = {n22}, inertia {:?}", ps.inertia)
        })?;
        for _ in 0..100 {
            let th = theta.eval(in_disk(&mut rng, 1.0)).unwrap();
            md = md.min(th[1][0].norm() + th[1][1].norm());
        }
        let report = nevpick::interp::selfcheck_report(&theta, 16).map_err(|e| e.to_string())?;
        res = res.max(report.node_residue);
    }
    let elapsed = start.elapsed();
    ensure(ju <= J_UNITARY_TOL, || format!("J-unitarity {ju:e}"))?;
    ensure(ki <= KERNEL_IDENTITY_TOL, || format!("kernel identity {ki:e}"))?;
    ensure(md > NONDEGENERATE_TOL, || format!("min |Theta21|+|Theta22| = {md:e}"))?;
    ensure(res <= RESIDUE_TOL, || format!("node residue {res:e}"))?;
    ensure(elapsed < PROPERTY_TIME, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{RANDOM_PROBLEMS} problems: J {ju:.1e}, kernel {ki:.1e}, zero counts exact, min {md:.2e}, residue {res:.1e}, {elapsed:?}"
    ))
}

struct Fixture {
    problem: InterpProblem,
    theta: Theta,
    param: ParamPair,
    f: RatFun,
    v: RatFun,
}

fn random_fixtures() -> Vec<Fixture> {
    let mut rng = rng(4);
    (0..RANDOM_PARAMS)
        .map(|_| {
            let (problem, theta, param) = random_admissible(&mut rng);
            let lp = lft_apply(&theta, &param).unwrap();
            let v = lp.v.reduce().unwrap();
            Fixture { problem, theta, param, f: lp.f, v }
        })
        .collect()
}

fn criterion_4(fx: &[Fixture]) -> Check {
    let mut worst: f64 = 0.0;
    for (i, x) in fx.iter().enumerate() {
        let verdict = verify_solution(&x.problem, &x.f, VERIFY_TOL);
        ensure(verdict.pass, || format!("case {i}: {:?}", verdict.details))?;
        let e = lft_invert(&x.theta, &x.f).map_err(|e| format!("case {i}: {e}"))?;
        let d = e.coeff_distance(&x.param.e().unwrap());
        ensure(d <= ROUND_TRIP_TOL, || format!("case {i}: parameter recovered to {d:e}"))?;
        worst = worst.max(d);
    }
    Ok(format!("{} parameters verified; worst parameter recovery {worst:.1e}", fx.len()))
}

fn winding_radius(g: &RatFun) -> f64 {
    let mut inner: f64 = 0.0;
    let mut outer: f64 = 1.0;
    for r in g.zeros().unwrap().iter().chain(g.poles().unwrap().iter()) {
        let m = r.value.norm();
        if m < 1.0 {
            inner = inner.max(m);
        } else {
            outer = outer.min(m);
        }
    }
    0.5 * (inner + outer)
}

fn criterion_5(fx: &[Fixture]) -> Check {
    for (i, x) in fx.iter().enumerate() {
        let expected = x.problem.kappa;
        let n = zeros_in_disk(&x.v).map_err(|e| format!("case {i}: {e}"))?;
        ensure(n == expected, || format!("case {i}: N(V) = {n}, expected {expected}"))?;
        let r = winding_radius(&x.v);
        let w = [512, 4096]
            .iter()
            .find_map(|&pts| winding_count(&x.v, &ContourSpec::centered(r, pts).unwrap()).ok())
            .ok_or_else(|| format!("case {i}: winding quadrature inconclusive"))?;
        ensure(w == n as i64, || format!("case {i}: winding {w}, roots {n}"))?;
    }
    Ok(format!("{} fixtures: N(V) = sq_-(P) + deg B, winding counts agree", fx.len()))
}

fn criterion_6() -> Check {
    let p = worked(1);
    let theta = worked_theta(1);
    let param = ParamPair::new(RatFun::identity(), Blaschke::one()).unwrap();
    let r = classify_parameter(&theta, &param, &p).map_err(|e| e.to_string())?;
    ensure(r.m == vec![1, 0], || format!("m = {:?}", r.m))?;
    ensure(r.gamma_m == 1 && r.predicted_index == 0, || {
        format!("gamma {}, predicted {}", r.gamma_m, r.predicted_index)
    })?;
    ensure(r.i_zero == vec![0] && r.i_plus == vec![1] && r.i_minus.is_empty(), || "index sets".into())?;
    ensure(r.f.coeff_distance(&RatFun::identity()) <= GOLDEN_TOL, || format!("realized f = {}", r.f))?;
    ensure(
        r.retained_conditions.len() == 1 && r.retained_conditions[0].node == 1 && r.retained_conditions[0].orders == vec![0],
        || format!("retained {:?}", r.retained_conditions),
    )?;
    let f0 = r.f.eval(c(0.0)).unwrap();
    ensure((f0 - c(1.0)).norm() > 0.5, || "f(0) = 1 unexpectedly retained".into())?;

    let mut rng = rng(6);
    let mut hist = [0usize; 4];
    for k in 0..DEGENERATE_PARAMS {
        let (problem, theta, param, node) = random_degenerate(&mut rng);
        let r = classify_parameter(&theta, &param, &problem).map_err(|e| format!("case {k}: {e}"))?;
        ensure(r.m[node] >= 1, || format!("case {k}: m = {:?} at engineered node {node}", r.m))?;
        hist[r.gamma_m.min(3)] += 1;
    }
    Ok(format!(
        "E = z: m = (1,0), gamma 1, index 0, f = z; {DEGENERATE_PARAMS} engineered parameters validated (gamma histogram {hist:?})"
    ))
}

/// Double trapezoid sum of the Schwarz–Pick integral on one centered
/// circle, evaluated without any analyticity precondition.
fn raw_centered_quadrature(f: &RatFun, problem: &InterpProblem, r: f64, n: usize) -> nalgebra::DMatrix<Complex64> {
    let sys = nevpick::hermlin::build_system(problem).unwrap();
    let dim = sys.dim();
    let xs: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    let a: Vec<_> = xs
        .iter()
        .map(|&x| {
            let m = nalgebra::DMatrix::<Complex64>::identity(dim, dim) * x - &sys.t;
            m.lu().solve(&sys.e).unwrap() * (x / n as f64)
        })
        .collect();
    let fx: Vec<Complex64> = xs.iter().map(|&x| f.eval(x).unwrap()).collect();
    let mut p = nalgebra::DMatrix::<Complex64>::zeros(dim, dim);
    for k in 0..n {
        for l in 0..n {
            let kern = (c(1.0) - fx[k] * fx[l].conj()) / (c(1.0) - xs[k] * xs[l].conj());
            p += &a[k] * a[l].adjoint() * kern;
        }
    }
    p
}

fn criterion_7() -> Check {
    let want = [0.0, 0.5, 0.5, 1.0];
    let mut literal = Vec::new();
    let mut supplementary = Vec::new();
    let mut ok = true;
    for (kappa, f) in criterion_2_solutions() {
        let p = worked(kappa);
        let contour = ContourSpec::centered(SCHWARZ_PICK_RADIUS, SCHWARZ_PICK_POINTS).unwrap();
        match schwarz_pick_matrix(&f, &p, &[contour]) {
            Ok(sp) => {
                let d = mat_close(sp.matrix(), &want);
                ok &= d <= SCHWARZ_PICK_TOL;
                literal.push(format!("kappa {kappa}: off by {d:.1e}"));
            }
            Err(e) => {
                ok = false;
                let raw = raw_centered_quadrature(&f, &p, SCHWARZ_PICK_RADIUS, SCHWARZ_PICK_POINTS);
                let d = mat_close(&raw, &want);
                let msg = match e {
                    InterpError::PoleEnclosed(z) => format!("encloses pole {z:.4}"),
                    e => e.to_string(),
                };
                literal.push(format!("kappa {kappa}: circle {msg}, raw sum off by {d:.2}"));
            }
        }
        let cycle = default_contours(&f, &p, SCHWARZ_PICK_POINTS).map_err(|e| e.to_string())?;
        let sp = schwarz_pick_matrix(&f, &p, &cycle).map_err(|e| e.to_string())?;
        let d = mat_close(sp.matrix(), &want);
        supplementary.push(format!("{d:.1e}"));
    }
    let text = format!(
        "radius {SCHWARZ_PICK_RADIUS}: {}; node circles ({SCHWARZ_PICK_POINTS} points): off by {}",
        literal.join("; "),
        supplementary.join(", ")
    );
    if ok { Ok(text) } else { Err(text) }
}

fn criterion_8(fx: &[Fixture]) -> Check {
    let mut cases: Vec<(InterpProblem, RatFun)> = vec![
        (worked(1), half_solution()),
        (worked(2), quarter_solution()),
        (worked(1), RatFun::identity()),
    ];
    for x in fx.iter().filter(|x| x.problem.kappa <= 2) {
        cases.push((x.problem.clone(), x.f.clone()));
    }
    let mut worst: f64 = 0.0;
    for (i, (p, f)) in cases.iter().enumerate() {
        let dr = divisor_remainder(p, f).map_err(|e| format!("case {i}: {e}"))?;
        let d = dr.reconstruct().unwrap().coeff_distance(f);
        ensure(d <= REMAINDER_TOL, || format!("case {i}: phi + theta h off by {d:e}"))?;
        worst = worst.max(d);
    }
    let dr = divisor_remainder(&worked(1), &RatFun::identity()).unwrap();
    let want_h = RatFun::new(Poly::from_real(&[2.0, -1.0]), Poly::identity()).unwrap();
    ensure(dr.h.coeff_distance(&want_h) <= REMAINDER_TOL && dr.h_index == 1, || format!("h = {}", dr.h))?;
    ensure(!verify_solution(&worked(1), &RatFun::identity(), VERIFY_TOL).pass, || "f = z verified".into())?;

    let mut omega_cases: Vec<(InterpProblem, usize, RatFun, bool)> = vec![
        (worked(1), 1, half_solution(), true),
        (worked(1), 1, RatFun::identity(), true),
        (worked(1), 1, RatFun::constant(c(2.0)), false),
        (worked(2), 2, quarter_solution(), true),
    ];
    for x in fx.iter().filter(|x| x.problem.kappa <= 2) {
        omega_cases.push((x.problem.clone(), x.problem.kappa, x.f.clone(), true));
    }
    for (i, (p, kappa, f, expected)) in omega_cases.iter().enumerate() {
        let r = omega_check(p, *kappa, f).map_err(|e| format!("omega case {i}: {e}"))?;
        ensure(r.disagreement.is_none(), || format!("omega case {i}: {r:?}"))?;
        ensure(r.member == Some(*expected), || format!("omega case {i}: member {:?}", r.member))?;
    }
    // the bordered kernel reaches the expected count on the default grid
    let ps = pick_system(&worked(1)).unwrap();
    let grid = default_grid(&[c(0.0), c(0.5), c(1.0 - 2f64.sqrt() / 2.0)]);
    let n = big_kernel_negsquares(&ps, &half_solution(), &grid, DEFAULT_KERNEL_TOL).unwrap().negative;
    ensure(n == 1, || format!("bordered kernel count {n}"))?;
    Ok(format!(
        "{} round trips (worst {worst:.1e}); h = (2-z)/z with one pole; {} omega checks agree",
        cases.len(),
        omega_cases.len()
    ))
}

fn main() {
    let start = Instant::now();
    let fixtures = random_fixtures();
    let results: Vec<(&str, Check)> = vec![
        ("1 worked example golden values", criterion_1()),
        ("2 solution generation", criterion_2()),
        ("3 coefficient matrix properties", criterion_3()),
        ("4 parametrization round trip", criterion_4(&fixtures)),
        ("5 zero-count law", criterion_5(&fixtures)),
        ("6 parameter classification", criterion_6()),
        ("7 Schwarz-Pick quadrature", criterion_7()),
        ("8 divisor-remainder and omega", criterion_8(&fixtures)),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(msg) => println!("PASS  criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name}: {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed ({:?})", results.len() - failed, start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}

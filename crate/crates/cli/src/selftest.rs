//! Golden checks on the two-node example: nodes 0 and 1/2 with values
//! 1 and 1/2.

use nevpick::hermlin::{build_system, eigenvalues, matrix_rows};
use nevpick::interp::{
    admissible, build_theta, lft_apply, pick_system, selfcheck_report, verify_solution, InterpProblem, Node,
    ParamPair, Theta, VERIFY_TOL,
};
use nevpick::ratfun::{Poly, RatFun};
use nevpick::schurclass::{class_index, Blaschke, CONTRACTIVE_TOL};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::{Report, Status};

const GOLDEN: f64 = 1e-12;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn problem(kappa: usize) -> InterpProblem {
    InterpProblem::new(vec![Node::new(c(0.0), vec![c(1.0)]), Node::new(c(0.5), vec![c(0.5)])], kappa)
        .expect("example problem is valid")
}

/// Largest entrywise gap between row-major entries and `want`.
fn gap<'a>(entries: impl IntoIterator<Item = &'a Complex64>, want: &[f64]) -> f64 {
    let got: Vec<&Complex64> = entries.into_iter().collect();
    if got.len() != want.len() {
        return f64::INFINITY;
    }
    got.iter().zip(want).map(|(&&g, &w)| (g - c(w)).norm()).fold(0.0, f64::max)
}

struct Checks(Vec<Value>);

impl Checks {
    fn record(&mut self, name: &str, outcome: Result<String, String>) {
        let (pass, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.0.push(json!({ "name": name, "pass": pass, "detail": detail }));
    }
}

fn within(value: f64, tol: f64) -> Result<String, String> {
    if value <= tol {
        Ok(format!("deviation {value:e}"))
    } else {
        Err(format!("deviation {value:e} exceeds {tol:e}"))
    }
}

fn theta_gap(theta: &Theta) -> f64 {
    let den = Poly::from_real(&[2.0, -1.0]);
    let nums = [
        [Poly::from_real(&[-2.0, 3.0]), Poly::from_real(&[0.0, 2.0, -2.0])],
        [Poly::from_real(&[-2.0, 2.0]), Poly::from_real(&[0.0, 3.0, -2.0])],
    ];
    let mut worst: f64 = 0.0;
    for (a, row) in nums.iter().enumerate() {
        for (b, num) in row.iter().enumerate() {
            match RatFun::new(num.clone(), den.clone()) {
                Ok(want) => worst = worst.max(theta.entry(a, b).coeff_distance(&want)),
                Err(_) => return f64::INFINITY,
            }
        }
    }
    worst
}

pub fn run() -> Report {
    let mut checks = Checks(Vec::new());
    let p1 = problem(1);

    checks.record(
        "system matrices T = diag(0, 1/2), E = (1, 1), C = (1, 1/2)",
        build_system(&p1).map_err(|e| e.to_string()).and_then(|s| {
            let d = gap(matrix_rows(&s.t).iter().flatten(), &[0.0, 0.0, 0.0, 0.5])
                .max(gap(s.e.iter(), &[1.0, 1.0]))
                .max(gap(s.c.iter(), &[1.0, 0.5]));
            within(d, GOLDEN)
        }),
    );

    let ps = match pick_system(&p1) {
        Ok(ps) => ps,
        Err(e) => {
            checks.record("Pick system", Err(e.to_string()));
            return finish(checks);
        }
    };
    checks.record("P = [[0, 1/2], [1/2, 1]]", within(gap(matrix_rows(ps.p.matrix()).iter().flatten(), &[0.0, 0.5, 0.5, 1.0]), GOLDEN));
    let ev = eigenvalues(&ps.p);
    let s2 = 2f64.sqrt();
    checks.record(
        "eigenvalues (1 - sqrt 2)/2 and (1 + sqrt 2)/2",
        within((ev[0] - (1.0 - s2) / 2.0).abs().max((ev[1] - (1.0 + s2) / 2.0).abs()), GOLDEN),
    );
    let inertia = (ps.inertia.n_plus, ps.inertia.n_minus, ps.inertia.n_zero);
    checks.record(
        "inertia (1, 1, 0) and least kappa 1",
        if inertia == (1, 1, 0) && ps.sq_minus() == 1 {
            Ok(format!("inertia {inertia:?}"))
        } else {
            Err(format!("inertia {inertia:?}"))
        },
    );
    checks.record(
        "P^-1 = [[-4, 2], [2, 0]]",
        match &ps.p_inv {
            Some(m) => within(gap(matrix_rows(m).iter().flatten(), &[-4.0, 2.0, 2.0, 0.0]), GOLDEN),
            None => Err("P reported singular".into()),
        },
    );

    let theta = match build_theta(&ps) {
        Ok(t) => t,
        Err(e) => {
            checks.record("coefficient matrix", Err(e.to_string()));
            return finish(checks);
        }
    };
    checks.record(
        "Theta = [[3z-2, 2z(1-z)], [2(z-1), z(3-2z)]] / (2-z)",
        within(theta_gap(&theta), GOLDEN),
    );
    checks.record(
        "Theta(0) = [[-1, 0], [-1, 0]]",
        theta.eval(c(0.0)).map_err(|e| e.to_string()).and_then(|m| {
            let want = [[-1.0, 0.0], [-1.0, 0.0]];
            let d = (0..2)
                .flat_map(|i| (0..2).map(move |j| (i, j)))
                .map(|(i, j)| (m[i][j] - c(want[i][j])).norm())
                .fold(0.0, f64::max);
            within(d, GOLDEN)
        }),
    );
    checks.record(
        "coefficient matrix self-check",
        selfcheck_report(&theta, 64)
            .map_err(|e| e.to_string())
            .and_then(|r| if r.pass { Ok("all clauses hold".into()) } else { Err(r.failures.join("; ")) }),
    );

    let half = ParamPair::new(RatFun::constant(c(0.5)), Blaschke::one());
    checks.record(
        "E = 1/2 is admissible and gives a solution of index 1",
        half.map_err(|e| e.to_string()).and_then(|param| {
            let adm = admissible(&theta, &param, &p1).map_err(|e| e.to_string())?;
            let f = lft_apply(&theta, &param).map_err(|e| e.to_string())?.f;
            let verdict = verify_solution(&p1, &f, VERIFY_TOL);
            if adm.pass && verdict.pass {
                Ok(format!("f = {f}"))
            } else {
                Err(format!("admissible {}, verdict {:?}", adm.pass, verdict.details))
            }
        }),
    );

    let p2 = problem(2);
    let quarter = RatFun::new(Poly::from_real(&[0.25]), Poly::identity())
        .map_err(|e| e.to_string())
        .and_then(|e| ParamPair::from_e(&e).map_err(|e| e.to_string()));
    checks.record(
        "kappa 2, E = 1/(4z) is admissible through the pole clause",
        quarter.and_then(|param| {
            let th = theta.eval(c(0.0)).map_err(|e| e.to_string())?;
            let adm = admissible(&theta, &param, &p2).map_err(|e| e.to_string())?;
            let f = lft_apply(&theta, &param).map_err(|e| e.to_string())?.f;
            let index = class_index(&f, CONTRACTIVE_TOL).map_err(|e| e.to_string())?.index;
            let verdict = verify_solution(&p2, &f, VERIFY_TOL);
            let pole_clause = adm.nodes[0].pole_clause && adm.pass;
            if th[1][1].norm() <= GOLDEN && th[1][0].norm() > 0.5 && pole_clause && index == 2 && verdict.pass {
                Ok(format!("Theta22(0) = 0, Theta21(0) = {}; f = {f}", th[1][0].re))
            } else {
                Err(format!("pole clause {pole_clause}, index {index}, verdict {:?}", verdict.details))
            }
        }),
    );

    checks.record(
        "f = z is rejected at node 0",
        {
            let verdict = verify_solution(&p1, &RatFun::identity(), VERIFY_TOL);
            if verdict.pass { Err("f = z verified".into()) } else { Ok(verdict.details.join("; ")) }
        },
    );

    finish(checks)
}

fn finish(checks: Checks) -> Report {
    let pass = checks.0.iter().all(|c| c["pass"] == true);
    let value = json!({ "verb": "selftest", "pass": pass, "checks": checks.0 });
    Report::new(value, if pass { Status::Pass } else { Status::SelfCheck })
}

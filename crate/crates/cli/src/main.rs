mod args;
mod commands;
mod input;
mod output;
mod selftest;

use std::process::ExitCode;

use clap::Parser;
use serde_json::Value;

use args::{Cli, Command};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Input(m) => write!(f, "input: {m}"),
            CliError::Internal(m) => write!(f, "internal: {m}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    SelfCheck,
}

pub struct Report {
    value: Value,
    status: Status,
}

impl Report {
    pub fn new(value: Value, status: Status) -> Self {
        Self { value, status }
    }
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Analyze { problem, eig } => {
            commands::analyze(&input::load_problem(&problem.problem, problem.kappa)?, eig.tol_eig)
        }
        Command::Theta { problem, eig, points } => {
            commands::theta(&input::load_problem(&problem.problem, problem.kappa)?, eig.tol_eig, *points)
        }
        Command::Solve { problem, param, eig, verify } => {
            let p = input::load_problem(&problem.problem, problem.kappa)?;
            let pair = input::parse_param(param.param_e.as_deref(), param.param_s.as_deref(), param.param_b.as_deref())?;
            commands::solve(&p, &pair, eig.tol_eig, verify.tol_verify)
        }
        Command::Verify { problem, f, verify, contour } => {
            let p = input::load_problem(&problem.problem, problem.kappa)?;
            commands::verify(&p, &input::parse_ratfun(&f.f)?, verify.tol_verify, contour.radius, contour.points)
        }
        Command::Invert { problem, f, eig } => {
            let p = input::load_problem(&problem.problem, problem.kappa)?;
            commands::invert(&p, &input::parse_ratfun(&f.f)?, eig.tol_eig)
        }
        Command::Classify { problem, param, eig, tol_zero } => {
            let p = input::load_problem(&problem.problem, problem.kappa)?;
            let pair = input::parse_param(param.param_e.as_deref(), param.param_s.as_deref(), param.param_b.as_deref())?;
            commands::classify(&p, &pair, eig.tol_eig, *tol_zero)
        }
        Command::Decompose { problem, f } => {
            let p = input::load_problem(&problem.problem, problem.kappa)?;
            commands::decompose(&p, &input::parse_ratfun(&f.f)?)
        }
        Command::Omega { problem, f, eig, grid_file } => {
            let p = input::load_problem(&problem.problem, problem.kappa)?;
            let grid = grid_file.as_deref().map(input::load_points).transpose()?;
            commands::omega(&p, &input::parse_ratfun(&f.f)?, grid.as_deref(), eig.tol_eig)
        }
        Command::Selftest => Ok(selftest::run()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            let body = if cli.text { output::to_text(&report.value) } else { output::to_json(&report.value) };
            print!("{body}");
            ExitCode::from(match report.status {
                Status::Pass => 0,
                Status::Fail => 1,
                Status::SelfCheck => 3,
            })
        }
        Err(e) => {
            eprintln!("nevpick: {e}");
            ExitCode::from(e.code())
        }
    }
}

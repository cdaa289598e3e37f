use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

const RATFUN_FORMS: &str = "const:<re>[,<im>] | identity | ratio:<numfile>:<denfile> | file:<ratfun.json>";

#[derive(Parser, Debug)]
#[command(name = "nevpick", version, about = "Nevanlinna-Pick interpolation in generalized Schur classes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit a JSON report (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,

    /// Emit an indented plain-text report.
    #[arg(long, global = true)]
    pub text: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Pick matrix, its inertia and the least admissible kappa.
    Analyze {
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        eig: EigArgs,
    },
    /// Rational coefficient matrix and its structural self-check.
    Theta {
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        eig: EigArgs,
        /// Boundary samples and kernel-identity pairs for the self-check.
        #[arg(long, default_value_t = 64)]
        points: usize,
    },
    /// Solution produced by a parameter.
    Solve {
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        param: ParamArgs,
        #[command(flatten)]
        eig: EigArgs,
        #[command(flatten)]
        verify: VerifyTol,
    },
    /// Check a candidate solution against the problem.
    Verify {
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        f: FArgs,
        #[command(flatten)]
        verify: VerifyTol,
        #[command(flatten)]
        contour: ContourArgs,
    },
    /// Parameter E that produces a given solution.
    Invert {
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        f: FArgs,
        #[command(flatten)]
        eig: EigArgs,
    },
    /// Zero multiplicities at the nodes and the predicted class index.
    Classify {
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        param: ParamArgs,
        #[command(flatten)]
        eig: EigArgs,
        /// Relative cut below which a jet coefficient of V counts as zero.
        #[arg(long, default_value_t = nevpick::interp::ZERO_JET_TOL)]
        tol_zero: f64,
    },
    /// Split f as phi + theta h.
    Decompose {
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        f: FArgs,
    },
    /// Three-way membership test for the solution set with kappa negative squares.
    Omega {
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        f: FArgs,
        #[command(flatten)]
        eig: EigArgs,
        /// Kernel grid, a JSON list of [re, im]; two rings of 12 points otherwise.
        #[arg(long)]
        grid_file: Option<PathBuf>,
    },
    /// Replay the worked two-node example and compare against its golden values.
    Selftest,
}

#[derive(Args, Debug)]
pub struct ProblemArgs {
    /// Problem JSON: {"nodes": [{"z": [re, im], "values": [[re, im], ...]}], "kappa": int}.
    #[arg(long)]
    pub problem: PathBuf,
    /// Overrides the kappa in the problem file.
    #[arg(long)]
    pub kappa: Option<usize>,
}

#[derive(Args, Debug)]
pub struct EigArgs {
    /// Absolute cut for zero eigenvalues of P [default: 1e-9 times the Frobenius norm of P].
    #[arg(long)]
    pub tol_eig: Option<f64>,
}

#[derive(Args, Debug)]
pub struct VerifyTol {
    /// Largest accepted residual of an interpolation condition.
    #[arg(long, default_value_t = nevpick::interp::VERIFY_TOL)]
    pub tol_verify: f64,
}

#[derive(Args, Debug)]
pub struct FArgs {
    #[arg(long, help = format!("Candidate solution: {RATFUN_FORMS}"))]
    pub f: String,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = true)]
pub struct ParamArgs {
    #[arg(long, conflicts_with_all = ["param_s", "param_b"], help = format!("Parameter E = S / B: {RATFUN_FORMS}"))]
    pub param_e: Option<String>,
    #[arg(long, requires = "param_b", help = format!("Schur part S: {RATFUN_FORMS}"))]
    pub param_s: Option<String>,
    /// Blaschke part B: const:<re>[,<im>] (unimodular) | identity | blaschke:<zerosfile>.
    #[arg(long, requires = "param_s")]
    pub param_b: Option<String>,
}

#[derive(Args, Debug)]
pub struct ContourArgs {
    /// Radius of one centered Schwarz-Pick contour; per-node circles otherwise.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Trapezoid points per contour.
    #[arg(long, default_value_t = nevpick::interp::DEFAULT_QUAD_POINTS)]
    pub points: usize,
}

// negated comparisons are deliberate: a NaN residual must fail the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod hermlin;
pub mod interp;
pub mod ratfun;
pub mod schurclass;

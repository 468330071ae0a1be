//! Brute-force exponential sums over small finite fields.

mod field;
mod sums;

pub use field::FiniteField;
pub use sums::{
    bound_row, check_hypotheses, chi, divisors, homothety_sum, katz_bound, mellin_check, parseval_defect, psi,
    trace_convolve, BasePoly, BoundRow, TraceFunction, BOUND_SLACK,
};

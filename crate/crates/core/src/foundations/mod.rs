//! Exact scalars, symbolic torus points, tame character labels, slopes and
//! rational functions over `Q` or `F_p`.

mod field;
mod point;
mod ratfun;
mod slope;
mod tame;

pub use field::{Field, Scalar};
pub use point::Point;
pub use ratfun::{Location, Mobius, Poly, RationalFunction};
pub use slope::{Slope, Q};
pub use tame::TameChar;

/// Converts an exact rational known to be a non-negative integer.
pub(crate) fn q_to_u64(x: Q) -> crate::Result<u64> {
    if !x.is_integer() || *x.numer() < 0 {
        return Err(crate::Error::Inconsistent(alloc::format!(
            "expected a non-negative integer, got {x}"
        )));
    }
    Ok(*x.numer() as u64)
}

pub(crate) fn q(n: u64) -> Q {
    Q::from_integer(n as i64)
}

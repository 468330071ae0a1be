use core::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};

pub type Q = Ratio<i64>;

/// A non-negative rational slope of a Newton polygon piece. Zero is tame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slope(Q);

impl Slope {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return invalid("slope with zero denominator");
        }
        Self::from_q(Ratio::new(num, den))
    }

    pub fn from_q(q: Q) -> Result<Self> {
        if q < Q::zero() {
            return invalid(alloc::format!("negative slope {q}"));
        }
        Ok(Slope(q))
    }

    pub fn integer(n: u32) -> Self {
        Slope(Q::from_integer(n as i64))
    }

    pub fn zero() -> Self {
        Slope(Q::zero())
    }

    pub fn one() -> Self {
        Slope(Q::one())
    }

    pub fn half() -> Self {
        Slope(Ratio::new(1, 2))
    }

    pub fn value(self) -> Q {
        self.0
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    pub fn is_tame(self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(self) -> bool {
        self.0.is_one()
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_orders() {
        assert_eq!(Slope::new(2, 4).unwrap(), Slope::half());
        assert!(Slope::new(1, 3).unwrap() < Slope::half());
        assert!(Slope::new(-1, 2).is_err());
        assert!(Slope::new(1, 0).is_err());
        assert_eq!(alloc::format!("{}", Slope::new(3, 2).unwrap()), "3/2");
    }
}

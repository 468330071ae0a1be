use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};

/// Field elements. Over `F_p` the value is kept as an integer in `[0, p)`.
pub type Scalar = Ratio<i128>;

/// Base field of a profile: the rationals (generic characteristic as far as
/// the bookkeeping goes) or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inv(a: i128, p: i128) -> Option<i128> {
    let e = a.extended_gcd(&p);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.mod_floor(&p))
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) || p > (1 << 31) {
            return invalid(alloc::format!("{p} is not a supported prime"));
        }
        Ok(Field::Prime(p))
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Maps a rational into the field. Fails when the denominator vanishes mod p.
    pub fn element(&self, x: Scalar) -> Result<Scalar> {
        match *self {
            Field::Rational => Ok(x),
            Field::Prime(p) => {
                let p = p as i128;
                let Some(dinv) = mod_inv(x.denom().mod_floor(&p), p) else {
                    return invalid(alloc::format!("{x} has no image mod {p}"));
                };
                Ok(Scalar::from_integer((x.numer().mod_floor(&p) * dinv).mod_floor(&p)))
            }
        }
    }

    pub fn from_int(&self, n: i128) -> Scalar {
        match *self {
            Field::Rational => Scalar::from_integer(n),
            Field::Prime(p) => Scalar::from_integer(n.mod_floor(&(p as i128))),
        }
    }

    fn norm(&self, x: Scalar) -> Scalar {
        match *self {
            Field::Rational => x,
            Field::Prime(p) => Scalar::from_integer(x.to_integer().mod_floor(&(p as i128))),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.norm(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.norm(a - b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.norm(-a)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.norm(a * b)
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match *self {
            Field::Rational => Some(a.recip()),
            Field::Prime(p) => mod_inv(a.to_integer(), p as i128).map(Scalar::from_integer),
        }
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = *a;
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let half = f.element(Scalar::new(1, 2)).unwrap();
        assert_eq!(half, Scalar::from_integer(4));
        assert_eq!(f.mul(&half, &f.from_int(2)), Scalar::one());
        assert_eq!(f.inv(&f.from_int(3)), Some(f.from_int(5)));
        assert!(f.element(Scalar::new(1, 14)).is_err());
        assert!(Field::prime(9).is_err());
        assert_eq!(f.pow(&f.from_int(3), 6), Scalar::one());
    }
}

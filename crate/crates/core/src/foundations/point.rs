use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Zero};

use super::field::Scalar;
use crate::error::{invalid, Result};

/// A point of the torus written as a Laurent monomial in named generators,
/// optionally with a concrete value.
///
/// Identity, ordering and hashing look only at the exponents; the value rides
/// along so that pole orders can be computed when it is known.
#[derive(Clone, Debug)]
pub struct Point {
    exps: BTreeMap<String, i64>,
    value: Option<Scalar>,
}

pub(crate) fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Point {
    pub fn identity() -> Self {
        Point { exps: BTreeMap::new(), value: Some(Scalar::one()) }
    }

    pub fn generator(name: &str) -> Result<Self> {
        Self::from_exponents([(name.to_string(), 1)])
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = (String, i64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, e) in exps {
            if !valid_name(&k) {
                return invalid(alloc::format!("bad generator name {k:?}"));
            }
            *map.entry(k).or_insert(0) += e;
        }
        map.retain(|_, e| *e != 0);
        let value = if map.is_empty() { Some(Scalar::one()) } else { None };
        Ok(Point { exps: map, value })
    }

    /// Attaches a concrete value. Zero is rejected since points live on the torus.
    pub fn with_value(mut self, v: Scalar) -> Result<Self> {
        if v.is_zero() {
            return invalid("a torus point cannot have value 0");
        }
        if self.exps.is_empty() && !v.is_one() {
            return invalid("the identity point has value 1");
        }
        self.value = Some(v);
        Ok(self)
    }

    pub fn without_value(mut self) -> Self {
        if !self.exps.is_empty() {
            self.value = None;
        }
        self
    }

    pub fn exponents(&self) -> &BTreeMap<String, i64> {
        &self.exps
    }

    pub fn value(&self) -> Option<&Scalar> {
        self.value.as_ref()
    }

    pub fn is_identity(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn generators(&self) -> impl Iterator<Item = &str> {
        self.exps.keys().map(|s| s.as_str())
    }

    pub fn mul(&self, other: &Point) -> Point {
        let mut exps = self.exps.clone();
        for (k, e) in &other.exps {
            *exps.entry(k.clone()).or_insert(0) += e;
        }
        exps.retain(|_, e| *e != 0);
        let value = if exps.is_empty() {
            Some(Scalar::one())
        } else {
            match (&self.value, &other.value) {
                (Some(a), Some(b)) => Some(a * b),
                _ => None,
            }
        };
        Point { exps, value }
    }

    pub fn inv(&self) -> Point {
        Point {
            exps: self.exps.iter().map(|(k, e)| (k.clone(), -e)).collect(),
            value: self.value.as_ref().map(|v| v.recip()),
        }
    }

    pub fn div(&self, other: &Point) -> Point {
        self.mul(&other.inv())
    }

    /// Parses `1`, `a`, `a^2*b^-1` and the like.
    pub fn parse(s: &str) -> Result<Point> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Point::identity());
        }
        let mut out = Vec::new();
        for factor in s.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let Ok(e) = e.trim().parse::<i64>() else {
                        return invalid(alloc::format!("bad exponent in {factor:?}"));
                    };
                    (n.trim(), e)
                }
                None => (factor, 1),
            };
            out.push((name.to_string(), exp));
        }
        Point::from_exponents(out)
    }
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        self.exps == other.exps
    }
}

impl Eq for Point {}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exps.cmp(&other.exps)
    }
}

impl core::hash::Hash for Point {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.exps.hash(state)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (i, (k, e)) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{k}")?;
            } else {
                write!(f, "{k}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_laws() {
        let a = Point::parse("a^2*b^-1").unwrap();
        let b = Point::parse("b").unwrap();
        assert_eq!(a.mul(&b), Point::parse("a^2").unwrap());
        assert!(a.mul(&a.inv()).is_identity());
        assert_eq!(alloc::format!("{a}"), "a^2*b^-1");
        assert!(Point::parse("2a").is_err());
    }

    #[test]
    fn values_multiply_and_do_not_affect_identity() {
        let s = Point::generator("s").unwrap().with_value(Scalar::from_integer(2)).unwrap();
        let t = Point::generator("t").unwrap().with_value(Scalar::from_integer(3)).unwrap();
        assert_eq!(s.mul(&t).value(), Some(&Scalar::from_integer(6)));
        assert_eq!(s.inv().value(), Some(&Scalar::new(1, 2)));
        assert_eq!(s, Point::generator("s").unwrap());
        assert_eq!(s.div(&s).value(), Some(&Scalar::one()));
    }
}

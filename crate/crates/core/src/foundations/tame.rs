use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;

use num_traits::Zero;

use super::point::valid_name;
use super::slope::Q;
use crate::error::{invalid, Result};

/// Label of a Kummer character: a map from generator names to exponents in
/// `Q/Z`, stored in `[0, 1)`. Multiplication adds exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TameChar(BTreeMap<String, Q>);

fn frac(x: Q) -> Q {
    x - x.floor()
}

impl TameChar {
    pub fn trivial() -> Self {
        TameChar(BTreeMap::new())
    }

    pub fn new(entries: impl IntoIterator<Item = (String, Q)>) -> Result<Self> {
        let mut map: BTreeMap<String, Q> = BTreeMap::new();
        for (k, v) in entries {
            if !valid_name(&k) {
                return invalid(alloc::format!("bad character name {k:?}"));
            }
            let e = map.entry(k).or_insert_with(Q::zero);
            *e = frac(*e + v);
        }
        map.retain(|_, v| !v.is_zero());
        Ok(TameChar(map))
    }

    pub fn entries(&self) -> &BTreeMap<String, Q> {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &TameChar) -> TameChar {
        let mut map = self.0.clone();
        for (k, v) in &other.0 {
            let e = map.entry(k.clone()).or_insert_with(Q::zero);
            *e = frac(*e + v);
        }
        map.retain(|_, v| !v.is_zero());
        TameChar(map)
    }

    pub fn inv(&self) -> TameChar {
        TameChar(self.0.iter().map(|(k, v)| (k.clone(), frac(-v))).collect())
    }
}

impl fmt::Display for TameChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{k}[{v}]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn exponents_live_mod_one() {
        let a = TameChar::new([("chi".to_string(), Q::new(3, 2))]).unwrap();
        assert_eq!(a.entries()["chi"], Q::new(1, 2));
        assert!(a.mul(&a).is_trivial());
        assert_eq!(a.inv(), a);
        let b = TameChar::new([("chi".to_string(), Q::new(1, 3))]).unwrap();
        assert_eq!(b.mul(&b.inv()), TameChar::trivial());
    }
}

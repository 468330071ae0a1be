//! Laurent polynomials recording tame Jordan blocks at 0 and infinity, and
//! their conjectural multiplicativity under convolution.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::foundations::TameChar;

/// Sparse Laurent polynomial with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly(BTreeMap<i64, i64>);

impl LaurentPoly {
    pub fn new(coeffs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut m = BTreeMap::new();
        for (k, c) in coeffs {
            *m.entry(k).or_insert(0) += c;
        }
        m.retain(|_, c| *c != 0);
        LaurentPoly(m)
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, i64> {
        &self.0
    }

    pub fn coeff(&self, k: i64) -> i64 {
        self.0.get(&k).copied().unwrap_or(0)
    }

    pub fn eval_one(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::new(self.0.iter().flat_map(|(i, a)| o.0.iter().map(move |(j, b)| (i + j, a * b))))
    }
}

/// Tame block data of `L_chi-bar (x) K` at both boundary points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiTameData {
    pub chi: TameChar,
    /// Unipotent block sizes at infinity, with multiplicity.
    pub blocks_at_inf: Vec<u64>,
    pub blocks_at_0: Vec<u64>,
    pub euler: u64,
    /// Whether the inputs are asserted to come from pure perverse sheaves
    /// without Kummer sub-objects or quotients.
    pub pure: bool,
}

/// `P = sum a_i T^i`: `a_i` counts blocks of size `i` at infinity for `i > 0`,
/// of size `-i` at 0 for `i < 0`, and `a_0` makes `P(1)` the Euler
/// characteristic. In strict mode a negative `a_0` is an error.
pub fn build_p(d: &ChiTameData, strict: bool) -> Result<LaurentPoly> {
    if d.blocks_at_inf.iter().chain(d.blocks_at_0.iter()).any(|&s| s == 0) {
        return invalid("block sizes must be positive");
    }
    let pos = d.blocks_at_inf.iter().map(|&s| (s as i64, 1));
    let neg = d.blocks_at_0.iter().map(|&s| (-(s as i64), 1));
    let mut p = LaurentPoly::new(pos.chain(neg));
    let a0 = d.euler as i64 - p.eval_one();
    if strict && a0 < 0 {
        return Err(Error::NegativeA0(a0));
    }
    if a0 != 0 {
        p.0.insert(0, a0);
    }
    Ok(p)
}

pub fn multiply_p(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    p.mul(q)
}

/// Block data predicted by a polynomial; `conjectural` unless both inputs
/// were asserted pure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub blocks_at_inf: Vec<u64>,
    pub blocks_at_0: Vec<u64>,
    pub euler: i64,
    pub conjectural: bool,
}

/// Reads block counts back off a polynomial. Negative coefficients away from
/// degree 0 cannot be block counts and are rejected.
pub fn predict_blocks(p: &LaurentPoly, conjectural: bool) -> Result<Prediction> {
    let mut inf = Vec::new();
    let mut zero = Vec::new();
    for (&k, &c) in p.coeffs() {
        if k == 0 {
            continue;
        }
        if c < 0 {
            return invalid(alloc::format!("coefficient {c} of T^{k} is negative"));
        }
        let v = if k > 0 { &mut inf } else { &mut zero };
        v.extend(core::iter::repeat_n(k.unsigned_abs(), c as usize));
    }
    zero.sort_unstable();
    Ok(Prediction { blocks_at_inf: inf, blocks_at_0: zero, euler: p.eval_one(), conjectural })
}

/// Predicted tame blocks of `L_chi-bar (x) (K * L)` from those of the factors.
pub fn predict_convolution(k: &ChiTameData, l: &ChiTameData, strict: bool) -> Result<Prediction> {
    let p = multiply_p(&build_p(k, strict)?, &build_p(l, strict)?);
    predict_blocks(&p, !(k.pure && l.pure))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn data(inf: Vec<u64>, zero: Vec<u64>, euler: u64) -> ChiTameData {
        ChiTameData { chi: TameChar::trivial(), blocks_at_inf: inf, blocks_at_0: zero, euler, pure: true }
    }

    #[test]
    fn build_respects_euler() {
        let p = build_p(&data(vec![1, 2], vec![1], 5), true).unwrap();
        assert_eq!(p.eval_one(), 5);
        assert_eq!(p.coeff(0), 2);
        assert_eq!(build_p(&data(vec![1, 2], vec![], 1), true), Err(Error::NegativeA0(-1)));
        assert_eq!(build_p(&data(vec![1, 2], vec![], 1), false).unwrap().coeff(0), -1);
    }

    #[test]
    fn artin_schreier_square() {
        let a = data(vec![1], vec![], 1);
        let pr = predict_convolution(&a, &a, true).unwrap();
        assert_eq!(pr.blocks_at_inf, vec![2]);
        assert!(pr.blocks_at_0.is_empty());
        assert_eq!(pr.euler, 1);
        assert!(!pr.conjectural);
    }
}

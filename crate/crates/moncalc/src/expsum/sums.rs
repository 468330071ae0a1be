//! Trace functions, multiplicative convolution and the homothety-invariant sum.

use std::f64::consts::PI;
use std::sync::Arc;

use moncalc_core::{Error, Result};
use num_complex::Complex64;
use num_rational::Ratio;

use super::field::FiniteField;

/// A complex-valued function on the units of a finite field, stored in
/// element-index order (`values[x - 1]` is the value at `x`).
#[derive(Clone, Debug)]
pub struct TraceFunction {
    field: Arc<FiniteField>,
    values: Vec<Complex64>,
}

impl TraceFunction {
    pub fn new(field: Arc<FiniteField>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() as u64 != field.q() - 1 {
            return Err(Error::Validation(format!("expected {} values, got {}", field.q() - 1, values.len())));
        }
        Ok(TraceFunction { field, values })
    }

    pub fn from_fn(field: Arc<FiniteField>, f: impl FnMut(u64) -> Complex64) -> Self {
        let values = field.units().map(f).collect();
        TraceFunction { field, values }
    }

    pub fn delta(field: Arc<FiniteField>, at: u64) -> Self {
        Self::from_fn(field, |x| if x == at { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn at(&self, x: u64) -> Complex64 {
        self.values[(x - 1) as usize]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if *self.field != *other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn max_distance(&self, other: &Self) -> Result<f64> {
        self.check_field(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }
}

/// Additive character `x -> exp(2 pi i Tr(x) / p)`.
pub fn psi(field: &FiniteField, x: u64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * field.trace(x) as f64 / field.p() as f64)
}

/// Multiplicative character sending the chosen generator to `exp(2 pi i k/(q-1))`.
pub fn chi(field: &FiniteField, k: u64, x: u64) -> Complex64 {
    let n = field.q() - 1;
    let j = field.log(x).expect("characters are evaluated on units");
    Complex64::from_polar(1.0, 2.0 * PI * ((j * k) % n) as f64 / n as f64)
}

/// `(f * g)(t) = sum over uv = t of f(u) g(v)`, by the literal double loop.
pub fn trace_convolve(f: &TraceFunction, g: &TraceFunction) -> Result<TraceFunction> {
    f.check_field(g)?;
    let field = f.field.clone();
    let mut out = vec![Complex64::new(0.0, 0.0); f.values.len()];
    for u in field.units() {
        for v in field.units() {
            out[(field.mul(u, v) - 1) as usize] += f.at(u) * g.at(v);
        }
    }
    Ok(TraceFunction { field, values: out })
}

fn mellin(f: &TraceFunction, k: u64) -> Complex64 {
    f.field.units().map(|t| f.at(t) * chi(&f.field, k, t)).sum()
}

/// Largest deviation, over all multiplicative characters, between the Mellin
/// transform of `f * g` and the product of the transforms.
pub fn mellin_check(f: &TraceFunction, g: &TraceFunction) -> Result<f64> {
    let c = trace_convolve(f, g)?;
    let n = f.field.q() - 1;
    Ok((0..n).map(|k| (mellin(&c, k) - mellin(f, k) * mellin(g, k)).norm()).fold(0.0, f64::max))
}

fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// `C_{d,r} = (r/d) * sum_{i<r} binom(d+r-i-1, r) binom(r-1, i)`, exactly.
pub fn katz_bound(d: u64, r: u64) -> Result<Ratio<i128>> {
    if d == 0 || r == 0 {
        return Err(Error::Validation("degree and extension degree must be positive".into()));
    }
    let overflow = || Error::Validation(format!("C_{{{d},{r}}} overflows"));
    let mut sum: u128 = 0;
    for i in 0..r {
        let term = binomial(d + r - i - 1, r).and_then(|a| binomial(r - 1, i).and_then(|b| a.checked_mul(b)));
        sum = sum.checked_add(term.ok_or_else(overflow)?).ok_or_else(overflow)?;
    }
    let sum = i128::try_from(sum).map_err(|_| overflow())?;
    let num = sum.checked_mul(r as i128).ok_or_else(overflow)?;
    Ok(Ratio::new(num, d as i128))
}

/// Polynomial over F_p, low degree first, with hypotheses for the bound checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePoly {
    coeffs: Vec<i64>,
}

impl BasePoly {
    pub fn new(p: u64, coeffs: Vec<i64>) -> Self {
        let mut c: Vec<i64> = coeffs.into_iter().map(|x| x.rem_euclid(p as i64)).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        BasePoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<u64> {
        (!self.coeffs.is_empty()).then(|| self.coeffs.len() as u64 - 1)
    }

    /// gcd of the exponents carrying nonzero coefficients, ignoring the constant.
    pub fn exponent_gcd(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        self.coeffs.iter().enumerate().skip(1).filter(|(_, &c)| c != 0).fold(0, |g, (i, _)| gcd(g, i as u64))
    }
}

impl std::fmt::Display for BasePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev().filter(|(_, &c)| c != 0) {
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Checks the hypotheses of the estimate for `g` and `e` over base `F_p`.
pub fn check_hypotheses(p: u64, g: &BasePoly, e: u64) -> Result<u64> {
    let d = g.degree().filter(|&d| d > 0).ok_or_else(|| Error::HypothesisViolated("g must be nonconstant".into()))?;
    if d % p == 0 {
        return Err(Error::HypothesisViolated(format!("degree {d} is divisible by p = {p}")));
    }
    let n = g.exponent_gcd();
    if n != 1 {
        return Err(Error::HypothesisViolated(format!("g is a polynomial in x^{n}")));
    }
    if e == 0 || !(p - 1).is_multiple_of(e) {
        return Err(Error::HypothesisViolated(format!("e = {e} does not divide q - 1 = {}", p - 1)));
    }
    Ok(d)
}

/// The values `g(x^{(p-1)/e})` for `x` running over the units of `field`.
fn homothety_values<'a>(field: &'a FiniteField, g: &BasePoly, e: u64) -> impl Iterator<Item = u64> + 'a {
    let k = (field.p() - 1) / e;
    let coeffs = g.coeffs().to_vec();
    field.units().map(move |x| field.eval_base_poly(&coeffs, field.pow(x, k)))
}

/// `S = sum over x in k_r^* of psi(Tr g(x^{(p-1)/e}))`, base field `F_p`.
pub fn homothety_sum(field: &FiniteField, g: &BasePoly, e: u64) -> Result<Complex64> {
    check_hypotheses(field.p(), g, e)?;
    Ok(homothety_values(field, g, e).map(|y| psi(field, y)).sum())
}

/// Parseval for the family `a -> sum_x psi(a y(x))`: returns the absolute
/// difference between `sum_a |S(a)|^2` and `Q * sum_y N(y)^2`.
pub fn parseval_defect(field: &FiniteField, g: &BasePoly, e: u64) -> Result<f64> {
    check_hypotheses(field.p(), g, e)?;
    let mut counts = vec![0u64; field.q() as usize];
    for y in homothety_values(field, g, e) {
        counts[y as usize] += 1;
    }
    let mut lhs = 0.0;
    for a in 0..field.q() {
        let s: Complex64 = (0..field.q()).filter(|&y| counts[y as usize] > 0).map(|y| psi(field, field.mul(a, y)) * counts[y as usize] as f64).sum();
        lhs += s.norm_sqr();
    }
    let rhs = field.q() as f64 * counts.iter().map(|&c| (c * c) as f64).sum::<f64>();
    Ok((lhs - rhs).abs())
}

/// One row of a bound check.
#[derive(Clone, Debug)]
pub struct BoundRow {
    pub p: u64,
    pub r: u32,
    pub d: u64,
    pub e: u64,
    pub g: BasePoly,
    pub constant: Ratio<i128>,
    pub modulus: f64,
    pub bound: f64,
    pub pass: bool,
}

pub const BOUND_SLACK: f64 = 1e-6;

pub fn bound_row(field: &FiniteField, g: &BasePoly, e: u64) -> Result<BoundRow> {
    let s = homothety_sum(field, g, e)?;
    let d = g.degree().unwrap_or(0);
    let constant = katz_bound(d, field.r() as u64)?;
    let c = *constant.numer() as f64 / *constant.denom() as f64;
    let p = field.p() as f64;
    let bound = c * (p - 1.0) * p.powf((field.r() as f64 - 1.0) / 2.0);
    let modulus = s.norm();
    Ok(BoundRow { p: field.p(), r: field.r(), d, e, g: g.clone(), constant, modulus, bound, pass: modulus <= bound + BOUND_SLACK })
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

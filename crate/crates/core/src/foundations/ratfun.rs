use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::field::{Field, Scalar};
use super::point::Point;
use crate::error::{invalid, Error, Result};

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, coeffs: Vec<Scalar>) -> Result<Self> {
        let coeffs = coeffs.into_iter().map(|c| field.element(c)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_reduced(field, coeffs))
    }

    fn from_reduced(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Field) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn constant(field: Field, c: Scalar) -> Result<Self> {
        Self::new(field, vec![c])
    }

    /// `c0 + c1 t`
    pub fn linear(field: Field, c0: Scalar, c1: Scalar) -> Result<Self> {
        Self::new(field, vec![c0, c1])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| self.field.add(&self.coeff(i), &o.coeff(i))).collect();
        Self::from_reduced(self.field, c)
    }

    pub fn neg(&self) -> Poly {
        Self::from_reduced(self.field, self.coeffs.iter().map(|c| self.field.neg(c)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &Scalar) -> Poly {
        Self::from_reduced(self.field, self.coeffs.iter().map(|c| self.field.mul(c, k)).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let mut c = vec![Scalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = self.field.add(&c[i + j], &self.field.mul(a, b));
            }
        }
        Self::from_reduced(self.field, c)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = self.field.inv(&d.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Scalar::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = self.field.mul(rem.last().unwrap(), &lc_inv);
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = self.field.sub(&rem[k + j], &self.field.mul(&c, dc));
            }
            quo[k] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Self::from_reduced(self.field, quo), Self::from_reduced(self.field, rem))
    }

    pub fn monic(&self) -> Poly {
        match self.field.inv(&self.leading()) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| self.field.add(&self.field.mul(&acc, x), c))
    }

    /// Multiplicity of `x` as a root.
    pub fn root_multiplicity(&self, x: &Scalar) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Poly::from_reduced(self.field, vec![self.field.neg(x), Scalar::one()]);
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = p.div_rem(&lin);
            if !r.is_zero() {
                return k;
            }
            k += 1;
            p = q;
        }
    }

    /// `p(lambda t)`
    pub fn compose_scale(&self, lambda: &Scalar) -> Poly {
        let mut pw = Scalar::one();
        let mut c = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            c.push(self.field.mul(a, &pw));
            pw = self.field.mul(&pw, lambda);
        }
        Self::from_reduced(self.field, c)
    }

    /// `p(t + c)`
    pub fn compose_shift(&self, shift: &Scalar) -> Poly {
        let lin = Poly::from_reduced(self.field, vec![*shift, Scalar::one()]);
        let mut acc = Poly::zero(self.field);
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::from_reduced(self.field, vec![*a]));
        }
        acc
    }

    /// `t^k p(1/t)` for `k >= deg p`.
    fn reversed(&self, k: usize) -> Poly {
        let mut c = vec![Scalar::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[k - i] = *a;
        }
        Self::from_reduced(self.field, c)
    }
}

/// Where to measure a pole.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Infinity,
    At(Scalar),
}

impl Location {
    pub fn of_point(p: &Point, field: Field) -> Result<Location> {
        match p.value() {
            Some(v) => Ok(Location::At(field.element(*v)?)),
            None => Err(Error::SymbolicPointUnsupported(alloc::format!("{p}"))),
        }
    }
}

/// Substitutions `t -> 1/t`, `t -> lambda t`, `t -> t + c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mobius {
    Invert,
    Scale(Scalar),
    Translate(Scalar),
}

/// Reduced quotient with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if num.field != den.field {
            return Err(Error::FieldMismatch);
        }
        if den.is_zero() {
            return invalid("zero denominator");
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_zero() { (num, den) } else { (num.div_rem(&g).0, den.div_rem(&g).0) };
        let lc = num.field.inv(&den.leading()).unwrap();
        Ok(RationalFunction { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn from_poly(p: Poly) -> Self {
        let f = p.field;
        RationalFunction { num: p, den: Poly::from_reduced(f, vec![Scalar::one()]) }
    }

    pub fn field(&self) -> Field {
        self.num.field
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.field() != o.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return invalid("inverse of zero");
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.mul(&o.inv()?)
    }

    pub fn pole_order(&self, at: &Location) -> u64 {
        match at {
            Location::Infinity => {
                let dn = self.num.degree().unwrap_or(0);
                let dd = self.den.degree().unwrap_or(0);
                dn.saturating_sub(dd) as u64
            }
            Location::At(x) => {
                // reduced, so at most one of num/den vanishes at x
                self.den.root_multiplicity(x) as u64
            }
        }
    }

    pub fn pole_order_at_point(&self, p: &Point) -> Result<u64> {
        Ok(self.pole_order(&Location::of_point(p, self.field())?))
    }

    /// Leading coefficient `c` of the polar part: `c t^k` at infinity,
    /// `c / (t - x)^k` at a finite point. `None` if there is no pole.
    pub fn leading_polar_coefficient(&self, at: &Location) -> Option<Scalar> {
        let f = self.field();
        match at {
            Location::Infinity => {
                if self.pole_order(at) == 0 {
                    return None;
                }
                Some(f.mul(&self.num.leading(), &f.inv(&self.den.leading())?))
            }
            Location::At(x) => {
                let k = self.den.root_multiplicity(x);
                if k == 0 {
                    return None;
                }
                let lin = Poly::from_reduced(f, vec![f.neg(x), Scalar::one()]);
                let mut rest = self.den.clone();
                for _ in 0..k {
                    rest = rest.div_rem(&lin).0;
                }
                Some(f.mul(&self.num.eval(x), &f.inv(&rest.eval(x))?))
            }
        }
    }

    /// True when the only pole (if any) is at `at`.
    pub fn poles_only_at(&self, at: &Location) -> bool {
        match at {
            Location::Infinity => self.den.degree() == Some(0),
            Location::At(x) => {
                let k = self.den.degree().unwrap_or(0);
                k == 0 || self.den.root_multiplicity(x) == k
            }
        }
    }

    pub fn mobius_pull(&self, m: &Mobius) -> Result<Self> {
        let f = self.field();
        match m {
            Mobius::Invert => {
                let k = self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0));
                Self::new(self.num.reversed(k), self.den.reversed(k))
            }
            Mobius::Scale(l) => {
                let l = f.element(*l)?;
                if l.is_zero() {
                    return invalid("scaling by zero");
                }
                Self::new(self.num.compose_scale(&l), self.den.compose_scale(&l))
            }
            Mobius::Translate(c) => {
                let c = f.element(*c)?;
                Self::new(self.num.compose_shift(&c), self.den.compose_shift(&c))
            }
        }
    }
}

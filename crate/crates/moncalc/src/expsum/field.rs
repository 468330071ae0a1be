//! Small finite fields F_{p^r} with table-driven multiplication.
//!
//! Elements are encoded as integers `0..q`: the coefficient vector
//! `(c_0, .., c_{r-1})` in the polynomial basis is read as base-`p` digits.

use moncalc_core::{Error, Result};

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u64,
    r: u32,
    q: u64,
    /// Monic modulus, low degree first, length `r + 1`.
    modulus: Vec<u64>,
    generator: u64,
    exp: Vec<u64>,
    log: Vec<u64>,
    trace: Vec<u64>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}
impl Eq for FiniteField {}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of `a` modulo the monic `m` over F_p (both low degree first).
fn poly_rem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - (lead * c) % p) % p;
            }
        }
        a.pop();
    }
    a
}

fn monic_of_degree(p: u64, deg: u32, index: u64) -> Vec<u64> {
    // `index` enumerates (c_{deg-1}, .., c_0) lexicographically: c_{deg-1}
    // is the most significant digit.
    let mut c = vec![0; deg as usize + 1];
    let mut k = index;
    for slot in c.iter_mut().take(deg as usize) {
        *slot = k % p;
        k /= p;
    }
    c[deg as usize] = 1;
    c
}

fn is_irreducible(p: u64, m: &[u64]) -> bool {
    let deg = (m.len() - 1) as u32;
    for d in 1..=deg / 2 {
        for k in 0..p.pow(d) {
            let f = monic_of_degree(p, d, k);
            if poly_rem(p, m, &f).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// F_{p^r} with the lexicographically smallest monic irreducible modulus.
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Validation(format!("{p} is not prime")));
        }
        if r == 0 {
            return Err(Error::Validation("extension degree must be positive".into()));
        }
        let q = p.checked_pow(r).filter(|&q| q <= 1 << 20).ok_or_else(|| Error::Validation(format!("field {p}^{r} is too large")))?;
        let modulus = (0..p.pow(r))
            .map(|k| monic_of_degree(p, r, k))
            .find(|m| is_irreducible(p, m))
            .expect("an irreducible polynomial exists in every degree");
        let mut f = FiniteField { p, r, q, modulus, generator: 0, exp: vec![], log: vec![], trace: vec![] };
        f.generator = f.find_generator();
        f.build_tables();
        Ok(f)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    pub fn generator(&self) -> u64 {
        self.generator
    }

    pub fn digits(&self, x: u64) -> Vec<u64> {
        let mut d = Vec::with_capacity(self.r as usize);
        let mut k = x;
        for _ in 0..self.r {
            d.push(k % self.p);
            k /= self.p;
        }
        d
    }

    pub fn from_digits(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p)
    }

    /// Embedding of F_p.
    pub fn from_base(&self, c: i64) -> u64 {
        c.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        let (a, b) = (self.digits(x), self.digits(y));
        let s: Vec<u64> = a.iter().zip(&b).map(|(u, v)| (u + v) % self.p).collect();
        self.from_digits(&s)
    }

    pub fn neg(&self, x: u64) -> u64 {
        let s: Vec<u64> = self.digits(x).iter().map(|u| (self.p - u) % self.p).collect();
        self.from_digits(&s)
    }

    fn mul_slow(&self, x: u64, y: u64) -> u64 {
        let (a, b) = (self.digits(x), self.digits(y));
        let mut prod = vec![0; a.len() + b.len()];
        for (i, u) in a.iter().enumerate() {
            for (j, v) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % self.p;
            }
        }
        self.from_digits(&poly_rem(self.p, &prod, &self.modulus))
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        if x == 0 || y == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((self.log[x as usize] + self.log[y as usize]) % n) as usize]
    }

    pub fn inv(&self, x: u64) -> Option<u64> {
        if x == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[x as usize]) % n) as usize])
    }

    pub fn pow(&self, x: u64, k: u64) -> u64 {
        if x == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let n = self.q - 1;
        self.exp[((self.log[x as usize] as u128 * k as u128 % n as u128) as u64) as usize]
    }

    /// Discrete logarithm to the fixed generator.
    pub fn log(&self, x: u64) -> Option<u64> {
        (x != 0).then(|| self.log[x as usize])
    }

    pub fn exp(&self, k: u64) -> u64 {
        self.exp[(k % (self.q - 1)) as usize]
    }

    /// Absolute trace to F_p.
    pub fn trace(&self, x: u64) -> u64 {
        self.trace[x as usize]
    }

    /// Nonzero elements in index order.
    pub fn units(&self) -> impl Iterator<Item = u64> {
        1..self.q
    }

    fn pow_slow(&self, x: u64, mut k: u64) -> u64 {
        let (mut acc, mut base) = (1, x);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            k >>= 1;
        }
        acc
    }

    fn find_generator(&self) -> u64 {
        let n = self.q - 1;
        let ls = prime_factors(n);
        (1..self.q)
            .find(|&g| ls.iter().all(|l| self.pow_slow(g, n / l) != 1))
            .expect("the unit group of a finite field is cyclic")
    }

    fn build_tables(&mut self) {
        let n = (self.q - 1) as usize;
        self.exp = vec![0; n];
        self.log = vec![0; self.q as usize];
        let mut x = 1;
        for k in 0..n {
            self.exp[k] = x;
            self.log[x as usize] = k as u64;
            x = self.mul_slow(x, self.generator);
        }
        debug_assert_eq!(x, 1);
        let mut tr = vec![0; self.q as usize];
        for x in 1..self.q {
            let mut acc = 0;
            let mut y = x;
            for _ in 0..self.r {
                acc = self.add(acc, y);
                y = self.pow(y, self.p);
            }
            debug_assert!(acc < self.p);
            tr[x as usize] = acc;
        }
        self.trace = tr;
    }

    /// Evaluates a polynomial with F_p coefficients (low degree first).
    pub fn eval_base_poly(&self, coeffs: &[i64], x: u64) -> u64 {
        coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), self.from_base(c)))
    }
}

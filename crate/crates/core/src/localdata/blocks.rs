use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::foundations::TameChar;

/// Multiset of unipotent Jordan blocks twisted by Kummer characters,
/// keyed by `(character, block size)` with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct TameBlocks(BTreeMap<(TameChar, u64), u64>);

impl TameBlocks {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(chr: TameChar, size: u64, count: u64) -> Self {
        let mut b = Self::new();
        b.add(chr, size, count);
        b
    }

    /// `n` copies of the trivial character with block size 1.
    pub fn trivial(n: u64) -> Self {
        Self::single(TameChar::trivial(), 1, n)
    }

    pub fn add(&mut self, chr: TameChar, size: u64, count: u64) {
        if size == 0 || count == 0 {
            return;
        }
        *self.0.entry((chr, size)).or_insert(0) += count;
    }

    pub fn extend(&mut self, o: &TameBlocks) {
        for (c, s, n) in o.iter() {
            self.add(c.clone(), s, n);
        }
    }

    /// `(character, size, multiplicity)`
    pub fn iter(&self) -> impl Iterator<Item = (&TameChar, u64, u64)> {
        self.0.iter().map(|((c, s), n)| (c, *s, *n))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> u64 {
        self.iter().map(|(_, s, n)| s * n).sum()
    }

    pub fn scaled(&self, k: u64) -> Self {
        let mut b = Self::new();
        for (c, s, n) in self.iter() {
            b.add(c.clone(), s, n * k);
        }
        b
    }

    pub fn is_trivial_semisimple(&self) -> bool {
        self.iter().all(|(c, s, _)| c.is_trivial() && s == 1)
    }

    /// Block sizes with multiplicity, ascending, ignoring characters.
    pub fn sizes(&self) -> Vec<u64> {
        let mut v = Vec::new();
        for (_, s, n) in self.iter() {
            v.extend(core::iter::repeat_n(s, n as usize));
        }
        v.sort_unstable();
        v
    }

    /// Tensor product: characters multiply and `J(m) (x) J(n)` splits as
    /// `J(m+n-1) + J(m+n-3) + ... + J(|m-n|+1)`.
    pub fn tensor(&self, o: &TameBlocks) -> TameBlocks {
        let mut out = TameBlocks::new();
        for (c1, m, k1) in self.iter() {
            for (c2, n, k2) in o.iter() {
                let chr = c1.mul(c2);
                for k in 0..m.min(n) {
                    out.add(chr.clone(), m + n - 1 - 2 * k, k1 * k2);
                }
            }
        }
        out
    }
}

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::One;

use super::blocks::TameBlocks;
use crate::error::{invalid, Result};
use crate::foundations::{q, q_to_u64, Point, Slope, Q};

/// Twist point of a slope-1 piece: the `t` in `F (x) L_psi(t x)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Twist {
    Known(Point),
    Unknown,
}

impl Twist {
    pub fn is_unknown(&self) -> bool {
        matches!(self, Twist::Unknown)
    }

    pub fn point(&self) -> Option<&Point> {
        match self {
            Twist::Known(p) => Some(p),
            Twist::Unknown => None,
        }
    }

    pub fn mul(&self, o: &Twist) -> Twist {
        match (self, o) {
            (Twist::Known(a), Twist::Known(b)) => Twist::Known(a.mul(b)),
            _ => Twist::Unknown,
        }
    }

    pub fn inv(&self) -> Twist {
        match self {
            Twist::Known(a) => Twist::Known(a.inv()),
            Twist::Unknown => Twist::Unknown,
        }
    }

    pub(crate) fn map(&self, f: &dyn Fn(&Point) -> Point) -> Twist {
        match self {
            Twist::Known(p) => Twist::Known(f(p)),
            Twist::Unknown => Twist::Unknown,
        }
    }
}

/// The slope < 1 representation `F` inside a slope-1 piece `F (x) L_psi(t x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inner {
    Known(Box<BreakProfile>),
    Unknown(u64),
}

impl Inner {
    pub fn known(p: BreakProfile) -> Inner {
        Inner::Known(Box::new(p))
    }

    pub fn trivial(dim: u64) -> Inner {
        Inner::known(BreakProfile::tame(TameBlocks::trivial(dim)))
    }

    pub fn dim(&self) -> u64 {
        match self {
            Inner::Known(p) => p.dim(),
            Inner::Unknown(d) => *d,
        }
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Inner::Unknown(_))
    }

    pub fn profile(&self) -> Option<&BreakProfile> {
        match self {
            Inner::Known(p) => Some(p),
            Inner::Unknown(_) => None,
        }
    }

    pub fn is_trivial_semisimple(&self) -> bool {
        match self {
            Inner::Known(p) => p.is_trivial_semisimple(),
            Inner::Unknown(_) => false,
        }
    }

    pub fn plus(&self, o: &Inner) -> Inner {
        match (self, o) {
            (Inner::Known(a), Inner::Known(b)) => Inner::known(a.direct_sum(b)),
            _ => Inner::Unknown(self.dim() + o.dim()),
        }
    }

    pub fn scaled(&self, k: u64) -> Inner {
        match self {
            Inner::Known(p) => Inner::known(p.scaled(k)),
            Inner::Unknown(d) => Inner::Unknown(d * k),
        }
    }

    pub(crate) fn map_twists(&self, f: &dyn Fn(&Point) -> Point) -> Inner {
        match self {
            Inner::Known(p) => Inner::known(p.map_twists(f)),
            Inner::Unknown(d) => Inner::Unknown(*d),
        }
    }

    fn validate(&self) -> Result<()> {
        if let Inner::Known(p) = self {
            if p.wild().iter().any(|w| w.slope() >= Slope::one()) {
                return invalid("inner representation of a slope-1 piece must have slopes < 1");
            }
            p.validate()?;
        }
        Ok(())
    }
}

/// Record of where a piece came from under the `(0, infinity)` local Fourier
/// transform. `Latent` sits on slope-1/2 pieces and carries the slope-1 data
/// of the preimage; `Nested` sits on slopes below 1/2 and carries the
/// preimage's own decoration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Deco {
    Latent { twist: Twist, inner: Inner },
    Nested(Box<Deco>),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum DecoKey {
    Latent(Twist),
    Nested(Box<DecoKey>),
}

impl Deco {
    fn key(&self) -> DecoKey {
        match self {
            Deco::Latent { twist, .. } => DecoKey::Latent(twist.clone()),
            Deco::Nested(d) => DecoKey::Nested(Box::new(d.key())),
        }
    }

    fn merge(self, o: Deco) -> Deco {
        match (self, o) {
            (Deco::Latent { twist, inner: a }, Deco::Latent { inner: b, .. }) => {
                Deco::Latent { twist, inner: a.plus(&b) }
            }
            (Deco::Nested(a), Deco::Nested(b)) => Deco::Nested(Box::new(a.merge(*b))),
            (a, _) => a,
        }
    }

    fn scaled(&self, k: u64) -> Deco {
        match self {
            Deco::Latent { twist, inner } => Deco::Latent { twist: twist.clone(), inner: inner.scaled(k) },
            Deco::Nested(d) => Deco::Nested(Box::new(d.scaled(k))),
        }
    }

    fn map_twists(&self, f: &dyn Fn(&Point) -> Point) -> Deco {
        match self {
            Deco::Latent { twist, inner } => {
                Deco::Latent { twist: twist.map(f), inner: inner.map_twists(f) }
            }
            Deco::Nested(d) => Deco::Nested(Box::new(d.map_twists(f))),
        }
    }
}

/// Slope and dimension of the preimage of a slope `c < 1` piece under the
/// `(0, infinity)` transform.
pub(crate) fn preimage(slope: Slope, dim: u64) -> Result<(Slope, u64)> {
    let c = slope.value();
    let s = Slope::from_q(c / (Q::one() - c))?;
    Ok((s, q_to_u64((Q::one() - c) * q(dim))?))
}

/// Drops decorations that carry no information or do not fit the slope.
pub(crate) fn canon_deco(slope: Slope, dim: u64, deco: Option<Deco>) -> Option<Deco> {
    match deco? {
        Deco::Latent { twist, inner } => {
            if slope != Slope::half() || (twist.is_unknown() && inner.is_unknown()) {
                return None;
            }
            Some(Deco::Latent { twist, inner })
        }
        Deco::Nested(d) => {
            if slope >= Slope::half() || slope.is_tame() {
                return None;
            }
            let (s, n) = preimage(slope, dim).ok()?;
            canon_deco(s, n, Some(*d)).map(|d| Deco::Nested(Box::new(d)))
        }
    }
}

fn check_deco(slope: Slope, dim: u64, deco: &Deco) -> Result<()> {
    match deco {
        Deco::Latent { inner, .. } => {
            if slope != Slope::half() {
                return invalid("a latent decoration needs slope 1/2");
            }
            if inner.dim() * 2 != dim {
                return invalid("latent inner dimension must be half the piece dimension");
            }
            inner.validate()
        }
        Deco::Nested(d) => {
            if slope >= Slope::half() {
                return invalid("a nested decoration needs slope below 1/2");
            }
            let (s, n) = preimage(slope, dim)?;
            check_deco(s, n, d)
        }
    }
}

/// A break-decomposition piece of positive slope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    slope: Slope,
    dim: u64,
    deco: Option<Deco>,
}

impl Piece {
    /// Checks positivity and the Hasse-Arf integrality `slope * dim`.
    pub fn new(slope: Slope, dim: u64) -> Result<Self> {
        Self::decorated(slope, dim, None)
    }

    pub fn decorated(slope: Slope, dim: u64, deco: Option<Deco>) -> Result<Self> {
        if slope.is_tame() {
            return invalid("wild pieces need positive slope");
        }
        if dim == 0 {
            return invalid("pieces need positive dimension");
        }
        if !(slope.value() * q(dim)).is_integer() {
            return invalid(alloc::format!("Hasse-Arf: slope {slope} times dimension {dim} is not an integer"));
        }
        if let Some(d) = &deco {
            check_deco(slope, dim, d)?;
        }
        Ok(Self::raw(slope, dim, deco))
    }

    pub(crate) fn raw(slope: Slope, dim: u64, deco: Option<Deco>) -> Self {
        let deco = canon_deco(slope, dim, deco);
        Piece { slope, dim, deco }
    }

    pub fn slope(&self) -> Slope {
        self.slope
    }

    pub fn dim(&self) -> u64 {
        self.dim
    }

    pub fn deco(&self) -> Option<&Deco> {
        self.deco.as_ref()
    }

    pub fn swan(&self) -> u64 {
        q_to_u64(self.slope.value() * q(self.dim)).expect("Hasse-Arf")
    }

    pub fn undecorated(&self) -> Piece {
        Piece { slope: self.slope, dim: self.dim, deco: None }
    }

    pub(crate) fn key(&self) -> (Slope, Option<DecoKey>) {
        (self.slope, self.deco.as_ref().map(|d| d.key()))
    }

    pub(crate) fn scaled(&self, k: u64) -> Piece {
        Piece { slope: self.slope, dim: self.dim * k, deco: self.deco.as_ref().map(|d| d.scaled(k)) }
    }

    pub(crate) fn map_twists(&self, f: &dyn Fn(&Point) -> Point) -> Piece {
        Piece { slope: self.slope, dim: self.dim, deco: self.deco.as_ref().map(|d| d.map_twists(f)) }
    }
}

/// Sorts pieces and merges those with the same slope and decoration shape.
pub(crate) fn merge_pieces(pieces: impl IntoIterator<Item = Piece>) -> Vec<Piece> {
    let mut map: BTreeMap<(Slope, Option<DecoKey>), Piece> = BTreeMap::new();
    for p in pieces {
        if p.dim == 0 {
            continue;
        }
        match map.remove(&p.key()) {
            None => {
                map.insert(p.key(), p);
            }
            Some(old) => {
                let deco = match (old.deco, p.deco) {
                    (Some(a), Some(b)) => Some(a.merge(b)),
                    _ => None,
                };
                let merged = Piece { slope: p.slope, dim: old.dim + p.dim, deco };
                map.insert(merged.key(), merged);
            }
        }
    }
    map.into_values().collect()
}

/// Tame Jordan blocks plus wild pieces; used for inner representations and
/// as the abstract shape of local data.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BreakProfile {
    tame: TameBlocks,
    wild: Vec<Piece>,
}

impl BreakProfile {
    pub fn new(tame: TameBlocks, wild: impl IntoIterator<Item = Piece>) -> Self {
        BreakProfile { tame, wild: merge_pieces(wild) }
    }

    pub fn tame(tame: TameBlocks) -> Self {
        BreakProfile { tame, wild: Vec::new() }
    }

    pub fn tame_blocks(&self) -> &TameBlocks {
        &self.tame
    }

    pub fn wild(&self) -> &[Piece] {
        &self.wild
    }

    pub fn dim(&self) -> u64 {
        self.tame.dim() + self.wild.iter().map(|p| p.dim).sum::<u64>()
    }

    pub fn swan(&self) -> u64 {
        self.wild.iter().map(|p| p.swan()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.tame.is_empty() && self.wild.is_empty()
    }

    pub fn is_trivial_semisimple(&self) -> bool {
        self.wild.is_empty() && self.tame.is_trivial_semisimple()
    }

    pub fn direct_sum(&self, o: &BreakProfile) -> BreakProfile {
        let mut tame = self.tame.clone();
        tame.extend(&o.tame);
        BreakProfile::new(tame, self.wild.iter().chain(o.wild.iter()).cloned())
    }

    pub fn scaled(&self, k: u64) -> BreakProfile {
        BreakProfile::new(self.tame.scaled(k), self.wild.iter().map(|p| p.scaled(k)))
    }

    pub(crate) fn map_twists(&self, f: &dyn Fn(&Point) -> Point) -> BreakProfile {
        BreakProfile::new(self.tame.clone(), self.wild.iter().map(|p| p.map_twists(f)))
    }

    pub(crate) fn validate(&self) -> Result<()> {
        for p in &self.wild {
            Piece::decorated(p.slope, p.dim, p.deco.clone())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn s(n: i64, d: i64) -> Slope {
        Slope::new(n, d).unwrap()
    }

    #[test]
    fn hasse_arf_is_enforced() {
        assert!(Piece::new(s(1, 2), 3).is_err());
        assert!(Piece::new(s(1, 2), 4).is_ok());
        assert!(Piece::new(Slope::zero(), 1).is_err());
    }

    #[test]
    fn uninformative_decorations_vanish() {
        let d = Deco::Latent { twist: Twist::Unknown, inner: Inner::Unknown(1) };
        assert_eq!(Piece::raw(s(1, 2), 2, Some(d)).deco(), None);
        let l = Deco::Latent { twist: Twist::Known(Point::identity()), inner: Inner::Unknown(1) };
        assert!(Piece::raw(s(1, 3), 3, Some(l.clone())).deco().is_none());
        let n = Deco::Nested(Box::new(l));
        assert!(Piece::raw(s(1, 3), 3, Some(n)).deco().is_some());
    }

    #[test]
    fn merging_sums_inner_data() {
        let t = Twist::Known(Point::generator("a").unwrap());
        let a = Piece::raw(s(1, 2), 2, Some(Deco::Latent { twist: t.clone(), inner: Inner::trivial(1) }));
        let b = Piece::raw(s(1, 2), 4, Some(Deco::Latent { twist: t.clone(), inner: Inner::trivial(2) }));
        let c = Piece::raw(s(1, 2), 2, None);
        let merged = merge_pieces(vec![a, c, b]);
        assert_eq!(merged.len(), 2);
        let dec = merged.iter().find(|p| p.deco().is_some()).unwrap();
        assert_eq!(dec.dim(), 6);
        assert_eq!(dec.deco(), Some(&Deco::Latent { twist: t, inner: Inner::trivial(3) }));
    }
}

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::blocks::TameBlocks;
use super::piece::{merge_pieces, Inner, Piece, Twist};
use super::Place;
use crate::error::{invalid, Error, Result};
use crate::foundations::{Field, Location, Mobius, Point, RationalFunction, Slope, TameChar};

/// Concrete Artin-Schreier-Kummer datum `L_chi (x) L_psi(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AskPiece {
    pub chr: TameChar,
    pub f: RationalFunction,
}

impl AskPiece {
    pub(crate) fn pull(&self, m: &Mobius) -> Result<AskPiece> {
        Ok(AskPiece { chr: self.chr.clone(), f: self.f.mobius_pull(m)? })
    }
}

/// A slope-1 piece `inner (x) L_psi(twist * x)`; its dimension is the inner dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeOnePiece {
    pub twist: Twist,
    pub inner: Inner,
}

impl SlopeOnePiece {
    pub fn new(twist: Twist, inner: Inner) -> Self {
        SlopeOnePiece { twist, inner }
    }

    pub fn dim(&self) -> u64 {
        self.inner.dim()
    }

    pub fn is_known(&self) -> bool {
        !self.twist.is_unknown() && !self.inner.is_unknown()
    }
}

/// Indecomposable bookkeeping unit of a local representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    /// `(character, block size, multiplicity)`
    Tame(TameChar, u64, u64),
    Wild(Piece),
    One(SlopeOnePiece),
}

impl Atom {
    pub fn slope(&self) -> Slope {
        match self {
            Atom::Tame(..) => Slope::zero(),
            Atom::Wild(p) => p.slope(),
            Atom::One(_) => Slope::one(),
        }
    }

    pub fn dim(&self) -> u64 {
        match self {
            Atom::Tame(_, s, n) => s * n,
            Atom::Wild(p) => p.dim(),
            Atom::One(o) => o.dim(),
        }
    }
}

pub(crate) fn merge_slope_one(pieces: impl IntoIterator<Item = SlopeOnePiece>) -> Vec<SlopeOnePiece> {
    let mut map: BTreeMap<Twist, Inner> = BTreeMap::new();
    for p in pieces {
        if p.dim() == 0 {
            continue;
        }
        let inner = match map.remove(&p.twist) {
            Some(old) => old.plus(&p.inner),
            None => p.inner,
        };
        map.insert(p.twist, inner);
    }
    map.into_iter().map(|(twist, inner)| SlopeOnePiece { twist, inner }).collect()
}

/// Local representation at 0 or infinity, split by slope stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryRep {
    place: Place,
    tame: TameBlocks,
    wild: Vec<Piece>,
    eq1: Vec<SlopeOnePiece>,
    concrete: Option<Vec<AskPiece>>,
}

impl BoundaryRep {
    pub fn empty(place: Place) -> Self {
        BoundaryRep { place, tame: TameBlocks::new(), wild: Vec::new(), eq1: Vec::new(), concrete: None }
    }

    /// Undecorated slope-1 pieces in `wild` become slope-1 pieces with unknown data.
    pub fn new(place: Place, tame: TameBlocks, wild: Vec<Piece>, eq1: Vec<SlopeOnePiece>) -> Self {
        let mut w = Vec::new();
        let mut ones = eq1;
        for p in wild {
            if p.slope().is_one() {
                ones.push(SlopeOnePiece::new(Twist::Unknown, Inner::Unknown(p.dim())));
            } else {
                w.push(p);
            }
        }
        BoundaryRep { place, tame, wild: merge_pieces(w), eq1: merge_slope_one(ones), concrete: None }
    }

    pub fn from_atoms(place: Place, atoms: impl IntoIterator<Item = Atom>) -> Self {
        let mut tame = TameBlocks::new();
        let mut wild = Vec::new();
        let mut eq1 = Vec::new();
        for a in atoms {
            match a {
                Atom::Tame(c, s, n) => tame.add(c, s, n),
                Atom::Wild(p) => wild.push(p),
                Atom::One(o) => eq1.push(o),
            }
        }
        Self::new(place, tame, wild, eq1)
    }

    pub fn atoms(&self) -> Vec<Atom> {
        let mut v: Vec<Atom> = self.tame.iter().map(|(c, s, n)| Atom::Tame(c.clone(), s, n)).collect();
        v.extend(self.wild.iter().cloned().map(Atom::Wild));
        v.extend(self.eq1.iter().cloned().map(Atom::One));
        v
    }

    pub fn place(&self) -> Place {
        self.place
    }

    pub fn tame(&self) -> &TameBlocks {
        &self.tame
    }

    /// All pieces of slope other than 0 and 1.
    pub fn wild(&self) -> &[Piece] {
        &self.wild
    }

    pub fn lt1(&self) -> impl Iterator<Item = &Piece> {
        self.wild.iter().filter(|p| p.slope() < Slope::one())
    }

    pub fn gt1(&self) -> impl Iterator<Item = &Piece> {
        self.wild.iter().filter(|p| p.slope() > Slope::one())
    }

    pub fn eq1(&self) -> &[SlopeOnePiece] {
        &self.eq1
    }

    pub fn concrete(&self) -> Option<&[AskPiece]> {
        self.concrete.as_deref()
    }

    pub fn dim(&self) -> u64 {
        self.tame.dim() + self.wild.iter().map(|p| p.dim()).sum::<u64>() + self.eq1.iter().map(|p| p.dim()).sum::<u64>()
    }

    pub fn swan(&self) -> u64 {
        self.wild.iter().map(|p| p.swan()).sum::<u64>() + self.eq1.iter().map(|p| p.dim()).sum::<u64>()
    }

    pub fn is_empty(&self) -> bool {
        self.tame.is_empty() && self.wild.is_empty() && self.eq1.is_empty()
    }

    pub fn is_totally_wild(&self) -> bool {
        self.tame.is_empty()
    }

    /// Positive slopes present.
    pub fn slopes(&self) -> BTreeSet<Slope> {
        let mut s: BTreeSet<Slope> = self.wild.iter().map(|p| p.slope()).collect();
        if !self.eq1.is_empty() {
            s.insert(Slope::one());
        }
        s
    }

    pub fn has_unknown_slope_one(&self) -> bool {
        self.eq1.iter().any(|p| !p.is_known())
    }

    /// Abstract direct sum; concrete data is kept only when both sides have it.
    pub fn direct_sum(&self, o: &BoundaryRep) -> Result<BoundaryRep> {
        o.place.expect(self.place)?;
        let mut r = Self::from_atoms(self.place, self.atoms().into_iter().chain(o.atoms()));
        if let (Some(a), Some(b)) = (&self.concrete, &o.concrete) {
            r.concrete = Some(a.iter().chain(b.iter()).cloned().collect());
        }
        Ok(r)
    }

    pub(crate) fn sum_all(place: Place, reps: impl IntoIterator<Item = BoundaryRep>) -> Result<BoundaryRep> {
        let mut atoms = Vec::new();
        for r in reps {
            r.place.expect(place)?;
            atoms.extend(r.atoms());
        }
        Ok(Self::from_atoms(place, atoms))
    }

    pub fn without_concrete(&self) -> BoundaryRep {
        BoundaryRep { concrete: None, ..self.clone() }
    }

    pub fn scaled(&self, k: u64) -> BoundaryRep {
        BoundaryRep {
            place: self.place,
            tame: self.tame.scaled(k),
            wild: self.wild.iter().map(|p| p.scaled(k)).collect(),
            eq1: self
                .eq1
                .iter()
                .map(|p| SlopeOnePiece::new(p.twist.clone(), p.inner.scaled(k)))
                .collect(),
            concrete: None,
        }
    }

    /// Same data viewed at the other boundary point through `x -> 1/x`.
    pub fn iota(&self) -> Result<BoundaryRep> {
        let concrete = match &self.concrete {
            Some(v) => Some(v.iter().map(|a| a.pull(&Mobius::Invert)).collect::<Result<Vec<_>>>()?),
            None => None,
        };
        Ok(BoundaryRep { place: self.place.other(), concrete, ..self.clone() })
    }

    pub(crate) fn map_twists(&self, f: &dyn Fn(&Point) -> Point) -> BoundaryRep {
        BoundaryRep {
            place: self.place,
            tame: self.tame.clone(),
            wild: merge_pieces(self.wild.iter().map(|p| p.map_twists(f))),
            eq1: merge_slope_one(
                self.eq1.iter().map(|p| SlopeOnePiece::new(p.twist.map(f), p.inner.map_twists(f))),
            ),
            concrete: self.concrete.clone(),
        }
    }

    pub(crate) fn map_concrete(&self, m: &Mobius) -> Result<BoundaryRep> {
        let mut r = self.clone();
        if let Some(v) = &self.concrete {
            r.concrete = Some(v.iter().map(|a| a.pull(m)).collect::<Result<Vec<_>>>()?);
        }
        Ok(r)
    }

    /// Attaches concrete data after checking it induces the abstract strata.
    pub fn with_concrete(mut self, field: Field, ask: Vec<AskPiece>) -> Result<BoundaryRep> {
        let loc = match self.place {
            Place::Infinity => Location::Infinity,
            Place::Zero => Location::At(field.from_int(0)),
        };
        let mut induced: Vec<Piece> = Vec::new();
        let mut twists: Vec<crate::foundations::Scalar> = Vec::new();
        for a in &ask {
            if a.f.field() != field {
                return Err(Error::FieldMismatch);
            }
            if !a.f.poles_only_at(&loc) {
                return invalid(alloc::format!("concrete datum at {} has poles elsewhere", self.place.name()));
            }
            let k = a.f.pole_order(&loc);
            if k == 0 {
                return invalid("concrete datum without a pole is tame; list it as a tame block");
            }
            let p = field.characteristic();
            if p != 0 && k % p == 0 {
                return Err(Error::PoleOrderDivisibleByP { order: k, p });
            }
            if k == 1 {
                twists.push(a.f.leading_polar_coefficient(&loc).expect("pole"));
            }
            induced.push(Piece::new(Slope::integer(k as u32), 1)?);
        }
        let induced = Self::new(self.place, TameBlocks::new(), induced, Vec::new());
        let ok = induced.wild.iter().map(|p| (p.slope(), p.dim())).eq(self.wild.iter().map(|p| (p.slope(), p.dim())))
            && induced.eq1.iter().map(|p| p.dim()).sum::<u64>() == self.eq1.iter().map(|p| p.dim()).sum::<u64>();
        if !ok || self.wild.iter().any(|p| p.deco().is_some()) {
            return invalid(alloc::format!(
                "concrete data at {} does not induce the stated break decomposition",
                self.place.name()
            ));
        }
        for p in &self.eq1 {
            if let Some(v) = p.twist.point().and_then(|t| t.value()) {
                let v = field.element(*v)?;
                if !twists.contains(&v) {
                    return invalid(alloc::format!("slope-1 twist value {v} not found in concrete data"));
                }
            }
        }
        self.concrete = Some(ask);
        Ok(self)
    }
}

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::blocks::TameBlocks;
use super::boundary::AskPiece;
use super::piece::{merge_pieces, BreakProfile, Piece};
use crate::error::{invalid, Error, Result};
use crate::foundations::{Field, Location, Point, Slope};

/// A chunk of local data at a finite point known only through its total
/// dimension and Swan conductor. When the slopes are provably a single value
/// it is recorded in `single_slope`; `inferred` marks that value as a
/// consequence of the generic (non-cancelling) case rather than a certainty.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AggregatePiece {
    pub dim: u64,
    pub swan: u64,
    pub single_slope: Option<Slope>,
    pub inferred: bool,
}

pub(crate) fn merge_aggregates(v: impl IntoIterator<Item = AggregatePiece>) -> Vec<AggregatePiece> {
    let mut map: BTreeMap<(Option<Slope>, bool), (u64, u64)> = BTreeMap::new();
    for a in v {
        if a.dim == 0 {
            continue;
        }
        let e = map.entry((a.single_slope, a.inferred)).or_insert((0, 0));
        e.0 += a.dim;
        e.1 += a.swan;
    }
    map.into_iter()
        .map(|((single_slope, inferred), (dim, swan))| AggregatePiece { dim, swan, single_slope, inferred })
        .collect()
}

/// Local monodromy at a point of the torus: tame blocks, wild pieces and
/// aggregate pieces. Decorations are not tracked here.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiniteRep {
    tame: TameBlocks,
    wild: Vec<Piece>,
    aggregates: Vec<AggregatePiece>,
    concrete: Option<Vec<AskPiece>>,
}

impl FiniteRep {
    pub fn new(tame: TameBlocks, wild: Vec<Piece>, aggregates: Vec<AggregatePiece>) -> Self {
        FiniteRep {
            tame,
            wild: merge_pieces(wild.into_iter().map(|p| p.undecorated())),
            aggregates: merge_aggregates(aggregates),
            concrete: None,
        }
    }

    pub fn from_profile(p: &BreakProfile) -> Self {
        Self::new(p.tame_blocks().clone(), p.wild().to_vec(), Vec::new())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn tame(&self) -> &TameBlocks {
        &self.tame
    }

    pub fn wild(&self) -> &[Piece] {
        &self.wild
    }

    pub fn aggregates(&self) -> &[AggregatePiece] {
        &self.aggregates
    }

    pub fn concrete(&self) -> Option<&[AskPiece]> {
        self.concrete.as_deref()
    }

    pub fn has_aggregates(&self) -> bool {
        !self.aggregates.is_empty()
    }

    pub fn dim(&self) -> u64 {
        self.tame.dim()
            + self.wild.iter().map(|p| p.dim()).sum::<u64>()
            + self.aggregates.iter().map(|a| a.dim).sum::<u64>()
    }

    pub fn swan(&self) -> u64 {
        self.wild.iter().map(|p| p.swan()).sum::<u64>() + self.aggregates.iter().map(|a| a.swan).sum::<u64>()
    }

    pub fn is_empty(&self) -> bool {
        self.tame.is_empty() && self.wild.is_empty() && self.aggregates.is_empty()
    }

    pub fn slopes(&self) -> BTreeSet<Slope> {
        self.wild.iter().map(|p| p.slope()).collect()
    }

    /// The wild part as a profile, if there are no aggregates.
    pub fn profile(&self) -> Option<BreakProfile> {
        if self.has_aggregates() {
            return None;
        }
        Some(BreakProfile::new(self.tame.clone(), self.wild.iter().cloned()))
    }

    pub fn direct_sum(&self, o: &FiniteRep) -> FiniteRep {
        let mut tame = self.tame.clone();
        tame.extend(&o.tame);
        FiniteRep::new(
            tame,
            self.wild.iter().chain(o.wild.iter()).cloned().collect(),
            self.aggregates.iter().chain(o.aggregates.iter()).cloned().collect(),
        )
    }

    pub fn scaled(&self, k: u64) -> FiniteRep {
        FiniteRep::new(
            self.tame.scaled(k),
            self.wild.iter().map(|p| p.scaled(k)).collect(),
            self.aggregates
                .iter()
                .map(|a| AggregatePiece { dim: a.dim * k, swan: a.swan * k, ..a.clone() })
                .collect(),
        )
    }

    pub fn without_concrete(&self) -> FiniteRep {
        FiniteRep { concrete: None, ..self.clone() }
    }

    pub(crate) fn set_concrete(&mut self, c: Option<Vec<AskPiece>>) {
        self.concrete = c;
    }

    /// Attaches concrete data located at `at` after checking it induces the
    /// wild part. Tame blocks are not constrained.
    pub fn with_concrete(mut self, field: Field, at: &Point, ask: Vec<AskPiece>) -> Result<FiniteRep> {
        if self.has_aggregates() {
            return invalid("concrete data cannot accompany aggregate pieces");
        }
        let loc = Location::of_point(at, field)?;
        let mut induced = Vec::new();
        for a in &ask {
            if a.f.field() != field {
                return Err(Error::FieldMismatch);
            }
            if !a.f.poles_only_at(&loc) {
                return invalid(alloc::format!("concrete datum at {at} has poles elsewhere"));
            }
            let k = a.f.pole_order(&loc);
            if k == 0 {
                return invalid("concrete datum without a pole is tame; list it as a tame block");
            }
            let p = field.characteristic();
            if p != 0 && k % p == 0 {
                return Err(Error::PoleOrderDivisibleByP { order: k, p });
            }
            induced.push(Piece::new(Slope::integer(k as u32), 1)?);
        }
        if merge_pieces(induced) != self.wild {
            return invalid(alloc::format!("concrete data at {at} does not induce the stated wild part"));
        }
        self.concrete = Some(ask);
        Ok(self)
    }
}

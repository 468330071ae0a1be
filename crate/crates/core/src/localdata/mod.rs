//! Break decompositions at the boundary points, local data at finite points
//! and whole-profile bookkeeping (Euler characteristic, inversion,
//! translation).

mod blocks;
mod boundary;
mod finite;
mod global;
mod piece;

pub use blocks::TameBlocks;
pub use boundary::{AskPiece, Atom, BoundaryRep, SlopeOnePiece};
pub use finite::{AggregatePiece, FiniteRep};
pub use global::{GlobalProfile, UnresolvedMass};
pub use piece::{BreakProfile, Deco, Inner, Piece, Twist};

/// One of the two boundary points of the torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Zero,
    Infinity,
}

impl Place {
    pub fn name(self) -> &'static str {
        match self {
            Place::Zero => "0",
            Place::Infinity => "infinity",
        }
    }

    pub fn other(self) -> Place {
        match self {
            Place::Zero => Place::Infinity,
            Place::Infinity => Place::Zero,
        }
    }

    pub(crate) fn expect(self, want: Place) -> crate::Result<()> {
        if self != want {
            return Err(crate::Error::PlaceMismatch { expected: want.name(), found: self.name() });
        }
        Ok(())
    }
}

//! Local Fourier transforms as maps on break data.
//!
//! Tame blocks pass through the `(0, infinity)` and `(infinity, 0)`
//! transforms unchanged, characters included; this tracks the usual
//! Kummer-to-Kummer behaviour at the level of block shapes only.

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_traits::One;

use crate::error::{Error, Result};
use crate::foundations::{q, q_to_u64, Point, Slope, Q};
use crate::localdata::{
    Atom, BoundaryRep, BreakProfile, Deco, FiniteRep, Inner, Piece, Place, SlopeOnePiece, Twist,
};

/// `(0, infinity)` on one atom: slope `a` goes to `a/(a+1)` and the source is
/// remembered as a decoration.
pub(crate) fn up(a: &Atom) -> Atom {
    match a {
        Atom::Tame(..) => a.clone(),
        Atom::Wild(p) => {
            let s = p.slope().value();
            let slope = Slope::from_q(s / (s + Q::one())).expect("positive");
            let dim = q_to_u64((s + Q::one()) * q(p.dim())).expect("Hasse-Arf");
            let deco = p.deco().map(|d| Deco::Nested(Box::new(d.clone())));
            Atom::Wild(Piece::raw(slope, dim, deco))
        }
        Atom::One(o) => Atom::Wild(Piece::raw(
            Slope::half(),
            2 * o.dim(),
            Some(Deco::Latent { twist: o.twist.clone(), inner: o.inner.clone() }),
        )),
    }
}

/// `(infinity, 0)` on one atom: slope `c < 1` goes to `c/(1-c)`, slopes `>= 1`
/// die. A slope-1/2 piece comes back as a slope-1 piece carrying whatever its
/// decoration remembers.
pub(crate) fn down(a: &Atom) -> Option<Atom> {
    match a {
        Atom::Tame(..) => Some(a.clone()),
        Atom::One(_) => None,
        Atom::Wild(p) => {
            let c = p.slope().value();
            if c >= Q::one() {
                return None;
            }
            let slope = Slope::from_q(c / (Q::one() - c)).expect("positive");
            let dim = q_to_u64((Q::one() - c) * q(p.dim())).expect("Hasse-Arf");
            match p.deco() {
                Some(Deco::Latent { twist, inner }) => {
                    Some(Atom::One(SlopeOnePiece::new(twist.clone(), inner.clone())))
                }
                Some(Deco::Nested(d)) => Some(Atom::Wild(Piece::raw(slope, dim, Some((**d).clone())))),
                None => Some(Atom::Wild(Piece::raw(slope, dim, None))),
            }
        }
    }
}

/// `(infinity, infinity)` on one atom: slope `a > 1` goes to `a/(a-1)`.
pub(crate) fn hyper(a: &Atom) -> Option<Atom> {
    match a {
        Atom::Wild(p) if p.slope() > Slope::one() => {
            let s = p.slope().value();
            let slope = Slope::from_q(s / (s - Q::one())).expect("positive");
            let dim = q_to_u64((s - Q::one()) * q(p.dim())).expect("Hasse-Arf");
            Some(Atom::Wild(Piece::raw(slope, dim, None)))
        }
        _ => None,
    }
}

fn map_rep(f: &BoundaryRep, from: Place, to: Place, m: impl Fn(&Atom) -> Option<Atom>) -> Result<BoundaryRep> {
    f.place().expect(from)?;
    Ok(BoundaryRep::from_atoms(to, f.atoms().iter().filter_map(m)))
}

pub(crate) fn atoms_of_finite(f: &FiniteRep) -> Vec<Atom> {
    let mut v: Vec<Atom> = f.tame().iter().map(|(c, s, n)| Atom::Tame(c.clone(), s, n)).collect();
    v.extend(f.wild().iter().cloned().map(Atom::Wild));
    v
}

/// Reads atoms at a finite point: slope-1 pieces lose their twist, decorations are dropped.
pub(crate) fn finite_from_atoms(atoms: impl IntoIterator<Item = Atom>) -> FiniteRep {
    let mut tame = crate::localdata::TameBlocks::new();
    let mut wild = Vec::new();
    for a in atoms {
        match a {
            Atom::Tame(c, s, n) => tame.add(c, s, n),
            Atom::Wild(p) => wild.push(p.undecorated()),
            Atom::One(o) => wild.push(Piece::raw(Slope::one(), o.dim(), None)),
        }
    }
    FiniteRep::new(tame, wild, Vec::new())
}

pub(crate) fn profile_atoms(p: &BreakProfile) -> Vec<Atom> {
    let mut v: Vec<Atom> = p.tame_blocks().iter().map(|(c, s, n)| Atom::Tame(c.clone(), s, n)).collect();
    v.extend(p.wild().iter().cloned().map(Atom::Wild));
    v
}

/// Inner data `F` of a slope-1 piece `F (x) L_psi(t x)` produced from a
/// finite-point representation.
pub(crate) fn inner_of_finite(f: &FiniteRep) -> Inner {
    if f.has_aggregates() {
        return Inner::Unknown(f.dim() + f.swan());
    }
    let atoms: Vec<Atom> = atoms_of_finite(f).iter().map(up).collect();
    let mut tame = crate::localdata::TameBlocks::new();
    let mut wild = Vec::new();
    for a in atoms {
        match a {
            Atom::Tame(c, s, n) => tame.add(c, s, n),
            Atom::Wild(p) => wild.push(p),
            Atom::One(_) => unreachable!("up never yields slope 1"),
        }
    }
    Inner::known(BreakProfile::new(tame, wild))
}

/// Finite-point representation recovered from a known inner.
pub(crate) fn finite_of_inner(i: &BreakProfile) -> FiniteRep {
    finite_from_atoms(profile_atoms(i).iter().filter_map(down))
}

/// `FT(0, infinity)`: representation at 0 to representation at infinity.
pub fn ft_0_inf(f: &BoundaryRep) -> Result<BoundaryRep> {
    map_rep(f, Place::Zero, Place::Infinity, |a| Some(up(a)))
}

/// `FT(infinity, 0)`: only slopes below 1 survive.
pub fn ft_inf_0(f: &BoundaryRep) -> Result<BoundaryRep> {
    map_rep(f, Place::Infinity, Place::Zero, down)
}

/// `FT(infinity, infinity)`: only slopes above 1 survive.
pub fn ft_inf_inf(f: &BoundaryRep) -> Result<BoundaryRep> {
    map_rep(f, Place::Infinity, Place::Infinity, hyper)
}

/// `FT(t, infinity)`: everything lands in one slope-1 piece with twist `t`.
pub fn ft_t_inf(t: &Point, f: &FiniteRep) -> BoundaryRep {
    if f.is_empty() {
        return BoundaryRep::empty(Place::Infinity);
    }
    let one = SlopeOnePiece::new(Twist::Known(t.clone()), inner_of_finite(f));
    BoundaryRep::from_atoms(Place::Infinity, [Atom::One(one)])
}

/// `FT(infinity, t)`: extracts the slope-1 part twisted by `t`.
pub fn ft_inf_t(t: &Point, g: &BoundaryRep) -> Result<FiniteRep> {
    g.place().expect(Place::Infinity)?;
    let mut out = FiniteRep::zero();
    for p in g.eq1() {
        match &p.twist {
            Twist::Unknown => {
                return Err(Error::InsufficientTwistData(alloc::format!(
                    "slope-1 piece of dimension {} has no twist",
                    p.dim()
                )))
            }
            Twist::Known(s) if s == t => match &p.inner {
                Inner::Known(i) => out = out.direct_sum(&finite_of_inner(i)),
                Inner::Unknown(d) => {
                    return Err(Error::InsufficientInnerData(alloc::format!(
                        "slope-1 piece twisted by {t} of dimension {d}"
                    )))
                }
            },
            Twist::Known(_) => {}
        }
    }
    Ok(out)
}

/// Inverse of [`ft_0_inf`]; same formula as [`ft_inf_0`].
pub fn ft_inv_0_inf(g: &BoundaryRep) -> Result<BoundaryRep> {
    map_rep(g, Place::Infinity, Place::Zero, down)
}

/// Inverse of [`ft_inf_0`]; same formula as [`ft_0_inf`].
pub fn ft_inv_inf_0(f: &BoundaryRep) -> Result<BoundaryRep> {
    map_rep(f, Place::Zero, Place::Infinity, |a| Some(up(a)))
}

/// The `(infinity, infinity)` slope map is an involution on slopes above 1.
pub fn ft_inv_inf_inf(g: &BoundaryRep) -> Result<BoundaryRep> {
    ft_inf_inf(g)
}

/// Inverse of [`ft_t_inf`].
pub fn ft_inv_t_inf(t: &Point, g: &BoundaryRep) -> Result<FiniteRep> {
    ft_inf_t(t, g)
}

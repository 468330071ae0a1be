//! Local convolution functors at infinity and the finite-point contributions
//! of the boundary data.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::error::{Error, Result};
use crate::foundations::{q, q_to_u64, Point, Slope, Q};
use crate::lft::{down, finite_of_inner, ft_inf_0, ft_inf_inf, ft_inv_0_inf, ft_t_inf, hyper, up};
use crate::localdata::{
    Atom, BoundaryRep, Deco, FiniteRep, Inner, Piece, Place, SlopeOnePiece, Twist, UnresolvedMass,
};

fn single(place: Place, a: Atom) -> BoundaryRep {
    BoundaryRep::from_atoms(place, [a])
}

/// If the atom remembers a preimage under the `(0, infinity)` transform, return it.
fn unwrap(a: &Atom) -> Option<Atom> {
    match a {
        Atom::Wild(p) if p.deco().is_some() => down(a),
        _ => None,
    }
}

/// Inner of the slope-1/2 product of two slope-1 pieces. Only the case where
/// one side is a trivial semisimple twist is determined.
fn product_inner(i: &Inner, j: &Inner) -> Inner {
    let (m, n) = (i.dim(), j.dim());
    if i.is_trivial_semisimple() {
        j.scaled(m)
    } else if j.is_trivial_semisimple() {
        i.scaled(n)
    } else {
        Inner::Unknown(m * n)
    }
}

/// `rho(infinity, infinity)` on a pair of atoms.
///
/// A decorated side is unwrapped, the product taken, and the result pushed
/// back through the `(0, infinity)` transform; for undecorated sides the
/// slope is `ab/(a+b)` with dimension `mn(a+b)`.
pub(crate) fn rho_atoms(p: &Atom, q_: &Atom) -> Result<Vec<Atom>> {
    if matches!(p, Atom::Tame(..)) || matches!(q_, Atom::Tame(..)) {
        return Err(Error::NotTotallyWild);
    }
    if let Some(u) = unwrap(p) {
        return Ok(rho_atoms(&u, q_)?.iter().map(up).collect());
    }
    if let Some(u) = unwrap(q_) {
        return Ok(rho_atoms(p, &u)?.iter().map(up).collect());
    }
    if let (Atom::One(x), Atom::One(y)) = (p, q_) {
        let m = x.dim() * y.dim();
        let deco = Deco::Latent { twist: x.twist.mul(&y.twist), inner: product_inner(&x.inner, &y.inner) };
        let deco = if x.twist.is_unknown() || y.twist.is_unknown() { None } else { Some(deco) };
        return Ok(vec![Atom::Wild(Piece::raw(Slope::half(), 2 * m, deco))]);
    }
    let (a, b) = (p.slope().value(), q_.slope().value());
    let c = a * b / (a + b);
    let dim = q_to_u64(q(p.dim()) * q(q_.dim()) * (a + b))?;
    if c == Q::one() {
        return Ok(vec![Atom::One(SlopeOnePiece::new(Twist::Unknown, Inner::Unknown(dim)))]);
    }
    Ok(vec![Atom::Wild(Piece::raw(Slope::from_q(c)?, dim, None))])
}

fn wild_atoms(r: &BoundaryRep) -> Result<Vec<Atom>> {
    if !r.is_totally_wild() {
        return Err(Error::NotTotallyWild);
    }
    Ok(r.atoms())
}

/// `rho(infinity, infinity)(F, G)`, both at infinity and totally wild.
pub fn rho_inf_inf(f: &BoundaryRep, g: &BoundaryRep) -> Result<BoundaryRep> {
    f.place().expect(Place::Infinity)?;
    g.place().expect(Place::Infinity)?;
    let (fa, ga) = (wild_atoms(f)?, wild_atoms(g)?);
    let mut out = Vec::new();
    for x in &fa {
        for y in &ga {
            out.extend(rho_atoms(x, y)?);
        }
    }
    Ok(BoundaryRep::from_atoms(Place::Infinity, out))
}

/// `iota* FT^-1(0, infinity)` applied to a rep at infinity: lands at infinity again.
fn pull_back(r: &BoundaryRep) -> Result<BoundaryRep> {
    ft_inv_0_inf(r)?.iota()
}

/// `rho(t, infinity)(F, G)` for `F` at the point `t` and `G` at infinity.
pub fn rho_t_inf(t: &Point, f: &FiniteRep, g: &BoundaryRep) -> Result<BoundaryRep> {
    g.place().expect(Place::Infinity)?;
    wild_atoms(g)?;
    pull_back(&rho_inf_inf(&ft_t_inf(&t.inv(), f), g)?)
}

/// `rho(t, infinity)` for a slope-1 atom read at 0 with twist `t`, computed
/// without passing through a finite-point representation; this keeps any
/// decorations on the inner representation.
fn rho_slope_one(o: &SlopeOnePiece, g: &BoundaryRep) -> Result<BoundaryRep> {
    let k = single(Place::Infinity, Atom::One(SlopeOnePiece::new(o.twist.inv(), o.inner.clone())));
    pull_back(&rho_inf_inf(&k, g)?)
}

/// Contribution of one atom of the 0-data to `rho(0, infinity)`.
fn rho_0_inf_atom(p: &Atom, g: &BoundaryRep) -> Result<BoundaryRep> {
    let s = p.slope();
    if s.is_tame() {
        return Err(Error::NotTotallyWild);
    }
    let inner = if s > Slope::one() {
        rho_inf_inf(&ft_inf_inf(&single(Place::Infinity, p.clone()))?, g)?
    } else if s == Slope::one() {
        let Atom::One(o) = p else { unreachable!() };
        rho_slope_one(o, g)?
    } else {
        rho_0_inf(&ft_inf_0(&single(Place::Infinity, p.clone()))?, g)?
    };
    pull_back(&inner)
}

/// `rho(0, infinity)(F, G)` for `F` at 0 and `G` at infinity.
///
/// Never needs slope-1 twists or inners of `F`: when they are unknown the
/// result carries the unknowns along instead of failing.
pub fn rho_0_inf(f: &BoundaryRep, g: &BoundaryRep) -> Result<BoundaryRep> {
    f.place().expect(Place::Zero)?;
    g.place().expect(Place::Infinity)?;
    wild_atoms(g)?;
    let mut parts = Vec::new();
    for p in wild_atoms(f)? {
        parts.push(rho_0_inf_atom(&p, g)?);
    }
    BoundaryRep::sum_all(Place::Infinity, parts)
}

/// Slope-1 part at infinity produced by an equal-slope pair, before it is
/// read off as finite-point data.
fn equal_slope_product(p: &Atom, qa: &Atom) -> Result<BoundaryRep> {
    let s = p.slope();
    let g = single(Place::Infinity, qa.clone());
    if s > Slope::one() {
        let h = hyper(p).expect("slope above 1");
        rho_inf_inf(&single(Place::Infinity, h), &g)
    } else if s == Slope::one() {
        let Atom::One(o) = p else { unreachable!() };
        rho_slope_one(o, &g)
    } else {
        let d = down(p).expect("slope below 1");
        rho_0_inf(&single(Place::Zero, d), &g)
    }
}

/// Finite-point part of the convolution coming from `F` at 0 and `G` at
/// infinity, for all points at once. Only pairs of equal slope contribute.
/// Slope-1 data that cannot be pinned down is returned as unresolved mass.
pub fn rho_0_inf_finite(
    f: &BoundaryRep,
    g: &BoundaryRep,
) -> Result<(BTreeMap<Point, FiniteRep>, Vec<UnresolvedMass>)> {
    f.place().expect(Place::Zero)?;
    g.place().expect(Place::Infinity)?;
    let (fa, ga) = (wild_atoms(f)?, wild_atoms(g)?);
    let mut reps: BTreeMap<Point, FiniteRep> = BTreeMap::new();
    let mut lost = Vec::new();
    for p in &fa {
        for qa in &ga {
            if p.slope() != qa.slope() {
                continue;
            }
            let y = equal_slope_product(p, qa)?;
            if !y.wild().is_empty() {
                return Err(Error::Inconsistent(String::from("equal-slope product left the slope-1 stratum")));
            }
            for o in y.eq1() {
                match (&o.twist, &o.inner) {
                    (Twist::Known(t), Inner::Known(i)) => {
                        let u = t.inv();
                        let r = finite_of_inner(i);
                        let e = reps.entry(u).or_default();
                        *e = e.direct_sum(&r);
                    }
                    (tw, _) => lost.push(UnresolvedMass {
                        point: tw.point().map(|t| t.inv()),
                        budget: o.dim(),
                        note: alloc::format!(
                            "slope {} at 0 against slope {} at infinity: {} not determined by break data",
                            p.slope(),
                            qa.slope(),
                            if tw.is_unknown() { "location" } else { "local monodromy" }
                        ),
                    }),
                }
            }
        }
    }
    Ok((reps, lost))
}

/// `rho^{(u)}(0, infinity)(F, G)`: the part of [`rho_0_inf_finite`] at `u`.
/// Unresolved mass with unknown location is reported alongside.
pub fn rho_0_inf_at(u: &Point, f: &BoundaryRep, g: &BoundaryRep) -> Result<(FiniteRep, Vec<UnresolvedMass>)> {
    let (mut reps, lost) = rho_0_inf_finite(f, g)?;
    let rep = reps.remove(u).unwrap_or_default();
    let lost = lost.into_iter().filter(|m| m.point.as_ref().is_none_or(|p| p == u)).collect();
    Ok((rep, lost))
}

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::foundations::{Field, Point, Slope};
use crate::lft::{finite_of_inner, ft_0_inf, ft_inf_0, ft_inf_inf, ft_inv_0_inf, ft_inv_inf_0, ft_inv_inf_inf, ft_inv_t_inf, ft_t_inf, inner_of_finite};
use crate::localdata::{
    Atom, BoundaryRep, FiniteRep, GlobalProfile, Inner, Place, SlopeOnePiece, Twist, UnresolvedMass,
};

/// What [`phi`] does with slope-1 data at 0 it cannot place.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiMode {
    /// Fail with `InsufficientTwistData` / `InsufficientInnerData`.
    Strict,
    /// Record it as unresolved mass.
    Lenient,
}

/// `L_psi[1]`: a single slope-1 piece at infinity with trivial twist and inner.
pub fn artin_schreier(field: Field) -> GlobalProfile {
    let one = SlopeOnePiece::new(Twist::Known(Point::identity()), Inner::trivial(1));
    GlobalProfile::new(
        field,
        BoundaryRep::empty(Place::Zero),
        BoundaryRep::from_atoms(Place::Infinity, [Atom::One(one)]),
        BTreeMap::new(),
    )
    .expect("well formed")
    .with_generic_rank(Some(1))
    .with_label("L_psi")
}

fn split(r: &BoundaryRep) -> (BoundaryRep, BoundaryRep, Vec<SlopeOnePiece>) {
    let (lt, gt): (Vec<Atom>, Vec<Atom>) =
        r.atoms().into_iter().filter(|a| !matches!(a, Atom::One(_))).partition(|a| a.slope() < Slope::one());
    (
        BoundaryRep::from_atoms(r.place(), lt),
        BoundaryRep::from_atoms(r.place(), gt),
        r.eq1().to_vec(),
    )
}

/// `Phi(K) = K * L_psi[1]`, computed stratum by stratum.
///
/// Infinity receives `FT(0,inf)` of `K` at infinity, `FT(inf,inf)` of the
/// slopes above 1 at 0 and `FT(s^-1,inf)` of each `K_s`; 0 receives
/// `FT(inf,0)` of the slopes below 1 at 0; the slope-1 part at 0 with twist
/// `s` becomes local data at `s`.
pub fn phi(k: &GlobalProfile, mode: PhiMode) -> Result<GlobalProfile> {
    if mode == PhiMode::Strict && !k.is_determinate() {
        return Err(Error::InsufficientTwistData(alloc::string::String::from("input carries unresolved mass")));
    }
    let (lt, gt, ones) = split(k.at0());
    let mut inf = Vec::new();
    inf.push(ft_0_inf(&k.at_inf().iota()?.without_concrete())?);
    inf.push(ft_inf_inf(&gt.iota()?)?);
    for (s, f) in k.singular() {
        inf.push(ft_t_inf(&s.inv(), &f.without_concrete()));
    }
    let at_inf = BoundaryRep::sum_all(Place::Infinity, inf)?;
    let at0 = ft_inf_0(&lt.iota()?)?;

    let mut singular: BTreeMap<Point, FiniteRep> = BTreeMap::new();
    let mut lost: Vec<UnresolvedMass> = k.unresolved().to_vec();
    for o in ones {
        match (&o.twist, &o.inner) {
            (Twist::Known(s), Inner::Known(i)) => {
                let e = singular.entry(s.clone()).or_default();
                *e = e.direct_sum(&finite_of_inner(i));
            }
            (tw, inner) => match mode {
                PhiMode::Strict if tw.is_unknown() => {
                    return Err(Error::InsufficientTwistData(alloc::format!(
                        "slope-1 piece at 0 of dimension {}",
                        o.dim()
                    )))
                }
                PhiMode::Strict => {
                    return Err(Error::InsufficientInnerData(alloc::format!(
                        "slope-1 piece at 0 twisted by {}",
                        tw.point().unwrap()
                    )))
                }
                PhiMode::Lenient => lost.push(UnresolvedMass {
                    point: tw.point().cloned(),
                    budget: inner.dim(),
                    note: alloc::string::String::from("slope-1 piece at 0 with incomplete data"),
                }),
            },
        }
    }
    let rank = k.generic_rank().map(|r| r + k.euler());
    Ok(GlobalProfile::new(k.field(), at0, at_inf, singular)?
        .with_generic_rank(rank)
        .with_label(k.label())
        .with_unresolved(lost))
}

/// Inverse of [`phi`]: convolution with `L_psi-bar[1]`.
pub fn psi(m: &GlobalProfile) -> Result<GlobalProfile> {
    if !m.is_determinate() {
        return Err(Error::InsufficientTwistData(alloc::string::String::from("input carries unresolved mass")));
    }
    let (lt, gt, ones) = split(m.at_inf());
    let mut at0 = Vec::new();
    let k_inf = ft_inv_0_inf(&lt)?.iota()?;
    at0.push(ft_inv_inf_inf(&gt)?.iota()?);
    at0.push(ft_inv_inf_0(&m.at0().without_concrete())?.iota()?);
    let mut singular: BTreeMap<Point, FiniteRep> = BTreeMap::new();
    for o in &ones {
        let Twist::Known(t) = &o.twist else {
            return Err(Error::InsufficientTwistData(alloc::format!("slope-1 piece at infinity of dimension {}", o.dim())));
        };
        let single = BoundaryRep::from_atoms(Place::Infinity, [Atom::One(o.clone())]);
        let r = ft_inv_t_inf(t, &single)?;
        let e = singular.entry(t.inv()).or_default();
        *e = e.direct_sum(&r);
    }
    let mut ones0 = Vec::new();
    for (s, x) in m.singular() {
        if x.has_aggregates() {
            return Err(Error::InsufficientInnerData(alloc::format!("aggregate local data at {s}")));
        }
        ones0.push(Atom::One(SlopeOnePiece::new(Twist::Known(s.clone()), inner_of_finite(x))));
    }
    at0.push(BoundaryRep::from_atoms(Place::Zero, ones0));
    let at0 = BoundaryRep::sum_all(Place::Zero, at0)?;
    let rank = match m.generic_rank() {
        Some(r) if r >= m.euler() => Some(r - m.euler()),
        _ => None,
    };
    Ok(GlobalProfile::new(m.field(), at0, k_inf, singular)?.with_generic_rank(rank).with_label(m.label()))
}

/// `d(K) = ceil(1 / s)` for the smallest positive slope `s` at 0, or 0.
pub fn ft_depth(k: &GlobalProfile) -> u64 {
    match k.at0().slopes().into_iter().next() {
        None => 0,
        Some(s) => ((s.denom() + s.numer() - 1) / s.numer()) as u64,
    }
}

/// Iterates [`phi`] (lenient) until no positive slope is left at 0 or
/// `max_steps` is reached; returns every intermediate profile.
pub fn phi_iterate(k: &GlobalProfile, max_steps: usize) -> Result<Vec<GlobalProfile>> {
    let mut out = alloc::vec![k.clone()];
    while ft_depth(out.last().unwrap()) > 0 && out.len() <= max_steps {
        let next = phi(out.last().unwrap(), PhiMode::Lenient)?;
        out.push(next);
    }
    Ok(out)
}

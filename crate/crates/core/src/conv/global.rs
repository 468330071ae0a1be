use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::finite::rho_finite;
use super::local::{rho_0_inf, rho_0_inf_finite, rho_inf_inf, rho_t_inf};
use crate::error::{Error, Result};
use crate::localdata::{BoundaryRep, FiniteRep, GlobalProfile, Place, UnresolvedMass};
use crate::foundations::Point;

/// Cancellation terms for equal-slope finite-point pairs, keyed by `(s, t)`.
pub type CancellationTable = BTreeMap<(Point, Point), u64>;

fn conv_inf(k: &GlobalProfile, l: &GlobalProfile) -> Result<BoundaryRep> {
    let mut parts = Vec::new();
    parts.push(rho_inf_inf(k.at_inf(), l.at_inf())?);
    parts.push(rho_0_inf(k.at0(), l.at_inf())?);
    parts.push(rho_0_inf(l.at0(), k.at_inf())?);
    for (s, f) in k.singular() {
        parts.push(rho_t_inf(s, f, l.at_inf())?);
    }
    for (t, g) in l.singular() {
        parts.push(rho_t_inf(t, g, k.at_inf())?);
    }
    BoundaryRep::sum_all(Place::Infinity, parts)
}

fn carried(from: &GlobalProfile, other: &GlobalProfile, side: &str) -> Vec<UnresolvedMass> {
    let e = other.euler();
    from.unresolved()
        .iter()
        .map(|m| UnresolvedMass {
            point: None,
            budget: m.budget * e,
            note: alloc::format!("carried from {side} operand: {}", m.note),
        })
        .collect()
}

/// `K * L` with no cancellation data beyond what concrete pieces provide.
pub fn convolve(k: &GlobalProfile, l: &GlobalProfile) -> Result<GlobalProfile> {
    convolve_with(k, l, &CancellationTable::new())
}

/// Multiplicative convolution of two profiles.
///
/// Infinity collects `rho(inf,inf)`, both `rho(0,inf)` terms and every
/// `rho(s,inf)`; 0 is obtained from the same formula after inversion. A
/// point `u` collects `rho^(u)(0,inf)` in both orders and `rho(s,t)` over
/// `st = u`.
pub fn convolve_with(k: &GlobalProfile, l: &GlobalProfile, table: &CancellationTable) -> Result<GlobalProfile> {
    if k.field() != l.field() {
        return Err(Error::FieldMismatch);
    }
    if k.is_zero() || l.is_zero() {
        return Err(Error::HypothesisViolated(alloc::string::String::from(
            "convolution with a Kummer class is zero in the quotient category",
        )));
    }
    let at_inf = conv_inf(k, l)?.without_concrete();
    let at0 = conv_inf(&k.iota()?, &l.iota()?)?.iota()?.without_concrete();

    let (mut singular, mut lost) = rho_0_inf_finite(k.at0(), l.at_inf())?;
    let (more, lost2) = rho_0_inf_finite(l.at0(), k.at_inf())?;
    lost.extend(lost2);
    for (u, r) in more {
        let e = singular.entry(u).or_default();
        *e = e.direct_sum(&r);
    }
    for (s, f) in k.singular() {
        for (t, g) in l.singular() {
            let c = table.get(&(s.clone(), t.clone())).copied();
            let r = rho_finite(k.field(), s, t, f, g, c)?;
            let e: &mut FiniteRep = singular.entry(s.mul(t)).or_default();
            *e = e.direct_sum(&r);
        }
    }
    lost.extend(carried(k, l, "left"));
    lost.extend(carried(l, k, "right"));

    let rank = match (k.generic_rank(), l.generic_rank()) {
        (Some(rk), Some(rl)) => Some(k.euler() * rl + rk * l.euler()),
        _ => None,
    };
    let label = match (k.label(), l.label()) {
        ("", "") => alloc::string::String::new(),
        (a, b) => alloc::format!("({a} * {b})"),
    };
    Ok(GlobalProfile::new(k.field(), at0, at_inf, singular)?
        .with_generic_rank(rank)
        .with_label(label)
        .with_unresolved(lost))
}

/// `S(K) S(L)`, checked against the support of `K * L`.
///
/// Requires that no positive slope at 0 of one operand occurs at infinity of
/// the other.
pub fn support_product(k: &GlobalProfile, l: &GlobalProfile) -> Result<BTreeSet<Point>> {
    for (a, b, what) in [(k.at0(), l.at_inf(), "K at 0 and L at infinity"), (l.at0(), k.at_inf(), "L at 0 and K at infinity")] {
        let common: Vec<_> = a.slopes().intersection(&b.slopes()).copied().collect();
        if let Some(s) = common.first() {
            return Err(Error::HypothesisViolated(alloc::format!("{what} share the slope {s}")));
        }
    }
    let predicted: BTreeSet<Point> =
        k.support().iter().flat_map(|s| l.support().into_iter().map(move |t| s.mul(&t))).collect();
    let actual = convolve(k, l)?.support();
    if actual != predicted {
        return Err(Error::Inconsistent(alloc::format!(
            "support of the convolution has {} points, expected {}",
            actual.len(),
            predicted.len()
        )));
    }
    Ok(predicted)
}

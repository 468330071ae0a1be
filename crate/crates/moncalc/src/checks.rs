//! Invariant suite run by `moncalc check`.

use moncalc_core::conv::{convolve, rho_0_inf, rho_inf_inf, rho_t_inf, support_product};
use moncalc_core::foundations::Point;
use moncalc_core::lft::{ft_0_inf, ft_inv_0_inf};
use moncalc_core::localdata::{Atom, BoundaryRep, Deco, FiniteRep, GlobalProfile, UnresolvedMass};
use moncalc_core::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub name: &'static str,
    pub status: Status,
}

impl Outcome {
    fn of(name: &'static str, ok: bool, detail: impl FnOnce() -> String) -> Self {
        Outcome { name, status: if ok { Status::Pass } else { Status::Fail(detail()) } }
    }
}

/// Profile equality up to labels and the wording of unresolved-mass notes.
pub fn same_profile(a: &GlobalProfile, b: &GlobalProfile) -> bool {
    canonical(a) == canonical(b)
}

fn canonical(g: &GlobalProfile) -> GlobalProfile {
    let u = g.unresolved().iter().map(|m| UnresolvedMass { note: String::new(), ..m.clone() }).collect();
    g.clone().with_label("").with_unresolved(u)
}

fn deco_known(d: &Deco) -> bool {
    match d {
        Deco::Latent { twist, inner } => !twist.is_unknown() && !inner.is_unknown(),
        Deco::Nested(x) => deco_known(x),
    }
}

fn boundary_known(r: &BoundaryRep) -> bool {
    r.atoms().iter().all(|a| match a {
        Atom::One(o) => !o.twist.is_unknown() && !o.inner.is_unknown(),
        Atom::Wild(p) => p.deco().is_none_or(deco_known),
        Atom::Tame(..) => true,
    })
}

/// No unresolved mass and no unknown slope-1 twist or inner anywhere.
pub fn fully_determined(g: &GlobalProfile) -> bool {
    g.is_determinate() && boundary_known(g.at0()) && boundary_known(g.at_inf())
}

/// `iota* FT^-1(0,inf)` applied to a representation at infinity.
fn pull_back(r: &BoundaryRep) -> Result<BoundaryRep> {
    ft_inv_0_inf(r)?.iota()
}

/// `FT(0,inf) iota*` applied to a representation at infinity.
fn push(r: &BoundaryRep) -> Result<BoundaryRep> {
    ft_0_inf(&r.iota()?)
}

/// Both forms of the first cancellation identity for `rho(inf,inf)`.
pub fn cancel_inf_inf(f: &BoundaryRep, g: &BoundaryRep) -> Result<bool> {
    let direct = rho_inf_inf(f, g)?;
    let left = pull_back(&rho_inf_inf(&push(f)?, g)?)?;
    let right = pull_back(&rho_inf_inf(f, &push(g)?)?)?;
    Ok(left == direct && right == direct)
}

/// The cancellation identity for `rho(t,inf)`.
pub fn cancel_t_inf(t: &Point, f: &FiniteRep, g: &BoundaryRep) -> Result<bool> {
    Ok(pull_back(&rho_t_inf(t, f, &push(g)?)?)? == rho_t_inf(t, f, g)?)
}

/// The cancellation identity for `rho(0,inf)`.
pub fn cancel_0_inf(f: &BoundaryRep, g: &BoundaryRep) -> Result<bool> {
    Ok(pull_back(&rho_0_inf(f, &push(g)?)?)? == rho_0_inf(f, g)?)
}

fn cancellation(k: &GlobalProfile, l: &GlobalProfile) -> Result<Outcome> {
    let mut fails = Vec::new();
    for (name, a, b) in [("K", k, l), ("L", l, k)] {
        if !cancel_inf_inf(a.at_inf(), b.at_inf())? {
            fails.push(format!("rho(inf,inf) with {name} on the left"));
        }
        if !cancel_0_inf(a.at0(), b.at_inf())? {
            fails.push(format!("rho(0,inf) from {name} at 0"));
        }
        for (t, f) in a.singular() {
            if !cancel_t_inf(t, f, b.at_inf())? {
                fails.push(format!("rho(t,inf) at {t} of {name}"));
            }
        }
    }
    Ok(Outcome::of("cancellation identities", fails.is_empty(), || fails.join("; ")))
}

/// Runs every check on the pair. Errors from the computations themselves
/// (missing twist data and the like) are returned, not folded into outcomes.
pub fn run_suite(k: &GlobalProfile, l: &GlobalProfile) -> Result<Vec<Outcome>> {
    let kl = convolve(k, l)?;
    let lk = convolve(l, k)?;
    let mut out = Vec::new();
    out.push(Outcome::of("euler multiplicativity", kl.euler() == k.euler() * l.euler(), || {
        format!("euler(K*L) = {}, euler(K) euler(L) = {}", kl.euler(), k.euler() * l.euler())
    }));
    out.push(Outcome::of("commutativity", same_profile(&kl, &lk), || "K*L differs from L*K".into()));
    let iota_kl = kl.iota()?;
    let kl_iota = convolve(&k.iota()?, &l.iota()?)?;
    out.push(Outcome::of("iota-equivariance", same_profile(&iota_kl, &kl_iota), || {
        "iota(K*L) differs from iota(K) * iota(L)".into()
    }));
    out.push(cancellation(k, l)?);
    out.push(match support_product(k, l) {
        Ok(_) => Outcome { name: "support corollary", status: Status::Pass },
        Err(Error::HypothesisViolated(m)) => Outcome { name: "support corollary", status: Status::Skipped(m) },
        Err(Error::Inconsistent(m)) => Outcome { name: "support corollary", status: Status::Fail(m) },
        Err(e) => return Err(e),
    });
    Ok(out)
}

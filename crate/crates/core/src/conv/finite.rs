//! Convolution of local data at two finite points.

use alloc::vec::Vec;

use num_traits::One;

use crate::error::{invalid, Error, Result};
use crate::foundations::{q, q_to_u64, Field, Location, Mobius, Point, Slope};
use crate::localdata::{AggregatePiece, AskPiece, FiniteRep, Piece, TameBlocks};

fn scalar_of(p: &Point, field: Field) -> Result<crate::foundations::Scalar> {
    match p.value() {
        Some(v) => field.element(*v),
        None => Err(Error::SymbolicPointUnsupported(alloc::format!("{p}"))),
    }
}

fn checked_swan(order: u64, field: Field) -> Result<u64> {
    let p = field.characteristic();
    if p != 0 && order.is_multiple_of(p) && order > 0 {
        return Err(Error::PoleOrderDivisibleByP { order, p });
    }
    Ok(order)
}

/// Swan conductor at 1 of `L_psi(f(s x) + g(t / x))`, i.e. of the tensor of
/// the two data moved to 1, one of them pulled back by inversion.
pub fn cancellation_at_one(field: Field, s: &Point, t: &Point, f: &AskPiece, g: &AskPiece) -> Result<u64> {
    let fs = f.f.mobius_pull(&Mobius::Scale(scalar_of(s, field)?))?;
    let gt = g.f.mobius_pull(&Mobius::Scale(scalar_of(t, field)?))?.mobius_pull(&Mobius::Invert)?;
    let h = fs.add(&gt)?;
    checked_swan(h.pole_order(&Location::At(field.from_int(1))), field)
}

fn pole_at(field: Field, at: &Point, a: &AskPiece) -> Result<u64> {
    Ok(a.f.pole_order(&Location::At(scalar_of(at, field)?)))
}

/// Total cancellation term over all equal-slope pairs of concrete data.
fn concrete_cancellation(field: Field, s: &Point, t: &Point, f: &[AskPiece], g: &[AskPiece]) -> Result<u64> {
    let mut c = 0;
    for x in f {
        let a = pole_at(field, s, x)?;
        for y in g {
            if pole_at(field, t, y)? == a {
                c += cancellation_at_one(field, s, t, x, y)?;
            }
        }
    }
    Ok(c)
}

fn scale_pieces(k: u64, v: &[Piece]) -> impl Iterator<Item = Piece> + '_ {
    v.iter().filter(move |_| k > 0).map(move |p| p.scaled(k))
}

fn scale_aggregates(k: u64, v: &[AggregatePiece]) -> impl Iterator<Item = AggregatePiece> + '_ {
    v.iter().filter(move |_| k > 0).map(move |a| AggregatePiece { dim: a.dim * k, swan: a.swan * k, ..a.clone() })
}

/// `rho(s, t)(F, G)`, the local monodromy at `st` contributed by `F` at `s`
/// and `G` at `t`.
///
/// Tame parts tensor block by block. A tame part times a wild or aggregate
/// part scales it. Two wild pieces of different slopes give an aggregate of
/// the larger slope. Equal slopes need the Swan conductor `c` of the tensor
/// at 1: pass it as `cancellation` (summed over all equal-slope pairs), or
/// supply concrete data on both sides together with `s`, `t` values.
pub fn rho_finite(
    field: Field,
    s: &Point,
    t: &Point,
    f: &FiniteRep,
    g: &FiniteRep,
    cancellation: Option<u64>,
) -> Result<FiniteRep> {
    let (mf, mg) = (f.tame().dim(), g.tame().dim());
    let tame: TameBlocks = f.tame().tensor(g.tame());
    let mut wild: Vec<Piece> = scale_pieces(mf, g.wild()).chain(scale_pieces(mg, f.wild())).collect();
    let mut aggs: Vec<AggregatePiece> =
        scale_aggregates(mf, g.aggregates()).chain(scale_aggregates(mg, f.aggregates())).collect();
    let f_wild = !f.wild().is_empty() || f.has_aggregates();
    let g_wild = !g.wild().is_empty() || g.has_aggregates();
    if (f.has_aggregates() && g_wild) || (g.has_aggregates() && f_wild) {
        return Err(Error::NeedsCancellationData(alloc::format!(
            "aggregate local data at {s} or {t} against wild data"
        )));
    }
    let mut eq_dim = q(0);
    let mut eq_swan = q(0);
    for x in f.wild() {
        for y in g.wild() {
            let (a, b) = (x.slope().value(), y.slope().value());
            let mn = q(x.dim() * y.dim());
            if a == b {
                eq_dim += mn * (q(2) * a + q(1));
                eq_swan += mn * a * a;
            } else {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                let d = mn * (lo + q(1));
                aggs.push(AggregatePiece {
                    dim: q_to_u64(d)?,
                    swan: q_to_u64(d * hi)?,
                    single_slope: Some(Slope::from_q(hi)?),
                    inferred: true,
                });
            }
        }
    }
    if eq_dim > q(0) {
        let c = match (cancellation, f.concrete(), g.concrete()) {
            (Some(c), _, _) => c,
            (None, Some(cf), Some(cg)) => concrete_cancellation(field, s, t, cf, cg)?,
            _ => {
                return Err(Error::NeedsCancellationData(alloc::format!(
                    "equal slopes at {s} and {t}; supply the Swan conductor of the tensor at 1 or concrete data"
                )))
            }
        };
        let dim = q_to_u64(eq_dim)?;
        if c >= dim {
            return invalid(alloc::format!("cancellation term {c} is too large for dimension {dim}"));
        }
        aggs.push(AggregatePiece {
            dim: dim - c,
            swan: q_to_u64(eq_swan)? + c,
            single_slope: None,
            inferred: false,
        });
    } else if cancellation.is_some_and(|c| c > 0) {
        return invalid("cancellation term given but no equal-slope pair is present");
    }
    wild.retain(|p| p.dim() > 0);
    Ok(FiniteRep::new(tame, wild, aggs))
}

/// Dimension and Swan conductor of the additive local convolution at `s + t`
/// of two concrete pieces.
///
/// Both data are moved to 0, pushed through `FT(0, infinity)`, tensored, and
/// pulled back. The Swan conductor of the tensor is `ab + c'`, where `c'` is
/// the Swan conductor at 0 of `f(x) + g(-x)`; the pullback then has dimension
/// `dim - Swan` of the tensor.
pub fn additive_local_alternative(
    field: Field,
    s: &Point,
    t: &Point,
    f: &AskPiece,
    g: &AskPiece,
) -> Result<(u64, u64)> {
    let f0 = f.f.mobius_pull(&Mobius::Translate(scalar_of(s, field)?))?;
    let g0 = g.f.mobius_pull(&Mobius::Translate(scalar_of(t, field)?))?;
    let zero = Location::At(field.from_int(0));
    let (a, b) = (f0.pole_order(&zero), g0.pole_order(&zero));
    if a == 0 || b == 0 {
        return invalid("additive comparison needs two wild pieces");
    }
    let gm = g0.mobius_pull(&Mobius::Scale(field.neg(&crate::foundations::Scalar::one())))?;
    let c = checked_swan(f0.add(&gm)?.pole_order(&zero), field)?;
    let (a, b) = (q(a), q(b));
    // FT(0, infinity) images: slopes a/(a+1), b/(b+1), dims a+1, b+1
    let tensor_dim = q_to_u64((a + q(1)) * (b + q(1)))?;
    let tensor_swan = q_to_u64(a * b)? + c;
    if tensor_swan > tensor_dim {
        return Err(Error::Inconsistent(alloc::format!("tensor Swan {tensor_swan} above dimension {tensor_dim}")));
    }
    Ok((tensor_dim - tensor_swan, tensor_swan))
}

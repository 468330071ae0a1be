//! JSON document format for profiles.
//!
//! Syntax and type errors carry line and column from the parser; semantic
//! errors name the offending field path.

use std::collections::{BTreeMap, BTreeSet};

use moncalc_core::foundations::{Field, Point, Poly, RationalFunction, Scalar, Slope, TameChar, Q};
use moncalc_core::localdata::{
    AggregatePiece, AskPiece, Atom, BoundaryRep, BreakProfile, Deco, FiniteRep, GlobalProfile, Inner, Piece, Place,
    SlopeOnePiece, TameBlocks, Twist, UnresolvedMass,
};
use moncalc_core::{Error, Result};
use serde::{Deserialize, Serialize};

pub type ExpMap = BTreeMap<String, i64>;
/// Character exponents as `[numerator, denominator]`.
pub type CharDoc = BTreeMap<String, (i64, i64)>;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(untagged)]
pub enum CharacteristicDoc {
    Named(String),
    Prime(u64),
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(untagged)]
pub enum ScalarDoc {
    Int(i64),
    Text(String),
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(untagged)]
pub enum PieceDoc {
    Plain(i64, i64, u64),
    Decorated(i64, i64, u64, DecoDoc),
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum DecoDoc {
    Latent(SlopeOneDoc),
    Nested(Box<DecoDoc>),
}

/// Slope-1 data. Missing twist or inner must be listed under `indeterminate`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Default)]
#[serde(deny_unknown_fields)]
pub struct SlopeOneDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<ExpMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner: Option<InnerDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub indeterminate: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Default)]
#[serde(deny_unknown_fields)]
pub struct InnerDoc {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tame: Vec<(CharDoc, u64)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub wild: Vec<PieceDoc>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AskDoc {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub char: CharDoc,
    pub num: Vec<ScalarDoc>,
    #[serde(default = "one_poly")]
    pub den: Vec<ScalarDoc>,
}

fn one_poly() -> Vec<ScalarDoc> {
    vec![ScalarDoc::Int(1)]
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Default)]
#[serde(deny_unknown_fields)]
pub struct BoundaryDoc {
    /// Only meaningful for standalone local data fed to `ft`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tame: Vec<(CharDoc, u64)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lt1: Vec<PieceDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub eq1: Vec<SlopeOneDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gt1: Vec<PieceDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ask: Vec<AskDoc>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AggregateDoc {
    pub dim: u64,
    pub swan: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slope: Option<(i64, i64)>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub inferred: bool,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SingularDoc {
    pub point: ExpMap,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<ScalarDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tame: Vec<(CharDoc, u64)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub wild: Vec<(i64, i64, u64)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aggregate: Vec<AggregateDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ask: Vec<AskDoc>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct UnresolvedDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<ExpMap>,
    pub budget: u64,
    pub note: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ProfileDocument {
    pub characteristic: CharacteristicDoc,
    #[serde(default)]
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub label: String,
    #[serde(rename = "genericRank", default, skip_serializing_if = "Option::is_none")]
    pub generic_rank: Option<u64>,
    #[serde(default)]
    pub at0: BoundaryDoc,
    #[serde(rename = "atInf", default)]
    pub at_inf: BoundaryDoc,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub singular: Vec<SingularDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub indeterminate: Vec<UnresolvedDoc>,
}

fn bad<T>(path: &str, e: impl std::fmt::Display) -> Result<T> {
    Err(Error::Validation(format!("{path}: {e}")))
}

fn ctx<T>(path: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Validation(m) => Error::Validation(format!("{path}: {m}")),
        other => other,
    })
}

// ---- decoding ----

pub fn parse_document(text: &str) -> Result<ProfileDocument> {
    serde_json::from_str(text).map_err(|e| Error::Validation(format!("malformed profile document: {e}")))
}

pub fn parse_profile(text: &str) -> Result<GlobalProfile> {
    to_profile(&parse_document(text)?)
}

fn field_of(c: &CharacteristicDoc) -> Result<Field> {
    match c {
        CharacteristicDoc::Named(s) if s == "generic" => Ok(Field::Rational),
        CharacteristicDoc::Named(s) => bad("characteristic", format!("expected \"generic\" or a prime, got {s:?}")),
        CharacteristicDoc::Prime(p) => ctx("characteristic", Field::prime(*p)),
    }
}

fn scalar(path: &str, s: &ScalarDoc) -> Result<Scalar> {
    match s {
        ScalarDoc::Int(n) => Ok(Scalar::from_integer(*n as i128)),
        ScalarDoc::Text(t) => {
            let (n, d) = t.split_once('/').unwrap_or((t.as_str(), "1"));
            match (n.trim().parse::<i128>(), d.trim().parse::<i128>()) {
                (Ok(n), Ok(d)) if d != 0 => Ok(Scalar::new(n, d)),
                _ => bad(path, format!("bad scalar {t:?}")),
            }
        }
    }
}

fn point(path: &str, m: &ExpMap, declared: &BTreeSet<String>) -> Result<Point> {
    for g in m.keys() {
        if !declared.contains(g) {
            return bad(path, format!("generator {g:?} is not declared"));
        }
    }
    ctx(path, Point::from_exponents(m.iter().map(|(k, v)| (k.clone(), *v))))
}

fn tame_char(path: &str, c: &CharDoc) -> Result<TameChar> {
    let mut v = Vec::new();
    for (k, &(n, d)) in c {
        if d == 0 {
            return bad(path, "character exponent with zero denominator");
        }
        v.push((k.clone(), Q::new(n, d)));
    }
    ctx(path, TameChar::new(v))
}

fn tame_blocks(path: &str, v: &[(CharDoc, u64)]) -> Result<TameBlocks> {
    let mut b = TameBlocks::new();
    for (i, (c, s)) in v.iter().enumerate() {
        if *s == 0 {
            return bad(&format!("{path}[{i}]"), "block size must be positive");
        }
        b.add(tame_char(&format!("{path}[{i}]"), c)?, *s, 1);
    }
    Ok(b)
}

struct Decoder<'a> {
    declared: &'a BTreeSet<String>,
}

impl Decoder<'_> {
    fn slope_one(&self, path: &str, d: &SlopeOneDoc, implied_dim: Option<u64>) -> Result<SlopeOnePiece> {
        let flagged = |w: &str| d.indeterminate.iter().any(|x| x == w);
        for w in &d.indeterminate {
            if w != "twist" && w != "inner" {
                return bad(path, format!("unknown indeterminate entry {w:?}"));
            }
        }
        let twist = match (&d.twist, flagged("twist")) {
            (Some(t), false) => Twist::Known(point(&format!("{path}.twist"), t, self.declared)?),
            (None, true) => Twist::Unknown,
            (Some(_), true) => return bad(path, "twist both given and marked indeterminate"),
            (None, false) => return bad(path, "twist missing; mark it as indeterminate if unknown"),
        };
        let inner = match (&d.inner, flagged("inner")) {
            (Some(i), false) => Inner::known(self.inner(&format!("{path}.inner"), i)?),
            (None, true) => match d.dim.or(implied_dim) {
                Some(n) if n > 0 => Inner::Unknown(n),
                _ => return bad(path, "an indeterminate inner needs a positive dim"),
            },
            (Some(_), true) => return bad(path, "inner both given and marked indeterminate"),
            (None, false) => return bad(path, "inner missing; mark it as indeterminate if unknown"),
        };
        if let Some(n) = d.dim.or(implied_dim) {
            if n != inner.dim() {
                return bad(path, format!("dim {n} does not match inner dimension {}", inner.dim()));
            }
        }
        Ok(SlopeOnePiece::new(twist, inner))
    }

    fn deco(&self, path: &str, d: &DecoDoc, slope: Slope, dim: u64) -> Result<Deco> {
        match d {
            DecoDoc::Latent(s) => {
                if !dim.is_multiple_of(2) {
                    return bad(path, "latent decoration on an odd-dimensional piece");
                }
                let o = self.slope_one(&format!("{path}.latent"), s, Some(dim / 2))?;
                Ok(Deco::Latent { twist: o.twist, inner: o.inner })
            }
            DecoDoc::Nested(inner) => {
                let c = slope.value();
                if c >= Q::new(1, 2) {
                    return bad(path, "nested decoration needs slope below 1/2");
                }
                let pre = c / (Q::from_integer(1) - c);
                let pre_dim = (Q::from_integer(1) - c) * Q::from_integer(dim as i64);
                if !pre_dim.is_integer() {
                    return bad(path, "nested decoration: preimage dimension is not an integer");
                }
                let d2 = self.deco(&format!("{path}.nested"), inner, Slope::from_q(pre)?, *pre_dim.numer() as u64)?;
                Ok(Deco::Nested(Box::new(d2)))
            }
        }
    }

    fn piece(&self, path: &str, p: &PieceDoc) -> Result<Piece> {
        let (n, d, m, deco) = match p {
            PieceDoc::Plain(n, d, m) => (*n, *d, *m, None),
            PieceDoc::Decorated(n, d, m, deco) => (*n, *d, *m, Some(deco)),
        };
        let s = ctx(path, Slope::new(n, d))?;
        let deco = match deco {
            Some(x) => Some(self.deco(path, x, s, m)?),
            None => None,
        };
        ctx(path, Piece::decorated(s, m, deco))
    }

    fn inner(&self, path: &str, i: &InnerDoc) -> Result<BreakProfile> {
        let tame = tame_blocks(&format!("{path}.tame"), &i.tame)?;
        let mut wild = Vec::new();
        for (k, p) in i.wild.iter().enumerate() {
            let piece = self.piece(&format!("{path}.wild[{k}]"), p)?;
            if piece.slope() >= Slope::one() {
                return bad(&format!("{path}.wild[{k}]"), "inner slopes must be below 1");
            }
            wild.push(piece);
        }
        Ok(BreakProfile::new(tame, wild))
    }

    fn ask(&self, path: &str, field: Field, a: &AskDoc) -> Result<AskPiece> {
        let co = |v: &[ScalarDoc], w: &str| -> Result<Vec<Scalar>> {
            v.iter().enumerate().map(|(i, s)| scalar(&format!("{path}.{w}[{i}]"), s)).collect()
        };
        let num = ctx(path, Poly::new(field, co(&a.num, "num")?))?;
        let den = ctx(path, Poly::new(field, co(&a.den, "den")?))?;
        Ok(AskPiece { chr: tame_char(&format!("{path}.char"), &a.char)?, f: ctx(path, RationalFunction::new(num, den))? })
    }

    fn boundary(&self, path: &str, place: Place, field: Field, b: &BoundaryDoc) -> Result<BoundaryRep> {
        let mut atoms = Vec::new();
        for (name, list, want_lt) in [("lt1", &b.lt1, true), ("gt1", &b.gt1, false)] {
            for (i, p) in list.iter().enumerate() {
                let path = format!("{path}.{name}[{i}]");
                let piece = self.piece(&path, p)?;
                if (piece.slope() < Slope::one()) != want_lt || piece.slope().is_one() {
                    return bad(&path, format!("slope {} does not belong in {name}", piece.slope()));
                }
                atoms.push(Atom::Wild(piece));
            }
        }
        for (i, o) in b.eq1.iter().enumerate() {
            atoms.push(Atom::One(self.slope_one(&format!("{path}.eq1[{i}]"), o, None)?));
        }
        let mut r = BoundaryRep::from_atoms(place, atoms);
        if !b.tame.is_empty() {
            let t = tame_blocks(&format!("{path}.tame"), &b.tame)?;
            r = r.direct_sum(&BoundaryRep::new(place, t, vec![], vec![]))?;
        }
        if !b.ask.is_empty() {
            let ask = b.ask.iter().enumerate().map(|(i, a)| self.ask(&format!("{path}.ask[{i}]"), field, a)).collect::<Result<Vec<_>>>()?;
            r = ctx(path, r.with_concrete(field, ask))?;
        }
        Ok(r)
    }

    fn singular(&self, path: &str, field: Field, s: &SingularDoc) -> Result<(Point, FiniteRep)> {
        let mut p = point(&format!("{path}.point"), &s.point, self.declared)?;
        if let Some(v) = &s.value {
            p = ctx(path, p.with_value(scalar(&format!("{path}.value"), v)?))?;
        }
        let tame = tame_blocks(&format!("{path}.tame"), &s.tame)?;
        let mut wild = Vec::new();
        for (i, &(n, d, m)) in s.wild.iter().enumerate() {
            let q = format!("{path}.wild[{i}]");
            wild.push(ctx(&q, Slope::new(n, d).and_then(|s| Piece::new(s, m)))?);
        }
        let mut aggs = Vec::new();
        for (i, a) in s.aggregate.iter().enumerate() {
            let single_slope = match a.slope {
                Some((n, d)) => Some(ctx(&format!("{path}.aggregate[{i}]"), Slope::new(n, d))?),
                None => None,
            };
            aggs.push(AggregatePiece { dim: a.dim, swan: a.swan, single_slope, inferred: a.inferred });
        }
        let mut r = FiniteRep::new(tame, wild, aggs);
        if r.is_empty() {
            return bad(path, "singular point without local data");
        }
        if !s.ask.is_empty() {
            let ask = s.ask.iter().enumerate().map(|(i, a)| self.ask(&format!("{path}.ask[{i}]"), field, a)).collect::<Result<Vec<_>>>()?;
            r = ctx(path, r.with_concrete(field, &p, ask))?;
        }
        Ok((p, r))
    }
}

pub fn field_of_document(doc: &ProfileDocument) -> Result<Field> {
    field_of(&doc.characteristic)
}

pub fn boundary_from_doc(doc: &ProfileDocument, place: Place) -> Result<BoundaryRep> {
    let field = field_of(&doc.characteristic)?;
    let declared: BTreeSet<String> = doc.generators.iter().cloned().collect();
    let dec = Decoder { declared: &declared };
    match place {
        Place::Zero => dec.boundary("at0", place, field, &doc.at0),
        Place::Infinity => dec.boundary("atInf", place, field, &doc.at_inf),
    }
}

pub fn singular_from_doc(doc: &ProfileDocument) -> Result<BTreeMap<Point, FiniteRep>> {
    let field = field_of(&doc.characteristic)?;
    let declared: BTreeSet<String> = doc.generators.iter().cloned().collect();
    let dec = Decoder { declared: &declared };
    let mut out = BTreeMap::new();
    for (i, s) in doc.singular.iter().enumerate() {
        let path = format!("singular[{i}]");
        let (p, r) = dec.singular(&path, field, s)?;
        if out.insert(p, r).is_some() {
            return bad(&path, "point listed twice");
        }
    }
    Ok(out)
}

pub fn to_profile(doc: &ProfileDocument) -> Result<GlobalProfile> {
    let field = field_of(&doc.characteristic)?;
    let declared: BTreeSet<String> = doc.generators.iter().cloned().collect();
    let at0 = boundary_from_doc(doc, Place::Zero)?;
    let at_inf = boundary_from_doc(doc, Place::Infinity)?;
    let singular = singular_from_doc(doc)?;
    let mut unresolved = Vec::new();
    for (i, u) in doc.indeterminate.iter().enumerate() {
        let p = match &u.point {
            Some(m) => Some(point(&format!("indeterminate[{i}].point"), m, &declared)?),
            None => None,
        };
        unresolved.push(UnresolvedMass { point: p, budget: u.budget, note: u.note.clone() });
    }
    Ok(GlobalProfile::new(field, at0, at_inf, singular)?
        .with_generic_rank(doc.generic_rank)
        .with_label(doc.label.clone())
        .with_unresolved(unresolved))
}

// ---- encoding ----

fn exp_map(p: &Point) -> ExpMap {
    p.exponents().clone()
}

fn char_doc(c: &TameChar) -> CharDoc {
    c.entries().iter().map(|(k, v)| (k.clone(), (*v.numer(), *v.denom()))).collect()
}

fn blocks_doc(b: &TameBlocks) -> Vec<(CharDoc, u64)> {
    let mut v = Vec::new();
    for (c, s, n) in b.iter() {
        for _ in 0..n {
            v.push((char_doc(c), s));
        }
    }
    v
}

fn scalar_doc(s: &Scalar) -> ScalarDoc {
    if s.is_integer() && i64::try_from(*s.numer()).is_ok() {
        ScalarDoc::Int(*s.numer() as i64)
    } else {
        ScalarDoc::Text(format!("{}/{}", s.numer(), s.denom()))
    }
}

fn slope_one_doc(o: &SlopeOnePiece, with_dim: bool) -> SlopeOneDoc {
    let mut d = SlopeOneDoc::default();
    match &o.twist {
        Twist::Known(p) => d.twist = Some(exp_map(p)),
        Twist::Unknown => d.indeterminate.push("twist".into()),
    }
    match &o.inner {
        Inner::Known(i) => d.inner = Some(inner_doc(i)),
        Inner::Unknown(_) => d.indeterminate.push("inner".into()),
    }
    if with_dim || o.inner.is_unknown() {
        d.dim = Some(o.dim());
    }
    d
}

fn deco_doc(d: &Deco) -> DecoDoc {
    match d {
        Deco::Latent { twist, inner } => {
            DecoDoc::Latent(slope_one_doc(&SlopeOnePiece::new(twist.clone(), inner.clone()), false))
        }
        Deco::Nested(x) => DecoDoc::Nested(Box::new(deco_doc(x))),
    }
}

fn piece_doc(p: &Piece) -> PieceDoc {
    let (n, d) = (p.slope().numer(), p.slope().denom());
    match p.deco() {
        None => PieceDoc::Plain(n, d, p.dim()),
        Some(x) => PieceDoc::Decorated(n, d, p.dim(), deco_doc(x)),
    }
}

fn inner_doc(i: &BreakProfile) -> InnerDoc {
    InnerDoc { tame: blocks_doc(i.tame_blocks()), wild: i.wild().iter().map(piece_doc).collect() }
}

fn ask_doc(a: &AskPiece) -> AskDoc {
    AskDoc {
        char: char_doc(&a.chr),
        num: a.f.numer().coeffs().iter().map(scalar_doc).collect(),
        den: a.f.denom().coeffs().iter().map(scalar_doc).collect(),
    }
}

pub fn boundary_doc(b: &BoundaryRep) -> BoundaryDoc {
    BoundaryDoc {
        tame: blocks_doc(b.tame()),
        lt1: b.lt1().map(piece_doc).collect(),
        eq1: b.eq1().iter().map(|o| slope_one_doc(o, true)).collect(),
        gt1: b.gt1().map(piece_doc).collect(),
        ask: b.concrete().map(|v| v.iter().map(ask_doc).collect()).unwrap_or_default(),
    }
}

pub fn singular_doc(p: &Point, r: &FiniteRep) -> SingularDoc {
    SingularDoc {
        point: exp_map(p),
        value: if p.is_identity() { None } else { p.value().map(scalar_doc) },
        tame: blocks_doc(r.tame()),
        wild: r.wild().iter().map(|w| (w.slope().numer(), w.slope().denom(), w.dim())).collect(),
        aggregate: r
            .aggregates()
            .iter()
            .map(|a| AggregateDoc {
                dim: a.dim,
                swan: a.swan,
                slope: a.single_slope.map(|s| (s.numer(), s.denom())),
                inferred: a.inferred,
            })
            .collect(),
        ask: r.concrete().map(|v| v.iter().map(ask_doc).collect()).unwrap_or_default(),
    }
}

fn characteristic_doc(f: Field) -> CharacteristicDoc {
    match f {
        Field::Rational => CharacteristicDoc::Named("generic".into()),
        Field::Prime(p) => CharacteristicDoc::Prime(p),
    }
}

/// Skeleton document over `field` with nothing in it.
pub fn empty_document(field: Field, generators: Vec<String>) -> ProfileDocument {
    ProfileDocument {
        characteristic: characteristic_doc(field),
        generators,
        label: String::new(),
        generic_rank: None,
        at0: BoundaryDoc::default(),
        at_inf: BoundaryDoc::default(),
        singular: Vec::new(),
        indeterminate: Vec::new(),
    }
}

pub fn from_profile(g: &GlobalProfile) -> ProfileDocument {
    ProfileDocument {
        characteristic: characteristic_doc(g.field()),
        generators: g.generators().into_iter().collect(),
        label: g.label().to_string(),
        generic_rank: g.generic_rank(),
        at0: boundary_doc(g.at0()),
        at_inf: boundary_doc(g.at_inf()),
        singular: g.singular().iter().map(|(p, r)| singular_doc(p, r)).collect(),
        indeterminate: g
            .unresolved()
            .iter()
            .map(|u| UnresolvedDoc { point: u.point.as_ref().map(exp_map), budget: u.budget, note: u.note.clone() })
            .collect(),
    }
}

pub fn to_json(doc: &ProfileDocument) -> String {
    serde_json::to_string_pretty(doc).expect("documents always serialize")
}

pub fn profile_to_json(g: &GlobalProfile) -> String {
    to_json(&from_profile(g))
}

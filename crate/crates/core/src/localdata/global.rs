use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use super::boundary::BoundaryRep;
use super::finite::FiniteRep;
use super::Place;
use crate::error::{invalid, Error, Result};
use crate::foundations::{Field, Mobius, Point};

/// Part of a computed profile whose location or shape the break data does not
/// determine. `budget` is its contribution to the Euler characteristic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct UnresolvedMass {
    pub point: Option<Point>,
    pub budget: u64,
    pub note: String,
}

/// Local data of a perverse sheaf on the torus: wild parts at 0 and
/// infinity, local monodromy at finitely many points, and optional extras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalProfile {
    field: Field,
    at0: BoundaryRep,
    at_inf: BoundaryRep,
    singular: BTreeMap<Point, FiniteRep>,
    generic_rank: Option<u64>,
    label: String,
    unresolved: Vec<UnresolvedMass>,
}

impl GlobalProfile {
    pub fn new(
        field: Field,
        at0: BoundaryRep,
        at_inf: BoundaryRep,
        singular: BTreeMap<Point, FiniteRep>,
    ) -> Result<Self> {
        at0.place().expect(Place::Zero)?;
        at_inf.place().expect(Place::Infinity)?;
        if !at0.is_totally_wild() || !at_inf.is_totally_wild() {
            return invalid("boundary data records only the wild part; tame blocks are not allowed");
        }
        let singular = singular.into_iter().filter(|(_, r)| !r.is_empty()).collect();
        Ok(GlobalProfile { field, at0, at_inf, singular, generic_rank: None, label: String::new(), unresolved: Vec::new() })
    }

    pub fn empty(field: Field) -> Self {
        GlobalProfile {
            field,
            at0: BoundaryRep::empty(Place::Zero),
            at_inf: BoundaryRep::empty(Place::Infinity),
            singular: BTreeMap::new(),
            generic_rank: None,
            label: String::new(),
            unresolved: Vec::new(),
        }
    }

    /// Skip-sheaf at a point: trivial rank-one local monodromy there, nothing else.
    pub fn delta(field: Field, at: Point) -> Self {
        let mut g = Self::empty(field);
        g.singular.insert(at, FiniteRep::new(super::TameBlocks::trivial(1), Vec::new(), Vec::new()));
        g.generic_rank = Some(0);
        g
    }

    pub fn with_generic_rank(mut self, r: Option<u64>) -> Self {
        self.generic_rank = r;
        self
    }

    pub fn with_label(mut self, l: impl Into<String>) -> Self {
        self.label = l.into();
        self
    }

    pub fn with_unresolved(mut self, mut u: Vec<UnresolvedMass>) -> Self {
        u.retain(|m| m.budget > 0);
        u.sort();
        self.unresolved = u;
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn at0(&self) -> &BoundaryRep {
        &self.at0
    }

    pub fn at_inf(&self) -> &BoundaryRep {
        &self.at_inf
    }

    pub fn singular(&self) -> &BTreeMap<Point, FiniteRep> {
        &self.singular
    }

    pub fn generic_rank(&self) -> Option<u64> {
        self.generic_rank
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn unresolved(&self) -> &[UnresolvedMass] {
        &self.unresolved
    }

    pub fn is_determinate(&self) -> bool {
        self.unresolved.is_empty()
    }

    /// No wild boundary data, no singular points: a Kummer class.
    pub fn is_zero(&self) -> bool {
        self.at0.is_empty() && self.at_inf.is_empty() && self.singular.is_empty() && self.unresolved.is_empty()
    }

    /// `Swan_0 + Swan_inf + sum over points of (dim + Swan)`, plus the Euler
    /// budget of any unresolved mass.
    pub fn euler(&self) -> u64 {
        self.at0.swan()
            + self.at_inf.swan()
            + self.singular.values().map(|r| r.dim() + r.swan()).sum::<u64>()
            + self.unresolved.iter().map(|u| u.budget).sum::<u64>()
    }

    pub fn support(&self) -> BTreeSet<Point> {
        self.singular.keys().cloned().collect()
    }

    /// Pullback along `x -> 1/x`.
    pub fn iota(&self) -> Result<GlobalProfile> {
        let mut singular = BTreeMap::new();
        for (s, r) in &self.singular {
            let mut r2 = r.clone();
            if let Some(c) = r.concrete() {
                r2.set_concrete(Some(c.iter().map(|a| a.pull(&Mobius::Invert)).collect::<Result<Vec<_>>>()?));
            }
            singular.insert(s.inv(), r2);
        }
        let unresolved = self
            .unresolved
            .iter()
            .map(|u| UnresolvedMass { point: u.point.as_ref().map(|p| p.inv()), ..u.clone() })
            .collect();
        Ok(GlobalProfile {
            field: self.field,
            at0: self.at_inf.iota()?,
            at_inf: self.at0.iota()?,
            singular,
            generic_rank: self.generic_rank,
            label: self.label.clone(),
            unresolved,
        }
        .with_unresolved_sorted())
    }

    fn with_unresolved_sorted(mut self) -> Self {
        self.unresolved.sort();
        self
    }

    /// Pushforward along `x -> lambda x`, i.e. convolution with the skip sheaf
    /// at `lambda`. Slope-1 twists scale by `lambda` at 0 and by `1/lambda` at
    /// infinity.
    pub fn translate(&self, lambda: &Point) -> Result<GlobalProfile> {
        let has_concrete = self.at0.concrete().is_some()
            || self.at_inf.concrete().is_some()
            || self.singular.values().any(|r| r.concrete().is_some());
        let pull = if has_concrete {
            let v = self
                .field
                .element(*lambda.value().ok_or_else(|| Error::SymbolicPointUnsupported(alloc::format!("{lambda}")))?)?;
            let inv = self.field.inv(&v).ok_or_else(|| Error::Validation("translation by 0".into()))?;
            Some(Mobius::Scale(inv))
        } else {
            None
        };
        let l = lambda.clone();
        let li = lambda.inv();
        let mut at0 = self.at0.map_twists(&|p: &Point| p.mul(&l));
        let mut at_inf = self.at_inf.map_twists(&|p: &Point| p.mul(&li));
        let mut singular = BTreeMap::new();
        for (s, r) in &self.singular {
            let mut r2 = r.clone();
            if let (Some(c), Some(m)) = (r.concrete(), &pull) {
                r2.set_concrete(Some(c.iter().map(|a| a.pull(m)).collect::<Result<Vec<_>>>()?));
            }
            singular.insert(s.mul(lambda), r2);
        }
        if let Some(m) = &pull {
            at0 = at0.map_concrete(m)?;
            at_inf = at_inf.map_concrete(m)?;
        }
        let unresolved = self
            .unresolved
            .iter()
            .map(|u| UnresolvedMass { point: u.point.as_ref().map(|p| p.mul(lambda)), ..u.clone() })
            .collect();
        Ok(GlobalProfile {
            field: self.field,
            at0,
            at_inf,
            singular,
            generic_rank: self.generic_rank,
            label: self.label.clone(),
            unresolved,
        }
        .with_unresolved_sorted())
    }

    /// Every generator name mentioned in points and twists.
    pub fn generators(&self) -> BTreeSet<String> {
        let names = core::cell::RefCell::new(BTreeSet::new());
        let note = |p: &Point| {
            names.borrow_mut().extend(p.generators().map(String::from));
            p.clone()
        };
        self.at0.map_twists(&note);
        self.at_inf.map_twists(&note);
        for s in self.singular.keys() {
            note(s);
        }
        for u in &self.unresolved {
            if let Some(p) = &u.point {
                note(p);
            }
        }
        names.into_inner()
    }
}

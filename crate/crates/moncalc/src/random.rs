//! Seeded generators of local data and profiles for property checks.

use std::collections::{BTreeMap, BTreeSet};

use moncalc_core::foundations::{Field, Point, Scalar, Slope, TameChar, Q};
use moncalc_core::localdata::{
    Atom, BoundaryRep, BreakProfile, Deco, FiniteRep, GlobalProfile, Inner, Piece, Place, SlopeOnePiece,
    TameBlocks, Twist,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed from `MONCALC_SEED`, default 0.
pub fn env_seed() -> u64 {
    std::env::var("MONCALC_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

const GENERATORS: [(&str, i128); 3] = [("a", 2), ("b", 3), ("c", 5)];

pub const SLOPES: [(i64, i64); 10] = [(1, 4), (1, 3), (1, 2), (2, 3), (3, 4), (1, 1), (3, 2), (2, 1), (5, 2), (3, 1)];

#[derive(Clone, Debug)]
pub struct GenOptions {
    pub max_pieces: usize,
    pub max_points: usize,
    /// Allow slope-1 pieces with known twist and inner.
    pub slope_one: bool,
    /// Latent decorations on slope-1/2 pieces.
    pub decorations: bool,
    /// Inners other than trivial semisimple ones.
    pub rich_inners: bool,
    /// Wild pieces at finite points.
    pub finite_wild: bool,
    /// Attach concrete values to points (`a = 2, b = 3, c = 5`).
    pub values: bool,
}

impl Default for GenOptions {
    fn default() -> Self {
        GenOptions {
            max_pieces: 2,
            max_points: 2,
            slope_one: true,
            decorations: true,
            rich_inners: true,
            finite_wild: true,
            values: true,
        }
    }
}

pub struct Gen {
    rng: ChaCha8Rng,
    pub opts: GenOptions,
}

impl Gen {
    pub fn new(seed: u64, opts: GenOptions) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), opts }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn slope_from(&mut self, pool: &[(i64, i64)]) -> Slope {
        let (n, d) = *pool.choose(&mut self.rng).expect("nonempty pool");
        Slope::new(n, d).unwrap()
    }

    pub fn point(&mut self) -> Point {
        let mut exps = Vec::new();
        let mut value = Scalar::from_integer(1);
        for (g, v) in GENERATORS {
            let e: i64 = self.rng.gen_range(-2..=2);
            exps.push((g.to_string(), e));
            value *= Scalar::from_integer(v).pow(e as i32);
        }
        let p = Point::from_exponents(exps).unwrap();
        if self.opts.values && !p.is_identity() {
            p.with_value(value).unwrap()
        } else {
            p
        }
    }

    pub fn tame_char(&mut self) -> TameChar {
        if self.rng.gen_bool(0.6) {
            return TameChar::trivial();
        }
        let k: i64 = self.rng.gen_range(1..=3);
        TameChar::new([("chi".to_string(), Q::new(k, 4))]).unwrap()
    }

    pub fn tame_blocks(&mut self, max_blocks: usize) -> TameBlocks {
        let mut b = TameBlocks::new();
        for _ in 0..self.rng.gen_range(1..=max_blocks.max(1)) {
            let c = self.tame_char();
            let s = self.rng.gen_range(1..=3);
            b.add(c, s, 1);
        }
        b
    }

    /// A piece of the given slope with dimension a small multiple of its denominator.
    pub fn piece(&mut self, s: Slope) -> Piece {
        let k = self.rng.gen_range(1..=2);
        Piece::new(s, s.denom() as u64 * k).unwrap()
    }

    pub fn inner(&mut self) -> BreakProfile {
        if !self.opts.rich_inners || self.rng.gen_bool(0.5) {
            return BreakProfile::tame(TameBlocks::trivial(self.rng.gen_range(1..=2)));
        }
        let tame = self.tame_blocks(2);
        let mut wild = Vec::new();
        if self.rng.gen_bool(0.4) {
            let s = self.slope_from(&[(1, 3), (1, 2), (2, 3)]);
            wild.push(self.piece(s));
        }
        BreakProfile::new(tame, wild)
    }

    pub fn slope_one_piece(&mut self) -> SlopeOnePiece {
        let t = self.point();
        let i = self.inner();
        SlopeOnePiece::new(Twist::Known(t), Inner::known(i))
    }

    /// One wild atom with slope from `pool`; slope 1 becomes a known slope-1
    /// piece, and slope 1/2 may carry a latent decoration.
    pub fn atom(&mut self, pool: &[(i64, i64)]) -> Atom {
        let s = self.slope_from(pool);
        if s.is_one() {
            return Atom::One(self.slope_one_piece());
        }
        if s == Slope::half() && self.opts.decorations && self.rng.gen_bool(0.5) {
            let o = self.slope_one_piece();
            let deco = Deco::Latent { twist: o.twist.clone(), inner: o.inner.clone() };
            return Atom::Wild(Piece::decorated(s, 2 * o.dim(), Some(deco)).unwrap());
        }
        Atom::Wild(self.piece(s))
    }

    fn pool(&self, excluded: &BTreeSet<Slope>) -> Vec<(i64, i64)> {
        SLOPES
            .iter()
            .copied()
            .filter(|&(n, d)| self.opts.slope_one || (n, d) != (1, 1))
            .filter(|&(n, d)| !excluded.contains(&Slope::new(n, d).unwrap()))
            .collect()
    }

    /// Totally wild boundary data avoiding the given slopes.
    pub fn boundary(&mut self, place: Place, excluded: &BTreeSet<Slope>) -> BoundaryRep {
        let pool = self.pool(excluded);
        let n = self.rng.gen_range(0..=self.opts.max_pieces);
        let atoms: Vec<Atom> = (0..n).filter(|_| !pool.is_empty()).map(|_| self.atom(&pool)).collect();
        BoundaryRep::from_atoms(place, atoms)
    }

    /// Boundary data with slopes restricted to `pool`, at least one piece.
    pub fn boundary_from(&mut self, place: Place, pool: &[(i64, i64)]) -> BoundaryRep {
        let n = self.rng.gen_range(1..=self.opts.max_pieces.max(1));
        let atoms: Vec<Atom> = (0..n).map(|_| self.atom(pool)).collect();
        BoundaryRep::from_atoms(place, atoms)
    }

    pub fn finite(&mut self) -> FiniteRep {
        let tame = if self.rng.gen_bool(0.7) { self.tame_blocks(2) } else { TameBlocks::new() };
        let mut wild = Vec::new();
        if self.opts.finite_wild && (tame.is_empty() || self.rng.gen_bool(0.4)) {
            let s = self.slope_from(&[(1, 2), (1, 1), (2, 1), (3, 2)]);
            wild.push(self.piece(s));
        }
        if tame.is_empty() && wild.is_empty() {
            return FiniteRep::new(TameBlocks::trivial(1), vec![], vec![]);
        }
        FiniteRep::new(tame, wild, vec![])
    }

    pub fn profile(&mut self, field: Field) -> GlobalProfile {
        loop {
            let at0 = self.boundary(Place::Zero, &BTreeSet::new());
            let at_inf = self.boundary(Place::Infinity, &BTreeSet::new());
            let mut singular = BTreeMap::new();
            for _ in 0..self.rng.gen_range(0..=self.opts.max_points) {
                let p = self.point();
                let f = self.finite();
                singular.insert(p, f);
            }
            let g = GlobalProfile::new(field, at0, at_inf, singular).unwrap();
            if !g.is_zero() {
                let rank = g.at0().dim().max(g.at_inf().dim()) + self.rng.gen_range(0..=2);
                return g.with_generic_rank(Some(rank));
            }
        }
    }
}

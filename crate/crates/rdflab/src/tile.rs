//! Tri-tiles and tile populations.
//!
//! A tri-tile over a square `ω` is `(I×ω₁, I×ω₂, I×ω₃)` where `I` is a
//! spatial dyadic interval of physical length `|ω|⁻¹` (that is, `N/|ω|`
//! grid points) and `ω₃` is the dual support of `ω`. The orders `<₁`, `<₂`
//! compare tiles through containment of `ω_j` (reversed) and `I`.

use crate::dyadic::{CircularInterval, DyadicInterval, DyadicSquare, SquareCollection};
use crate::error::{Error, Result};
use std::fmt;

/// Non-wrapping aligned range of spatial grid points `[start, start+len)`.
/// Physical length is `len / N`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SpatialInterval {
    pub start: usize,
    pub len: usize,
}

impl SpatialInterval {
    pub fn new(start: usize, len: usize) -> Self {
        Self { start, len }
    }

    pub fn end(&self) -> usize {
        self.start + self.len
    }

    pub fn contains_point(&self, m: usize) -> bool {
        m >= self.start && m < self.end()
    }

    pub fn is_subset_of(&self, other: &SpatialInterval) -> bool {
        self.start >= other.start && self.end() <= other.end()
    }

    pub fn grid_points(&self) -> std::ops::Range<usize> {
        self.start..self.end()
    }

    /// Physical length relative to grid size `n`.
    pub fn physical_len(&self, n: usize) -> f64 {
        self.len as f64 / n as f64
    }
}

impl fmt::Display for SpatialInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", self.start, self.end())
    }
}

/// Which of the two tile orders a structured family lives in: columns are
/// `≤₁`-trees, rows are `≤₂`-trees.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Orientation {
    Column,
    Row,
}

impl Orientation {
    pub fn axis(&self) -> u8 {
        match self {
            Orientation::Column => 1,
            Orientation::Row => 2,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::Column => write!(f, "column"),
            Orientation::Row => write!(f, "row"),
        }
    }
}

/// Tri-tile `(I×ω₁, I×ω₂, I×ω₃)` with `|I|·|ω| = 1` in physical units.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct TriTile {
    pub square: DyadicSquare,
    pub time: SpatialInterval,
    pub omega3: CircularInterval,
}

impl TriTile {
    /// The tile of `square` at spatial position `pos ∈ {0,…,|ω|-1}`.
    pub fn new(square: DyadicSquare, pos: usize) -> Self {
        let n = square.grid_size();
        let len = n / square.side();
        debug_assert!(pos < square.side());
        TriTile {
            square,
            time: SpatialInterval::new(pos * len, len),
            omega3: square.dual_support(),
        }
    }

    pub fn grid_size(&self) -> usize {
        self.square.grid_size()
    }

    pub fn omega_j(&self, axis: u8) -> DyadicInterval {
        match axis {
            1 => self.square.omega1,
            2 => self.square.omega2,
            _ => panic!("axis must be 1 or 2"),
        }
    }

    /// `self ≤_j other`: `ω_j(self) ⊇ ω_j(other)` and `I_self ⊆ I_other`,
    /// or the tiles are equal.
    pub fn le(&self, other: &TriTile, axis: u8) -> bool {
        if self == other {
            return true;
        }
        other.omega_j(axis).is_subset_of(&self.omega_j(axis))
            && self.time.is_subset_of(&other.time)
    }

    /// Strict comparability `self <_j other` in the paper's sense (which for
    /// distinct tiles with identical `j`-tiles holds both ways).
    pub fn lt(&self, other: &TriTile, axis: u8) -> bool {
        other.omega_j(axis).is_subset_of(&self.omega_j(axis))
            && self.time.is_subset_of(&other.time)
    }

    /// The `j`-th tile as a time-frequency rectangle `I × ω_j`; two such
    /// rectangles of area one intersect iff the tri-tiles are comparable
    /// under `≤_j`.
    pub fn tf_rectangle(&self, axis: u8) -> (SpatialInterval, DyadicInterval) {
        (self.time, self.omega_j(axis))
    }
}

impl fmt::Display for TriTile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I={} ω={}", self.time, self.square)
    }
}

/// Spatial restriction for tile enumeration.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpatialWindow {
    All,
    Range(SpatialInterval),
}

/// Indexed tile population over a square collection. Sub-populations are
/// passed around as index slices into `tiles`.
#[derive(Clone, Debug)]
pub struct TilePopulation {
    omega: SquareCollection,
    tiles: Vec<TriTile>,
}

impl TilePopulation {
    /// One tri-tile per square and per spatial dyadic interval of physical
    /// length `|ω|⁻¹` inside the window; the full period gives `Σ_ω |ω|`
    /// tiles.
    pub fn build(omega: &SquareCollection, window: SpatialWindow) -> Self {
        let mut tiles = Vec::new();
        for sq in omega.iter() {
            for pos in 0..sq.side() {
                let t = TriTile::new(*sq, pos);
                let keep = match window {
                    SpatialWindow::All => true,
                    SpatialWindow::Range(r) => t.time.is_subset_of(&r),
                };
                if keep {
                    tiles.push(t);
                }
            }
        }
        TilePopulation {
            omega: omega.clone(),
            tiles,
        }
    }

    /// Population from explicit tiles (used by tests and sub-instances).
    /// Every tile's square must belong to `omega`.
    pub fn from_tiles(omega: &SquareCollection, tiles: Vec<TriTile>) -> Result<Self> {
        for t in &tiles {
            if !omega.squares().contains(&t.square) {
                return Err(Error::GridMismatch(format!(
                    "tile {} over a square not in the collection",
                    t
                )));
            }
        }
        Ok(TilePopulation {
            omega: omega.clone(),
            tiles,
        })
    }

    pub fn collection(&self) -> &SquareCollection {
        &self.omega
    }

    pub fn grid_size(&self) -> usize {
        self.omega.grid_size()
    }

    pub fn tiles(&self) -> &[TriTile] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn tile(&self, idx: usize) -> &TriTile {
        &self.tiles[idx]
    }

    pub fn all_indices(&self) -> Vec<usize> {
        (0..self.tiles.len()).collect()
    }

    /// Squares appearing among the given tiles (the collection `Ω(P)`).
    pub fn squares_of(&self, subset: &[usize]) -> Vec<DyadicSquare> {
        let mut seen = Vec::new();
        for &i in subset {
            let sq = self.tiles[i].square;
            if !seen.contains(&sq) {
                seen.push(sq);
            }
        }
        seen
    }
}

/// A structured family extracted by a stopping time: a top tile index, the
/// member indices (top included), and the orientation in which every member
/// sits below the top.
#[derive(Clone, Debug, PartialEq)]
pub struct TreeFamily {
    pub orientation: Orientation,
    pub top: usize,
    pub members: Vec<usize>,
}

impl TreeFamily {
    /// Checks the defining property `P ≤_j top` for every member.
    pub fn validate(&self, pop: &TilePopulation) -> Result<()> {
        let top = pop.tile(self.top);
        if !self.members.contains(&self.top) {
            return Err(Error::BadFamily("top is not among the members".into()));
        }
        for &m in &self.members {
            if !pop.tile(m).le(top, self.orientation.axis()) {
                return Err(Error::BadFamily(format!(
                    "member {} is not ≤_{} the top {}",
                    pop.tile(m),
                    self.orientation.axis(),
                    top
                )));
            }
        }
        Ok(())
    }
}

/// Mutual-disjointness check for a family list: pairwise disjoint tile
/// sets, and same-orientation tops pairwise non-comparable.
pub fn families_mutually_disjoint(pop: &TilePopulation, fams: &[TreeFamily]) -> bool {
    let mut seen = std::collections::HashSet::new();
    for f in fams {
        for &m in &f.members {
            if !seen.insert(m) {
                return false;
            }
        }
    }
    for i in 0..fams.len() {
        for j in (i + 1)..fams.len() {
            if fams[i].orientation != fams[j].orientation {
                continue;
            }
            let axis = fams[i].orientation.axis();
            let a = pop.tile(fams[i].top);
            let b = pop.tile(fams[j].top);
            if a.lt(b, axis) || b.lt(a, axis) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::DyadicInterval;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn square(k: u32, nx: usize, ny: usize, l: u32) -> DyadicSquare {
        DyadicSquare::new(
            DyadicInterval::new(k, nx, l).unwrap(),
            DyadicInterval::new(k, ny, l).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn tile_counts_are_forced() {
        let l = 4;
        let coll = SquareCollection::new(vec![square(2, 0, 0, l)], l).unwrap();
        let pop = TilePopulation::build(&coll, SpatialWindow::All);
        assert_eq!(pop.len(), 4);

        let coll = SquareCollection::empty(l);
        let pop = TilePopulation::build(&coll, SpatialWindow::All);
        assert!(pop.is_empty());

        let coll =
            SquareCollection::new(vec![square(1, 0, 0, l), square(3, 1, 1, l)], l).unwrap();
        let pop = TilePopulation::build(&coll, SpatialWindow::All);
        assert_eq!(pop.len(), 2 + 8);
    }

    #[test]
    fn tile_geometry() {
        let l = 4;
        let sq = square(2, 0, 0, l); // side 4, |I| = 4 grid points
        let t = TriTile::new(sq, 2);
        assert_eq!(t.time, SpatialInterval::new(8, 4));
        // |I_P|·|ω| = 1 in physical units
        assert!((t.time.physical_len(16) * sq.side() as f64 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn order_examples() {
        let l = 4;
        // P: ω₁=[0,4) (side 4, |I|=4 pts), Q: ω₁=[0,2) (side 2, |I|=8 pts)
        let p = TriTile::new(square(2, 0, 0, l), 0); // I=[0,4)
        let q = TriTile::new(square(1, 0, 2, l), 0); // I=[0,8)
        assert!(p.le(&q, 1));
        assert!(!q.le(&p, 1));
        assert!(p.le(&p, 1) && p.le(&p, 2));
        // disjoint spatial intervals
        let q2 = TriTile::new(square(1, 0, 2, l), 1); // I=[8,16)
        assert!(!p.le(&q2, 1));
    }

    fn random_population(seed: u64, max_tiles: usize) -> TilePopulation {
        let mut rng = StdRng::seed_from_u64(seed);
        let l = 5u32;
        let mut squares: Vec<DyadicSquare> = Vec::new();
        for _ in 0..40 {
            let k = rng.gen_range(0..=l - 1);
            let count = 1usize << (l - k);
            let cand = square(k, rng.gen_range(0..count), rng.gen_range(0..count), l);
            if squares
                .iter()
                .all(|s| s.is_disjoint_from(&cand).unwrap())
            {
                squares.push(cand);
            }
        }
        let coll = SquareCollection::new(squares, l).unwrap();
        let pop = TilePopulation::build(&coll, SpatialWindow::All);
        let mut tiles = pop.tiles().to_vec();
        while tiles.len() > max_tiles {
            let i = rng.gen_range(0..tiles.len());
            tiles.swap_remove(i);
        }
        TilePopulation::from_tiles(&coll, tiles).unwrap()
    }

    #[test]
    fn order_is_partial_order_on_first_tiles() {
        // Reflexive, antisymmetric up to equal j-tiles, transitive.
        for seed in 0..5u64 {
            let pop = random_population(seed, 200);
            let tiles = pop.tiles();
            for a in tiles {
                assert!(a.le(a, 1));
            }
            for a in tiles {
                for b in tiles {
                    for axis in [1, 2] {
                        if a.le(b, axis) && b.le(a, axis) {
                            assert_eq!(a.tf_rectangle(axis), b.tf_rectangle(axis));
                        }
                        for c in tiles {
                            if a.le(b, axis) && b.le(c, axis) {
                                assert!(a.le(c, axis), "transitivity failed");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn comparability_is_rectangle_intersection() {
        let pop = random_population(7, 120);
        let n = pop.grid_size();
        for a in pop.tiles() {
            for b in pop.tiles() {
                for axis in [1u8, 2u8] {
                    let (ia, wa) = a.tf_rectangle(axis);
                    let (ib, wb) = b.tf_rectangle(axis);
                    // rectangle intersection in physical units
                    let time_inter = ia.start.max(ib.start) < ia.end().min(ib.end());
                    let freq_inter = wa.start().max(wb.start()) < wa.end().min(wb.end());
                    let inter = time_inter && freq_inter;
                    let comparable = a.le(b, axis) || b.le(a, axis);
                    assert_eq!(inter, comparable, "N={n} a={a} b={b} axis={axis}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn window_restriction_is_consistent(seed in 0u64..20) {
            let pop = random_population(seed, 64);
            let coll = pop.collection().clone();
            let half = SpatialInterval::new(0, pop.grid_size() / 2);
            let windowed = TilePopulation::build(&coll, SpatialWindow::Range(half));
            for t in windowed.tiles() {
                prop_assert!(t.time.is_subset_of(&half));
            }
            let full = TilePopulation::build(&coll, SpatialWindow::All);
            let expect = full.tiles().iter().filter(|t| t.time.is_subset_of(&half)).count();
            prop_assert_eq!(windowed.len(), expect);
        }
    }
}

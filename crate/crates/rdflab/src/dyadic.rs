//! Dyadic geometry on the frequency circle `Z_N`, `N = 2^L`.
//!
//! Frequency intervals are half-open `[n·2^k, (n+1)·2^k)` with integer
//! endpoints; two dyadic intervals are nested or disjoint, never partially
//! overlapping. Squares are products of two dyadic intervals of equal
//! length. A `SquareCollection` is a pairwise-disjoint family of squares,
//! validated at construction.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::{BufRead, Write};

/// Half-open dyadic frequency interval `[n·2^k, (n+1)·2^k)` inside `[0, N)`,
/// `N = 2^L`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DyadicInterval {
    l: u32,
    k: u32,
    n: usize,
}

/// Outcome of comparing two dyadic intervals. Partial overlap is
/// unrepresentable.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IntervalRelation {
    Disjoint,
    Equal,
    FirstInsideSecond,
    SecondInsideFirst,
}

impl DyadicInterval {
    /// `[n·2^k, (n+1)·2^k)` on `Z_{2^L}`. Requires `0 ≤ k ≤ L` and
    /// `0 ≤ n < 2^{L-k}`.
    pub fn new(k: u32, n: usize, l: u32) -> Result<Self> {
        if k > l || n >= (1usize << (l - k)) {
            return Err(Error::InvalidInterval { k, n, l });
        }
        Ok(Self { l, k, n })
    }

    pub fn grid_exponent(&self) -> u32 {
        self.l
    }

    pub fn grid_size(&self) -> usize {
        1 << self.l
    }

    pub fn scale(&self) -> u32 {
        self.k
    }

    pub fn position(&self) -> usize {
        self.n
    }

    pub fn start(&self) -> usize {
        self.n << self.k
    }

    pub fn end(&self) -> usize {
        (self.n + 1) << self.k
    }

    pub fn len(&self) -> usize {
        1 << self.k
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, xi: usize) -> bool {
        xi >= self.start() && xi < self.end()
    }

    /// Dyadic trichotomy: exactly one of disjoint / equal / nested.
    pub fn relation(&self, other: &DyadicInterval) -> Result<IntervalRelation> {
        if self.l != other.l {
            return Err(Error::GridMismatch(format!(
                "interval grids differ: L={} vs L={}",
                self.l, other.l
            )));
        }
        Ok(if self.k == other.k {
            if self.n == other.n {
                IntervalRelation::Equal
            } else {
                IntervalRelation::Disjoint
            }
        } else if self.k < other.k {
            if self.n >> (other.k - self.k) == other.n {
                IntervalRelation::FirstInsideSecond
            } else {
                IntervalRelation::Disjoint
            }
        } else if other.n >> (self.k - other.k) == self.n {
            IntervalRelation::SecondInsideFirst
        } else {
            IntervalRelation::Disjoint
        })
    }

    pub fn is_disjoint_from(&self, other: &DyadicInterval) -> Result<bool> {
        Ok(self.relation(other)? == IntervalRelation::Disjoint)
    }

    /// Containment `self ⊆ other` (equality included).
    pub fn is_subset_of(&self, other: &DyadicInterval) -> bool {
        self.l == other.l
            && self.k <= other.k
            && (self.n >> (other.k - self.k)) == other.n
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", self.start(), self.end())
    }
}

/// A possibly wrapped half-open arc `[start, start+len) mod N` on the
/// frequency circle. `len = N` denotes the full circle.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CircularInterval {
    pub grid: usize,
    pub start: usize,
    pub len: usize,
}

impl CircularInterval {
    pub fn new(grid: usize, start: usize, len: usize) -> Self {
        assert!(len <= grid, "arc longer than the circle");
        Self {
            grid,
            start: start % grid,
            len,
        }
    }

    pub fn full(grid: usize) -> Self {
        Self {
            grid,
            start: 0,
            len: grid,
        }
    }

    pub fn contains(&self, xi: usize) -> bool {
        ((xi + self.grid - self.start) % self.grid) < self.len
    }

    pub fn frequencies(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).map(move |t| (self.start + t) % self.grid)
    }
}

impl From<DyadicInterval> for CircularInterval {
    fn from(i: DyadicInterval) -> Self {
        CircularInterval::new(i.grid_size(), i.start(), i.len())
    }
}

impl fmt::Display for CircularInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})%{}", self.start, self.start + self.len, self.grid)
    }
}

/// Dyadic frequency square `ω = ω₁ × ω₂` with `|ω₁| = |ω₂|`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DyadicSquare {
    pub omega1: DyadicInterval,
    pub omega2: DyadicInterval,
}

impl DyadicSquare {
    pub fn new(omega1: DyadicInterval, omega2: DyadicInterval) -> Result<Self> {
        if omega1.grid_exponent() != omega2.grid_exponent() {
            return Err(Error::GridMismatch(
                "square sides live on different grids".into(),
            ));
        }
        if omega1.len() != omega2.len() {
            return Err(Error::GridMismatch(format!(
                "not a square: |ω₁|={} but |ω₂|={}",
                omega1.len(),
                omega2.len()
            )));
        }
        Ok(Self { omega1, omega2 })
    }

    /// Side length `|ω|`.
    pub fn side(&self) -> usize {
        self.omega1.len()
    }

    pub fn grid_size(&self) -> usize {
        self.omega1.grid_size()
    }

    /// Disjointness as subsets of `[0,N)²`: holds iff the sides are
    /// disjoint in at least one coordinate (dyadic trichotomy per
    /// coordinate).
    pub fn is_disjoint_from(&self, other: &DyadicSquare) -> Result<bool> {
        Ok(self.omega1.is_disjoint_from(&other.omega1)?
            || self.omega2.is_disjoint_from(&other.omega2)?)
    }

    /// Containment `self ⊆ other` as subsets of the frequency plane.
    pub fn is_subset_of(&self, other: &DyadicSquare) -> bool {
        self.omega1.is_subset_of(&other.omega1) && self.omega2.is_subset_of(&other.omega2)
    }

    /// Dual frequency support `ω₃`: the length-`4|ω|` cyclic interval
    /// centred at the reflected centre `c = -a₁-a₂-|ω|+1 mod N`, where
    /// `ω_i = [a_i, a_i+|ω|)`. Contains the cyclic sum-set
    /// `{-ξ-η : ξ ∈ ω₁, η ∈ ω₂}`. When `4|ω| > N` the whole circle is
    /// returned.
    pub fn dual_support(&self) -> CircularInterval {
        let n = self.grid_size();
        let side = self.side();
        if 4 * side > n {
            return CircularInterval::full(n);
        }
        let c = reflected_center(self, n);
        CircularInterval::new(n, (c + n - 2 * side) % n, 4 * side)
    }
}

/// `c = -a₁ - a₂ - |ω| + 1 mod N`, the midpoint of the sum-set `-ω₁-ω₂`.
pub(crate) fn reflected_center(sq: &DyadicSquare, n: usize) -> usize {
    let a1 = sq.omega1.start();
    let a2 = sq.omega2.start();
    let side = sq.side();
    // compute (-a1 - a2 - side + 1) mod n with unsigned arithmetic
    let total = (a1 + a2 + side - 1) % n;
    (n - total) % n
}

impl fmt::Display for DyadicSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}×{}", self.omega1, self.omega2)
    }
}

/// Pairwise-disjoint ordered family of dyadic squares on a common grid.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SquareCollection {
    squares: Vec<DyadicSquare>,
    grid_exponent: u32,
}

impl SquareCollection {
    /// Validates pairwise disjointness; on failure reports the first
    /// overlapping pair.
    pub fn new(squares: Vec<DyadicSquare>, grid_exponent: u32) -> Result<Self> {
        for sq in &squares {
            if sq.grid_size() != 1usize << grid_exponent {
                return Err(Error::GridMismatch(format!(
                    "square {} does not live on Z_{}",
                    sq,
                    1usize << grid_exponent
                )));
            }
        }
        for i in 0..squares.len() {
            for j in (i + 1)..squares.len() {
                if !squares[i].is_disjoint_from(&squares[j])? {
                    return Err(Error::OverlappingSquares {
                        a: squares[i].to_string(),
                        b: squares[j].to_string(),
                        ia: i,
                        ib: j,
                    });
                }
            }
        }
        Ok(Self {
            squares,
            grid_exponent,
        })
    }

    pub fn empty(grid_exponent: u32) -> Self {
        Self {
            squares: Vec::new(),
            grid_exponent,
        }
    }

    pub fn grid_exponent(&self) -> u32 {
        self.grid_exponent
    }

    pub fn grid_size(&self) -> usize {
        1 << self.grid_exponent
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    pub fn squares(&self) -> &[DyadicSquare] {
        &self.squares
    }

    pub fn iter(&self) -> std::slice::Iter<'_, DyadicSquare> {
        self.squares.iter()
    }
}

#[derive(Serialize, Deserialize)]
struct CollectionHeader {
    #[serde(rename = "L")]
    l: u32,
}

#[derive(Serialize, Deserialize)]
struct SquareRecord {
    k: u32,
    nx: usize,
    ny: usize,
}

/// Writes the line-delimited collection format: header `{"L":…}` followed
/// by one `{"k":…,"nx":…,"ny":…}` record per square. Round-trips
/// bit-exactly.
pub fn write_collection<W: Write>(w: &mut W, coll: &SquareCollection) -> Result<()> {
    let header = CollectionHeader {
        l: coll.grid_exponent(),
    };
    writeln!(
        w,
        "{}",
        serde_json::to_string(&header).map_err(|e| Error::Parse(e.to_string()))?
    )?;
    for sq in coll.iter() {
        let rec = SquareRecord {
            k: sq.omega1.scale(),
            nx: sq.omega1.position(),
            ny: sq.omega2.position(),
        };
        writeln!(
            w,
            "{}",
            serde_json::to_string(&rec).map_err(|e| Error::Parse(e.to_string()))?
        )?;
    }
    Ok(())
}

pub fn read_collection<R: BufRead>(r: &mut R) -> Result<SquareCollection> {
    let mut lines = r.lines();
    let header_line = lines
        .next()
        .ok_or_else(|| Error::Parse("empty collection file".into()))??;
    let header: CollectionHeader =
        serde_json::from_str(&header_line).map_err(|e| Error::Parse(e.to_string()))?;
    let mut squares = Vec::new();
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: SquareRecord =
            serde_json::from_str(&line).map_err(|e| Error::Parse(e.to_string()))?;
        let omega1 = DyadicInterval::new(rec.k, rec.nx, header.l)?;
        let omega2 = DyadicInterval::new(rec.k, rec.ny, header.l)?;
        squares.push(DyadicSquare::new(omega1, omega2)?);
    }
    SquareCollection::new(squares, header.l)
}

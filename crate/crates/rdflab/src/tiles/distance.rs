//! Partition of a tile population by distance to the complement of an
//! exceptional set: tiles whose interval escapes the set, then dyadic
//! distance bins for the fully covered ones.

use crate::operators::Mask;
use crate::tile::TilePopulation;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct DistancePartition {
    /// Tiles with `I_P ⊄ E`.
    pub small: Vec<usize>,
    /// Bin `d ≥ 1` holds tiles with `1 + dist(I_P, E^c)/|I_P| ∈ [2^{d-1}, 2^d)`.
    pub bins: BTreeMap<u32, Vec<usize>>,
    /// Tiles inside a full-torus exceptional set (distance undefined).
    pub infinite: Vec<usize>,
}

impl DistancePartition {
    pub fn total(&self) -> usize {
        self.small.len()
            + self.infinite.len()
            + self.bins.values().map(|v| v.len()).sum::<usize>()
    }
}

/// Circular distance (in grid units) from each point to the nearest point
/// outside the mask; `None` when the mask covers everything.
fn distance_to_complement(mask: &Mask) -> Option<Vec<usize>> {
    let n = mask.len();
    if mask.count() == n {
        return None;
    }
    let big = 2 * n;
    let mut dist = vec![big; n];
    for m in 0..n {
        if !mask.contains(m) {
            dist[m] = 0;
        }
    }
    // two circular sweeps settle shortest circular distances
    for _ in 0..2 {
        for m in 0..n {
            let prev = dist[(m + n - 1) % n].saturating_add(1);
            if prev < dist[m] {
                dist[m] = prev;
            }
        }
        for m in (0..n).rev() {
            let next = dist[(m + 1) % n].saturating_add(1);
            if next < dist[m] {
                dist[m] = next;
            }
        }
    }
    Some(dist)
}

/// Exact partition: `small` for escaping tiles, dyadic bins by
/// `1 + dist(I_P, E^c)/|I_P|` for covered tiles.
pub fn partition_by_distance(
    pop: &TilePopulation,
    subset: &[usize],
    exceptional: &Mask,
) -> DistancePartition {
    assert_eq!(pop.grid_size(), exceptional.len(), "grid mismatch");
    let dist = distance_to_complement(exceptional);
    let mut small = Vec::new();
    let mut bins: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    let mut infinite = Vec::new();
    for &i in subset {
        let tile = pop.tile(i);
        let covered = tile.time.grid_points().all(|m| exceptional.contains(m));
        if !covered {
            small.push(i);
            continue;
        }
        match &dist {
            None => infinite.push(i),
            Some(d) => {
                let tile_dist = tile
                    .time
                    .grid_points()
                    .map(|m| d[m])
                    .min()
                    .expect("non-empty interval") as f64;
                let ratio = 1.0 + tile_dist / tile.time.len as f64;
                let bin = (ratio.log2().floor() as i64 + 1).max(1) as u32;
                bins.entry(bin).or_default().push(i);
            }
        }
    }
    DistancePartition {
        small,
        bins,
        infinite,
    }
}

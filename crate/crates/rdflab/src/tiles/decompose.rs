//! Stopping-time decompositions: the single-axis splits controlled by
//! `Size¹`/`Size²`, the mixed column/row split controlled by `Size³`, and
//! the global level-indexed decomposition that iterates them.

use crate::error::{Error, Result};
use crate::signal::Signal;
use crate::spectral::VectorFunction;
use crate::tile::{Orientation, TilePopulation, TreeFamily};
use crate::tiles::coefficients::{coefficients, TileCoefficients};
use crate::tiles::energy::{energy12, energy3, EnergyCertificate, EnergyMode, LevelGrid};
use crate::tiles::size::{size_axis, Size3Engine};
use std::collections::BTreeMap;

/// Result of a single-axis decomposition: the below-threshold remainder and
/// the extracted mutually disjoint families.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub low: Vec<usize>,
    pub families: Vec<TreeFamily>,
    pub threshold: f64,
}

fn orientation_for(axis: u8) -> Orientation {
    match axis {
        1 => Orientation::Column,
        2 => Orientation::Row,
        _ => panic!("axis must be 1 or 2"),
    }
}

/// Stopping-time extraction on a stock of heavy tiles, one axis: among the
/// `<_j`-maximal tiles pick the one with minimal `inf I`, then maximal
/// `sup ω_j`, then smallest other-axis position; take the maximal
/// column/row below it; repeat. The resulting families are mutually
/// disjoint.
pub(crate) fn extract_families_axis(
    pop: &TilePopulation,
    mut stock: Vec<usize>,
    axis: u8,
) -> Vec<TreeFamily> {
    let mut families = Vec::new();
    while !stock.is_empty() {
        // maximal under <_axis: nothing in the stock strictly above
        let mut best: Option<usize> = None;
        for &cand in &stock {
            let c = pop.tile(cand);
            let strictly_below_something = stock.iter().any(|&o| {
                o != cand && {
                    let t = pop.tile(o);
                    c.lt(t, axis) && !t.lt(c, axis)
                }
            });
            if strictly_below_something {
                continue;
            }
            best = Some(match best {
                None => cand,
                Some(b) => {
                    let bt = pop.tile(b);
                    let key_c = (
                        c.time.start,
                        std::cmp::Reverse(c.omega_j(axis).end()),
                        c.omega_j(3 - axis).start(),
                    );
                    let key_b = (
                        bt.time.start,
                        std::cmp::Reverse(bt.omega_j(axis).end()),
                        bt.omega_j(3 - axis).start(),
                    );
                    if key_c < key_b {
                        cand
                    } else {
                        b
                    }
                }
            });
        }
        let top = best.expect("non-empty stock has a maximal tile");
        let top_tile = *pop.tile(top);
        let (members, rest): (Vec<usize>, Vec<usize>) = stock
            .into_iter()
            .partition(|&i| pop.tile(i).le(&top_tile, axis));
        families.push(TreeFamily {
            orientation: orientation_for(axis),
            top,
            members,
        });
        stock = rest;
    }
    families
}

fn decompose_axis(
    pop: &TilePopulation,
    coeffs: &TileCoefficients,
    subset: &[usize],
    axis: u8,
    n: i64,
    energy: f64,
) -> Result<Decomposition> {
    let size = size_axis(coeffs, subset, axis);
    let cap = 2f64.powi(-(n as i32)) * energy;
    if size > cap {
        return Err(Error::Precondition(format!(
            "Size^{axis} = {size} exceeds 2^-n·E = {cap} (n = {n})"
        )));
    }
    let threshold = 2f64.powi(-(n as i32) - 1) * energy;
    let c = coeffs.axis(axis);
    let (stock, low): (Vec<usize>, Vec<usize>) =
        subset.iter().copied().partition(|&i| c[i] > threshold);
    let families = extract_families_axis(pop, stock, axis);
    Ok(Decomposition {
        low,
        families,
        threshold,
    })
}

/// Splits off the columns carrying `Size¹` above `2^{-n-1}·E₁`; the
/// remainder satisfies `Size¹ ≤ 2^{-n-1}·E₁`. Requires `Size¹ ≤ 2^{-n}·E₁`.
pub fn decompose_size1(
    pop: &TilePopulation,
    coeffs: &TileCoefficients,
    subset: &[usize],
    n: i64,
    energy1: f64,
) -> Result<Decomposition> {
    decompose_axis(pop, coeffs, subset, 1, n, energy1)
}

/// The mirrored row split for `Size²`.
pub fn decompose_size2(
    pop: &TilePopulation,
    coeffs: &TileCoefficients,
    subset: &[usize],
    n: i64,
    energy2: f64,
) -> Result<Decomposition> {
    decompose_axis(pop, coeffs, subset, 2, n, energy2)
}

/// Mixed-family extraction for `Size³`-type thresholds: candidate tops are
/// scanned over both orientations; the witness with the largest `|I_top|`
/// is extracted first (then minimal `inf I`, maximal `sup ω_j`, columns
/// before rows, then square position). Largest-first guarantees that for
/// each fixed square the extracted top intervals are pairwise disjoint.
pub(crate) fn extract_mixed_families(
    engine: &Size3Engine<'_>,
    mut stock: Vec<usize>,
    threshold: f64,
    strict: bool,
) -> (Vec<usize>, Vec<TreeFamily>) {
    let pop = engine.population();
    let mut families = Vec::new();
    loop {
        let mut best: Option<(usize, u8)> = None;
        for &cand in &stock {
            for axis in [1u8, 2u8] {
                let v = engine.local_value(cand, axis, &stock);
                let admissible = if strict { v > threshold } else { v >= threshold };
                if !admissible {
                    continue;
                }
                best = Some(match best {
                    None => (cand, axis),
                    Some((b, b_axis)) => {
                        let c = pop.tile(cand);
                        let bt = pop.tile(b);
                        let key_c = (
                            std::cmp::Reverse(c.time.len),
                            c.time.start,
                            std::cmp::Reverse(c.omega_j(axis).end()),
                            axis,
                            c.square.omega1.start(),
                            c.square.omega2.start(),
                        );
                        let key_b = (
                            std::cmp::Reverse(bt.time.len),
                            bt.time.start,
                            std::cmp::Reverse(bt.omega_j(b_axis).end()),
                            b_axis,
                            bt.square.omega1.start(),
                            bt.square.omega2.start(),
                        );
                        if key_c < key_b {
                            (cand, axis)
                        } else {
                            (b, b_axis)
                        }
                    }
                });
            }
        }
        let Some((top, axis)) = best else { break };
        let top_tile = *pop.tile(top);
        let (members, rest): (Vec<usize>, Vec<usize>) = stock
            .into_iter()
            .partition(|&i| pop.tile(i).le(&top_tile, axis));
        families.push(TreeFamily {
            orientation: orientation_for(axis),
            top,
            members,
        });
        stock = rest;
    }
    (stock, families)
}

/// Mixed decomposition at level `n` with base `γ = 2^{r₀/r'}`: requires
/// `Size³ ≤ γ^{-n}·E₃`; extracts families whose defining value exceeds
/// `γ^{-n-1}·E₃` until none remains.
pub fn decompose_size3(
    engine: &Size3Engine<'_>,
    subset: &[usize],
    n: i64,
    energy3_value: f64,
    r0: f64,
) -> Result<Decomposition> {
    let gamma = 2f64.powf(r0 / engine.r_prime);
    let size = engine.size3(subset);
    let cap = gamma.powi(-(n as i32)) * energy3_value;
    if size > cap {
        return Err(Error::Precondition(format!(
            "Size³ = {size} exceeds γ^-n·E₃ = {cap} (n = {n})"
        )));
    }
    let threshold = gamma.powi(-(n as i32) - 1) * energy3_value;
    let (low, families) = extract_mixed_families(engine, subset.to_vec(), threshold, true);
    Ok(Decomposition {
        low,
        families,
        threshold,
    })
}

/// One level of the global decomposition.
#[derive(Clone, Debug, Default)]
pub struct LevelBucket {
    pub column_families: Vec<TreeFamily>,
    pub row_families: Vec<TreeFamily>,
}

impl LevelBucket {
    pub fn column_tiles(&self) -> Vec<usize> {
        self.column_families
            .iter()
            .flat_map(|f| f.members.iter().copied())
            .collect()
    }

    pub fn row_tiles(&self) -> Vec<usize> {
        self.row_families
            .iter()
            .flat_map(|f| f.members.iter().copied())
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct GlobalDecomposition {
    pub levels: BTreeMap<i64, LevelBucket>,
    /// Tiles whose three coefficients are all zero; they carry no mass.
    pub residual_zero: Vec<usize>,
    pub sizes: (f64, f64, f64),
    pub energy1: EnergyCertificate,
    pub energy2: EnergyCertificate,
    pub energy3: EnergyCertificate,
    pub r0: f64,
    pub r: f64,
}

/// Iterates the three decompositions, at each step acting on whichever
/// normalized size/energy ratio is largest (smallest admissible level), and
/// collects the extracted families into per-level buckets.
pub fn global_decompose(
    pop: &TilePopulation,
    f: &Signal,
    g: &Signal,
    h: &VectorFunction,
    r0: f64,
    r: f64,
    decay: f64,
) -> Result<GlobalDecomposition> {
    let all = pop.all_indices();
    let coeffs = coefficients(f, g, h, pop, r0, r)?;
    let engine = Size3Engine::new(pop, h, r, decay);

    let e1 = energy12(pop, &coeffs, &all, 1, EnergyMode::Exact, LevelGrid::Refined);
    let e2 = energy12(pop, &coeffs, &all, 2, EnergyMode::Exact, LevelGrid::Refined);
    let e3 = energy3(&engine, &all);
    let s_init = (
        size_axis(&coeffs, &all, 1),
        size_axis(&coeffs, &all, 2),
        engine.size3(&all),
    );

    let gamma = 2f64.powf(r0 / engine.r_prime);
    let mut levels: BTreeMap<i64, LevelBucket> = BTreeMap::new();
    let mut stock = all;
    let mut residual_zero = Vec::new();

    loop {
        if stock.is_empty() {
            break;
        }
        let s1 = size_axis(&coeffs, &stock, 1);
        let s2 = size_axis(&coeffs, &stock, 2);
        let s3 = engine.size3(&stock);
        if s1 == 0.0 && s2 == 0.0 && s3 == 0.0 {
            residual_zero = stock;
            break;
        }
        // admissible levels: the largest n with Size ≤ base^{-n}·E
        let m1 = level_for(s1, e1.value, 2.0);
        let m2 = level_for(s2, e2.value, 2.0);
        let m3 = level_for(s3, e3.value, gamma);
        let (n, which) = [(m1, 1u8), (m2, 2u8), (m3, 3u8)]
            .into_iter()
            .filter_map(|(m, j)| m.map(|n| (n, j)))
            .min()
            .expect("at least one size is positive");

        let dec = match which {
            1 => decompose_size1(pop, &coeffs, &stock, n, e1.value)?,
            2 => decompose_size2(pop, &coeffs, &stock, n, e2.value)?,
            _ => decompose_size3(&engine, &stock, n, e3.value, r0)?,
        };
        let bucket = levels.entry(n).or_default();
        for fam in dec.families {
            match fam.orientation {
                Orientation::Column => bucket.column_families.push(fam),
                Orientation::Row => bucket.row_families.push(fam),
            }
        }
        stock = dec.low;
    }

    Ok(GlobalDecomposition {
        levels,
        residual_zero,
        sizes: s_init,
        energy1: e1,
        energy2: e2,
        energy3: e3,
        r0,
        r,
    })
}

/// Largest `n` with `size ≤ base^{-n} · energy`, i.e. `⌊log_base(E/S)⌋`;
/// `None` when the size vanishes (the condition then never binds).
fn level_for(size: f64, energy: f64, base: f64) -> Option<i64> {
    if size == 0.0 {
        return None;
    }
    debug_assert!(energy > 0.0, "positive size forces positive energy");
    let raw = (energy / size).log(base).floor();
    let mut n = raw as i64;
    // guard the floating-point boundary
    while size > base.powi(-(n as i32)) * energy {
        n -= 1;
    }
    while size <= base.powi(-(n as i32) - 1) * energy {
        n += 1;
    }
    Some(n)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::dyadic::{DyadicInterval, DyadicSquare, SquareCollection};
    use crate::signal::random_signal;
    use crate::tile::{families_mutually_disjoint, SpatialWindow};
    use crate::tiles::phi::DEFAULT_DECAY;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn square(k: u32, nx: usize, ny: usize, l: u32) -> DyadicSquare {
        DyadicSquare::new(
            DyadicInterval::new(k, nx, l).unwrap(),
            DyadicInterval::new(k, ny, l).unwrap(),
        )
        .unwrap()
    }

    pub(crate) fn random_instance(
        seed: u64,
        l: u32,
        max_tiles: usize,
    ) -> (TilePopulation, Signal, Signal, VectorFunction) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = 1usize << l;
        let mut squares: Vec<DyadicSquare> = Vec::new();
        for _ in 0..30 {
            let k = rng.gen_range(0..l);
            let count = 1usize << (l - k);
            let cand = square(k, rng.gen_range(0..count), rng.gen_range(0..count), l);
            if squares.iter().all(|s| s.is_disjoint_from(&cand).unwrap()) {
                squares.push(cand);
            }
        }
        let coll = SquareCollection::new(squares, l).unwrap();
        let full = TilePopulation::build(&coll, SpatialWindow::All);
        let mut tiles = full.tiles().to_vec();
        while tiles.len() > max_tiles {
            let i = rng.gen_range(0..tiles.len());
            tiles.swap_remove(i);
        }
        let pop = TilePopulation::from_tiles(&coll, tiles).unwrap();
        let f = random_signal(n, &mut rng);
        let g = random_signal(n, &mut rng);
        let mut entries = std::collections::BTreeMap::new();
        for sq in coll.iter() {
            if rng.gen_bool(0.8) {
                entries.insert(*sq, random_signal(n, &mut rng));
            }
        }
        let h = VectorFunction::new(&coll, entries).unwrap();
        (pop, f, g, h)
    }

    #[test]
    fn all_below_threshold_extracts_nothing() {
        let (pop, f, g, h) = random_instance(1, 5, 40);
        let all = pop.all_indices();
        let coeffs = coefficients(&f, &g, &h, &pop, 2.5, 3.0).unwrap();
        let s1 = size_axis(&coeffs, &all, 1);
        // huge energy: threshold 2^{-n-1}E above every coefficient
        let e = s1 * 64.0;
        let dec = decompose_size1(&pop, &coeffs, &all, 0, e).unwrap();
        assert!(dec.families.is_empty());
        assert_eq!(dec.low.len(), all.len());
    }

    #[test]
    fn precondition_violation_is_reported() {
        let (pop, f, g, h) = random_instance(2, 5, 40);
        let all = pop.all_indices();
        let coeffs = coefficients(&f, &g, &h, &pop, 2.5, 3.0).unwrap();
        let s1 = size_axis(&coeffs, &all, 1);
        assert!(s1 > 0.0);
        let err = decompose_size1(&pop, &coeffs, &all, 2, s1);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn postconditions_hold_on_random_instances() {
        for seed in 0..12u64 {
            let (pop, f, g, h) = random_instance(seed + 10, 5, 80);
            let all = pop.all_indices();
            let coeffs = coefficients(&f, &g, &h, &pop, 2.5, 3.0).unwrap();
            let e1 = energy12(&pop, &coeffs, &all, 1, EnergyMode::Exact, LevelGrid::Refined);
            if e1.value == 0.0 {
                continue;
            }
            let s1 = size_axis(&coeffs, &all, 1);
            let n = (e1.value / s1).log2().floor() as i64;
            let dec = decompose_size1(&pop, &coeffs, &all, n, e1.value).unwrap();
            // size postcondition
            assert!(size_axis(&coeffs, &dec.low, 1) <= dec.threshold + 1e-12);
            // every extracted member is heavy
            for fam in &dec.families {
                fam.validate(&pop).unwrap();
                for &m in &fam.members {
                    assert!(coeffs.f_p1[m] > dec.threshold);
                }
            }
            // families mutually disjoint
            assert!(families_mutually_disjoint(&pop, &dec.families));
            // counting bound with the exact refined energy
            let total: f64 = dec
                .families
                .iter()
                .map(|fam| pop.tile(fam.top).time.physical_len(pop.grid_size()))
                .sum();
            let bound = 2f64.powf(coeffs.r0 * (n + 1) as f64);
            assert!(
                total <= bound + 1e-9,
                "Σ|I_top| = {total} exceeds 2^(r0(n+1)) = {bound} at seed {seed}"
            );
            // partition: low ∪ members = subset
            let mut count = dec.low.len();
            for fam in &dec.families {
                count += fam.members.len();
            }
            assert_eq!(count, all.len());
        }
    }

    #[test]
    fn single_heavy_tile_gives_singleton_column() {
        let l = 4;
        let coll = SquareCollection::new(vec![square(2, 1, 1, l)], l).unwrap();
        let pop = TilePopulation::build(&coll, SpatialWindow::All);
        let f = Signal::wave(16, 5); // 5 ∈ [4,8) = ω₁
        let g = Signal::zero(16);
        let h = VectorFunction::zero(&coll);
        let coeffs = coefficients(&f, &g, &h, &pop, 2.5, 3.0).unwrap();
        // exactly one tile has positive f(P₁)? all tiles share ω₁ here, so
        // restrict to one tile
        let heavy: Vec<usize> = vec![0];
        let e1 = energy12(&pop, &coeffs, &heavy, 1, EnergyMode::Exact, LevelGrid::Refined);
        let n = (e1.value / coeffs.f_p1[0]).log2().floor() as i64;
        let dec = decompose_size1(&pop, &coeffs, &heavy, n, e1.value).unwrap();
        assert_eq!(dec.families.len(), 1);
        assert_eq!(dec.families[0].members.len(), 1);
    }

    #[test]
    fn size3_decomposition_postconditions() {
        for seed in 0..8u64 {
            let (pop, _f, _g, h) = random_instance(seed + 40, 5, 60);
            let all = pop.all_indices();
            let engine = Size3Engine::new(&pop, &h, 3.0, DEFAULT_DECAY);
            let r0 = 2.5;
            let e3 = energy3(&engine, &all);
            if e3.value == 0.0 {
                continue;
            }
            let s3 = engine.size3(&all);
            let gamma = 2f64.powf(r0 / engine.r_prime);
            let n = (e3.value / s3).log(gamma).floor() as i64;
            let dec = decompose_size3(&engine, &all, n, e3.value, r0).unwrap();
            assert!(engine.size3(&dec.low) <= dec.threshold + 1e-12);
            for fam in &dec.families {
                fam.validate(&pop).unwrap();
                // the defining value of the extracted family meets the threshold
                let squares = pop.squares_of(&fam.members);
                let v = engine.family_value(fam.top, &squares);
                assert!(
                    v >= dec.threshold - 1e-12,
                    "family value {v} below threshold {} at seed {seed}",
                    dec.threshold
                );
            }
            assert!(families_mutually_disjoint(&pop, &dec.families));
        }
    }

    #[test]
    fn zero_h_extracts_nothing_in_size3() {
        let (pop, _f, _g, _h) = random_instance(3, 5, 40);
        let coll = pop.collection().clone();
        let zero = VectorFunction::zero(&coll);
        let engine = Size3Engine::new(&pop, &zero, 3.0, DEFAULT_DECAY);
        let all = pop.all_indices();
        let (low, fams) = extract_mixed_families(&engine, all.clone(), 1e-9, true);
        assert!(fams.is_empty());
        assert_eq!(low.len(), all.len());
    }

    #[test]
    fn global_decomposition_structure() {
        let (pop, f, g, h) = random_instance(5, 5, 80);
        let dec = global_decompose(&pop, &f, &g, &h, 2.5, 3.0, DEFAULT_DECAY).unwrap();
        // partition check
        let mut seen = vec![false; pop.len()];
        let mut mark = |i: usize| {
            assert!(!seen[i], "tile {i} appears twice");
            seen[i] = true;
        };
        for b in dec.levels.values() {
            for fam in b.column_families.iter().chain(&b.row_families) {
                fam.validate(&pop).unwrap();
                for &m in &fam.members {
                    mark(m);
                }
            }
        }
        for &i in &dec.residual_zero {
            mark(i);
        }
        assert!(seen.iter().all(|&b| b), "partition misses tiles");

        // per-level size conditions with constant 1 on the acting scale
        let coeffs = coefficients(&f, &g, &h, &pop, 2.5, 3.0).unwrap();
        let engine = Size3Engine::new(&pop, &h, 3.0, DEFAULT_DECAY);
        let gamma = 2f64.powf(2.5 / engine.r_prime);
        for (&n, b) in &dec.levels {
            let tiles: Vec<usize> = b
                .column_tiles()
                .into_iter()
                .chain(b.row_tiles())
                .collect();
            let bound1 = 2f64.powi(-(n as i32)) * dec.energy1.value;
            let bound2 = 2f64.powi(-(n as i32)) * dec.energy2.value;
            let bound3 = gamma.powi(-(n as i32)) * dec.energy3.value;
            assert!(size_axis(&coeffs, &tiles, 1) <= bound1 + 1e-9);
            assert!(size_axis(&coeffs, &tiles, 2) <= bound2 + 1e-9);
            assert!(engine.size3(&tiles) <= bound3 + 1e-9);
        }

        // emptiness clause: no column bucket at levels where both the
        // Size¹ and Size³ thresholds sit above the initial ratios
        let (s1, _s2, s3) = dec.sizes;
        for (&n, b) in &dec.levels {
            let no1 = dec.energy1.value == 0.0
                || 2f64.powi(-(n as i32)) >= 2.0 * s1 / dec.energy1.value;
            let no3 = dec.energy3.value == 0.0
                || gamma.powi(-(n as i32)) >= gamma * s3 / dec.energy3.value;
            if no1 && no3 {
                assert!(
                    b.column_families.is_empty(),
                    "emptiness clause violated at level {n}"
                );
            }
        }
    }
}

//! Energies: level-times-measure functionals over disjoint structured
//! families.
//!
//! `Energy¹`/`Energy²` admit an exact evaluation: at a fixed threshold the
//! admissible families are exactly weighted antichains of heavy first
//! tiles, so a min-cut reduction gives the supremum. `Energy³` is
//! greedy-certified: the stopping-time family is admissible, so its value
//! is a certified lower bound of the supremum and is what the
//! decomposition lemmas consume.

use crate::tile::{TilePopulation, TreeFamily};
use crate::tiles::antichain::max_weight_antichain;
use crate::tiles::coefficients::TileCoefficients;
use crate::tiles::decompose::{extract_families_axis, extract_mixed_families};
use crate::tiles::size::Size3Engine;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EnergyMode {
    Exact,
    Greedy,
}

/// Threshold grid for the level supremum. `Dyadic` scans powers of two in
/// the coefficient range; `Refined` scans the distinct coefficient values
/// themselves — the supremum over arbitrary real thresholds, which makes
/// the stopping-time counting bounds exact.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LevelGrid {
    Dyadic,
    Refined,
}

#[derive(Clone, Debug)]
pub enum EnergyRealizer {
    /// Tile indices of a realizing antichain (exact mode).
    Antichain(Vec<usize>),
    /// Realizing stopping-time family (greedy mode).
    Families(Vec<TreeFamily>),
}

#[derive(Clone, Debug)]
pub struct EnergyCertificate {
    pub mode: EnergyMode,
    /// Realizing threshold.
    pub threshold: f64,
    /// Physical weight `Σ |I_top|` (or antichain weight) at that threshold.
    pub weight: f64,
    /// `threshold · weight^{1/exponent}`.
    pub value: f64,
    /// `r₀` for the single-axis energies, `r'` for the mixed one.
    pub exponent: f64,
    pub realizer: EnergyRealizer,
}

impl EnergyCertificate {
    fn zero(mode: EnergyMode, exponent: f64) -> Self {
        EnergyCertificate {
            mode,
            threshold: 0.0,
            weight: 0.0,
            value: 0.0,
            exponent,
            realizer: EnergyRealizer::Antichain(Vec::new()),
        }
    }
}

fn thresholds(values: &[f64], grid: LevelGrid) -> Vec<f64> {
    let positive: Vec<f64> = values.iter().copied().filter(|&v| v > 0.0).collect();
    if positive.is_empty() {
        return Vec::new();
    }
    match grid {
        LevelGrid::Refined => {
            let mut ts = positive;
            ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
            ts.dedup();
            ts
        }
        LevelGrid::Dyadic => {
            let max = positive.iter().copied().fold(f64::MIN, f64::max);
            let min = positive.iter().copied().fold(f64::MAX, f64::min);
            let lo = min.log2().floor() as i64;
            let hi = max.log2().floor() as i64;
            (lo..=hi).map(|n| 2f64.powi(n as i32)).collect()
        }
    }
}

/// `Energy¹` (axis 1) / `Energy²` (axis 2) over the subset.
pub fn energy12(
    pop: &TilePopulation,
    coeffs: &TileCoefficients,
    subset: &[usize],
    axis: u8,
    mode: EnergyMode,
    grid: LevelGrid,
) -> EnergyCertificate {
    let coeff = coeffs.axis(axis);
    let n_grid = pop.grid_size() as f64;
    let exponent = coeffs.r0;
    let ts = thresholds(
        &subset.iter().map(|&i| coeff[i]).collect::<Vec<_>>(),
        grid,
    );
    let mut best = EnergyCertificate::zero(mode, exponent);
    for t in ts {
        let heavy: Vec<usize> = subset.iter().copied().filter(|&i| coeff[i] >= t).collect();
        if heavy.is_empty() {
            continue;
        }
        let (weight_phys, realizer) = match mode {
            EnergyMode::Exact => {
                // distinct first tiles as poset nodes
                let mut nodes: Vec<(usize, crate::tile::SpatialInterval, crate::dyadic::DyadicInterval)> =
                    Vec::new();
                for &i in &heavy {
                    let tile = pop.tile(i);
                    let rect = tile.tf_rectangle(axis);
                    if !nodes.iter().any(|(_, t0, w0)| *t0 == rect.0 && *w0 == rect.1) {
                        nodes.push((i, rect.0, rect.1));
                    }
                }
                let weights: Vec<u64> = nodes.iter().map(|(_, t0, _)| t0.len as u64).collect();
                let less = |u: usize, v: usize| {
                    let (_, tu, wu) = &nodes[u];
                    let (_, tv, wv) = &nodes[v];
                    tu.is_subset_of(tv) && wv.is_subset_of(wu)
                };
                let res = max_weight_antichain(&weights, less);
                let tiles: Vec<usize> = res.antichain.iter().map(|&u| nodes[u].0).collect();
                (res.weight as f64 / n_grid, EnergyRealizer::Antichain(tiles))
            }
            EnergyMode::Greedy => {
                let fams = extract_families_axis(pop, heavy, axis);
                let weight: f64 = fams
                    .iter()
                    .map(|f| pop.tile(f.top).time.physical_len(pop.grid_size()))
                    .sum();
                (weight, EnergyRealizer::Families(fams))
            }
        };
        let value = t * weight_phys.powf(1.0 / exponent);
        if value > best.value {
            best = EnergyCertificate {
                mode,
                threshold: t,
                weight: weight_phys,
                value,
                exponent,
                realizer,
            };
        }
    }
    best
}

/// Greedy-certified `Energy³`: for each dyadic level a stopping-time family
/// of mutually disjoint columns and rows meeting the threshold; the best
/// level is reported. Always a lower bound for the energy supremum.
pub fn energy3(engine: &Size3Engine<'_>, subset: &[usize]) -> EnergyCertificate {
    let pop = engine.population();
    let rp = engine.r_prime;
    let mut best = EnergyCertificate::zero(EnergyMode::Greedy, rp);
    if subset.is_empty() {
        return best;
    }
    let top_value = engine.size3(subset);
    if top_value == 0.0 {
        return best;
    }
    // the smallest useful level: below the smallest positive singleton value
    // no extraction changes
    let mut min_singleton = f64::MAX;
    for &i in subset {
        let v = engine.family_value(i, &[pop.tile(i).square]);
        if v > 0.0 {
            min_singleton = min_singleton.min(v);
        }
    }
    let hi = top_value.log2().floor() as i64;
    let lo = if min_singleton < f64::MAX {
        min_singleton.log2().floor() as i64
    } else {
        hi
    };
    let total_weight: f64 = subset
        .iter()
        .map(|&i| pop.tile(i).time.physical_len(pop.grid_size()))
        .sum();
    for n in (lo..=hi).rev() {
        let t = 2f64.powi(n as i32);
        if t * total_weight.powf(1.0 / rp) <= best.value {
            break;
        }
        let (_low, fams) = extract_mixed_families(engine, subset.to_vec(), t, false);
        if fams.is_empty() {
            continue;
        }
        let weight: f64 = fams
            .iter()
            .map(|f| pop.tile(f.top).time.physical_len(pop.grid_size()))
            .sum();
        let value = t * weight.powf(1.0 / rp);
        if value > best.value {
            best = EnergyCertificate {
                mode: EnergyMode::Greedy,
                threshold: t,
                weight,
                value,
                exponent: rp,
                realizer: EnergyRealizer::Families(fams),
            };
        }
    }
    best
}

//! Experiment orchestration: a TOML-described sweep over generators,
//! sizes, exponent tuples, and seeds, emitting one CSV row per cell plus a
//! machine-readable uniformity summary. Cells run in parallel on
//! independent seed streams; output order is canonical, so identical
//! configs give identical bytes (timing is opt-in and zeroed otherwise).

use crate::error::{Error, Result};
use crate::lab::exponents::ExponentTuple;
use crate::lab::generators::{gen_grid, gen_line, gen_product, gen_random_packing};
use crate::lab::search::{estimate_ratio, CutMode, ExperimentRecord, SearchConfig};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct GeneratorSpec {
    /// `line`, `grid`, `product`, or `packing`.
    pub kind: String,
    pub sizes: Vec<usize>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct TupleSpec {
    pub p: f64,
    pub q: f64,
    pub r: f64,
}

fn default_step_init() -> f64 {
    0.5
}

fn default_step_decay() -> f64 {
    0.99
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub restarts: usize,
    pub iterations: usize,
    #[serde(default = "default_step_init")]
    pub step_init: f64,
    #[serde(default = "default_step_decay")]
    pub step_decay: f64,
    pub seeds: Vec<u64>,
    /// Record wall time per row; off by default so that identical
    /// config+seed produce identical bytes.
    #[serde(default)]
    pub timing: bool,
    #[serde(default = "default_cut_mode")]
    pub cut_mode: CutMode,
    pub generators: Vec<GeneratorSpec>,
    pub tuples: Vec<TupleSpec>,
}

fn default_cut_mode() -> CutMode {
    CutMode::Auto
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Generator dispatch; `size` means `K` for line/packing, the grid side
/// for grid, and `⌈√K⌉ × ⌈√K⌉`-style both-counts for product.
pub fn generate(kind: &str, size: usize, n: usize, seed: u64) -> Result<crate::dyadic::SquareCollection> {
    match kind {
        "line" => gen_line(size, n, seed),
        "grid" => gen_grid(size, n, seed),
        "product" => gen_product(size, size, n, seed),
        "packing" => gen_random_packing(size, n, seed),
        other => Err(Error::BadParameter(format!("unknown generator `{other}`"))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SizeBest {
    pub generator: String,
    pub k_squares: usize,
    pub best_ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TupleSummary {
    pub p: f64,
    pub q: f64,
    pub s: f64,
    pub r: f64,
    pub per_size: Vec<SizeBest>,
    pub max_ratio: f64,
    pub min_ratio: f64,
    /// `max_ratio / min_ratio` over the sweep's sizes — the uniformity
    /// figure of merit.
    pub spread: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentSummary {
    pub tuples: Vec<TupleSummary>,
}

pub struct ExperimentOutput {
    pub records: Vec<ExperimentRecord>,
    pub csv: String,
    pub summary: ExperimentSummary,
    pub summary_json: String,
}

/// Runs the sweep. Rows that fail (infeasible generator, bad exponents)
/// are recorded with a NaN ratio and the run continues.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    struct Cell {
        generator: String,
        size: usize,
        tuple: TupleSpec,
        seed: u64,
    }
    let mut cells = Vec::new();
    for gen in &config.generators {
        for &size in &gen.sizes {
            for tuple in &config.tuples {
                for &seed in &config.seeds {
                    cells.push(Cell {
                        generator: gen.kind.clone(),
                        size,
                        tuple: tuple.clone(),
                        seed,
                    });
                }
            }
        }
    }

    let records: Vec<ExperimentRecord> = cells
        .par_iter()
        .map(|cell| {
            let run = || -> Result<ExperimentRecord> {
                let tuple = ExponentTuple::from_pqr(cell.tuple.p, cell.tuple.q, cell.tuple.r)?;
                let coll = generate(&cell.generator, cell.size, config.n, cell.seed)?;
                let cfg = SearchConfig {
                    restarts: config.restarts,
                    iterations: config.iterations,
                    step_init: config.step_init,
                    step_decay: config.step_decay,
                    seed: cell.seed,
                    n: config.n,
                    cut_mode: config.cut_mode,
                };
                let mut rec = estimate_ratio(&coll, &tuple, &cfg)?;
                rec.generator = cell.generator.clone();
                Ok(rec)
            };
            let mut rec = run().unwrap_or_else(|_| ExperimentRecord {
                generator: cell.generator.clone(),
                k_squares: cell.size,
                n: config.n,
                p: cell.tuple.p,
                q: cell.tuple.q,
                s: 1.0 / (1.0 / cell.tuple.p + 1.0 / cell.tuple.q),
                r: cell.tuple.r,
                ratio: f64::NAN,
                restarts: config.restarts,
                seed: cell.seed,
                millis: 0,
            });
            if !config.timing {
                rec.millis = 0;
            }
            rec
        })
        .collect();

    let mut csv = String::from(ExperimentRecord::CSV_HEADER);
    csv.push('\n');
    for rec in &records {
        csv.push_str(&rec.csv_row());
        csv.push('\n');
    }

    let summary = summarize(&records);
    let summary_json =
        serde_json::to_string_pretty(&summary).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(ExperimentOutput {
        records,
        csv,
        summary,
        summary_json,
    })
}

/// Per exponent tuple, the best found ratio for each (generator, size) and
/// the max/min across sizes. Recomputable from the emitted rows.
pub fn summarize(records: &[ExperimentRecord]) -> ExperimentSummary {
    let mut tuples: Vec<(f64, f64, f64)> = Vec::new();
    for r in records {
        if !tuples
            .iter()
            .any(|&(p, q, rr)| p == r.p && q == r.q && rr == r.r)
        {
            tuples.push((r.p, r.q, r.r));
        }
    }
    let mut out = Vec::new();
    for (p, q, r) in tuples {
        let mut per_size: Vec<SizeBest> = Vec::new();
        for rec in records
            .iter()
            .filter(|rec| rec.p == p && rec.q == q && rec.r == r && rec.ratio.is_finite())
        {
            match per_size.iter_mut().find(|sb| {
                sb.generator == rec.generator && sb.k_squares == rec.k_squares
            }) {
                Some(sb) => sb.best_ratio = sb.best_ratio.max(rec.ratio),
                None => per_size.push(SizeBest {
                    generator: rec.generator.clone(),
                    k_squares: rec.k_squares,
                    best_ratio: rec.ratio,
                }),
            }
        }
        let max_ratio = per_size.iter().map(|s| s.best_ratio).fold(0.0, f64::max);
        let min_ratio = per_size
            .iter()
            .map(|s| s.best_ratio)
            .fold(f64::INFINITY, f64::min);
        let s = 1.0 / (1.0 / p + 1.0 / q);
        out.push(TupleSummary {
            p,
            q,
            s,
            r,
            spread: if min_ratio > 0.0 && min_ratio.is_finite() {
                max_ratio / min_ratio
            } else {
                f64::NAN
            },
            per_size,
            max_ratio,
            min_ratio,
        });
    }
    ExperimentSummary { tuples: out }
}

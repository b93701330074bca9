//! Named invariant suites behind the `verify` surface: each suite re-runs
//! a battery of identities, oracle comparisons, or structural checks on
//! seeded random data and reports the first violation.

use crate::dyadic::{CircularInterval, SquareCollection};
use crate::error::{Error, Result};
use crate::lab::generators::{gen_line, gen_random_packing};
use crate::operators::{
    carleson, carleson_with, dyadic_maximal_with, rdf, t_r, var_carleson, var_carleson_with,
    CarlesonMode, CutGrid, MaximalMode, VariationMode,
};
use crate::signal::{random_signal, Signal};
use crate::spectral::{bilinear_project, project, VectorFunction};
use crate::tile::{SpatialWindow, TilePopulation};
use crate::tiles::{
    certify_overlap_constant, coefficients, decompose_size1, energy12, size_axis,
    trilinear_continuous, trilinear_discrete, EnergyMode, LevelGrid, Size3Engine, DEFAULT_DECAY,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SUITES: &[&str] = &[
    "projections",
    "carleson-oracle",
    "variation-oracle",
    "tiles",
    "decompositions",
    "multiplier",
];

fn fail(suite: &str, what: impl std::fmt::Display) -> Error {
    Error::BadParameter(format!("[{suite}] {what}"))
}

pub fn run_suite(name: &str, seed: u64) -> Result<String> {
    match name {
        "projections" => projections(seed),
        "carleson-oracle" => carleson_oracle(seed),
        "variation-oracle" => variation_oracle(seed),
        "tiles" => tiles(seed),
        "decompositions" => decompositions(seed),
        "multiplier" => multiplier(seed),
        other => Err(Error::BadParameter(format!("unknown suite `{other}`"))),
    }
}

pub fn run_all(seed: u64) -> Result<Vec<String>> {
    SUITES.iter().map(|s| run_suite(s, seed)).collect()
}

fn projections(seed: u64) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 64;
    for trial in 0..25 {
        let f = random_signal(n, &mut rng);
        // round trip
        let back = Signal::from_spectrum(f.spectrum().to_vec())?;
        let err = f
            .values()
            .iter()
            .zip(back.values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if err > 1e-12 * f.lp_norm(f64::INFINITY)?.max(1.0) {
            return Err(fail("projections", format!("round trip error {err} (trial {trial})")));
        }
        // Plancherel
        let space: f64 = f.values().iter().map(|c| c.norm_sqr()).sum::<f64>() / n as f64;
        let freq: f64 = f.spectrum().iter().map(|c| c.norm_sqr()).sum();
        if (space - freq).abs() > 1e-10 * space.max(1e-300) {
            return Err(fail("projections", "Plancherel identity"));
        }
        // idempotence and partition completeness
        let a = rng.gen_range(0..n);
        let len = rng.gen_range(1..=n);
        let i = CircularInterval::new(n, a, len);
        let once = project(&f, i);
        let twice = project(&once, i);
        for (x, y) in once.values().iter().zip(twice.values()) {
            if (x - y).norm() > 1e-12 {
                return Err(fail("projections", "idempotence"));
            }
        }
        let mut cuts: Vec<usize> = vec![0, n];
        for _ in 0..4 {
            cuts.push(rng.gen_range(1..n));
        }
        cuts.sort_unstable();
        cuts.dedup();
        let mut sum = vec![num_complex::Complex64::new(0.0, 0.0); n];
        for w in cuts.windows(2) {
            let piece = project(&f, CircularInterval::new(n, w[0], w[1] - w[0]));
            for (acc, v) in sum.iter_mut().zip(piece.values()) {
                *acc += v;
            }
        }
        for (acc, v) in sum.iter().zip(f.values()) {
            if (acc - v).norm() > 1e-10 {
                return Err(fail("projections", "partition completeness"));
            }
        }
        // bilinear projection vs the double-sum oracle on one square
        let g = random_signal(n, &mut rng);
        let coll = gen_random_packing(1, n, seed + trial as u64)?;
        let sq = coll.squares()[0];
        let fast = bilinear_project(&f, &g, &sq);
        let tau = 2.0 * std::f64::consts::PI;
        for m in 0..n {
            let mut acc = num_complex::Complex64::new(0.0, 0.0);
            for xi in sq.omega1.start()..sq.omega1.end() {
                for eta in sq.omega2.start()..sq.omega2.end() {
                    let phase = tau * ((xi + eta) % n) as f64 * m as f64 / n as f64;
                    acc += f.spectrum()[xi]
                        * g.spectrum()[eta]
                        * num_complex::Complex64::new(0.0, phase).exp();
                }
            }
            if (acc - fast.values()[m]).norm() > 1e-10 {
                return Err(fail("projections", "bilinear double-sum oracle"));
            }
        }
    }
    Ok("projections: 25 trials (round trip, Plancherel, idempotence, completeness, bilinear oracle)".into())
}

fn carleson_oracle(seed: u64) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 64;
    for _ in 0..5 {
        let f = random_signal(n, &mut rng);
        let fast = carleson_with(&f, CarlesonMode::Calipers);
        let slow = carleson_with(&f, CarlesonMode::BruteForce);
        for (a, b) in fast.values().iter().zip(slow.values()) {
            if (a.re - b.re).abs() > 1e-12 {
                return Err(fail("carleson-oracle", format!("{} vs {}", a.re, b.re)));
            }
        }
        // pointwise domination of interval projections
        let a = rng.gen_range(0..n);
        let len = rng.gen_range(1..=n - a);
        let p = project(&f, CircularInterval::new(n, a, len));
        for (pv, cv) in p.values().iter().zip(fast.values()) {
            if pv.norm() > cv.re + 1e-12 {
                return Err(fail("carleson-oracle", "projection domination"));
            }
        }
    }
    Ok("carleson-oracle: calipers = brute force (5 × 64 points), projections dominated".into())
}

fn variation_oracle(seed: u64) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 32;
    for _ in 0..8 {
        let f = random_signal(n, &mut rng);
        let mut cuts: Vec<usize> = (1..n).collect();
        while cuts.len() > 9 {
            let i = rng.gen_range(0..cuts.len());
            cuts.swap_remove(i);
        }
        let grid = CutGrid::custom(n, cuts)?;
        let r = rng.gen_range(1.1..4.0);
        let dp = var_carleson(&f, r, &grid)?;
        let ex = var_carleson_with(&f, r, &grid, VariationMode::Exhaustive)?;
        for (a, b) in dp.values().iter().zip(ex.values()) {
            if (a.re - b.re).abs() > 1e-12 {
                return Err(fail("variation-oracle", "DP vs exhaustive"));
            }
        }
        let full = CutGrid::full(n);
        let v = var_carleson(&f, 2.0, &full)?;
        let c = carleson(&f);
        for (a, b) in v.values().iter().zip(c.values()) {
            if a.re + 1e-12 < b.re {
                return Err(fail("variation-oracle", "V^2 ≥ Carleson"));
            }
        }
    }
    Ok("variation-oracle: DP = exhaustive (8 grids ≤ 11 cuts), V^2 dominates the Carleson sup".into())
}

fn tiles(seed: u64) -> Result<String> {
    // dyadic trichotomy on random pairs, dual support coverage, Φ overlap
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = 7u32;
    for _ in 0..10_000 {
        let k1 = rng.gen_range(0..=l);
        let k2 = rng.gen_range(0..=l);
        let a = crate::dyadic::DyadicInterval::new(k1, rng.gen_range(0..1usize << (l - k1)), l)?;
        let b = crate::dyadic::DyadicInterval::new(k2, rng.gen_range(0..1usize << (l - k2)), l)?;
        let rel = a.relation(&b)?;
        let inter = a.start().max(b.start()) < a.end().min(b.end());
        let consistent = match rel {
            crate::dyadic::IntervalRelation::Disjoint => !inter,
            _ => inter,
        };
        if !consistent {
            return Err(fail("tiles", format!("trichotomy on {a}, {b}")));
        }
    }
    for n_exp in 1..=6u32 {
        let n = 1usize << n_exp;
        for k in 0..=n_exp {
            let count = 1usize << (n_exp - k);
            for nx in 0..count {
                for ny in 0..count {
                    let sq = crate::dyadic::DyadicSquare::new(
                        crate::dyadic::DyadicInterval::new(k, nx, n_exp)?,
                        crate::dyadic::DyadicInterval::new(k, ny, n_exp)?,
                    )?;
                    let d = sq.dual_support();
                    for xi in sq.omega1.start()..sq.omega1.end() {
                        for eta in sq.omega2.start()..sq.omega2.end() {
                            if !d.contains((2 * n - xi - eta) % n) {
                                return Err(fail("tiles", format!("dual support of {sq}")));
                            }
                        }
                    }
                }
            }
        }
    }
    let c_phi = certify_overlap_constant(256, DEFAULT_DECAY);
    if c_phi > 4.0 {
        return Err(fail("tiles", format!("Φ overlap constant {c_phi} > 4")));
    }
    Ok(format!(
        "tiles: 10000 trichotomy pairs, dual supports exhaustive to N=64, overlap constant {c_phi:.6} ≤ 4"
    ))
}

fn decompositions(seed: u64) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 32;
    let mut ran = 0;
    for trial in 0..10u64 {
        let coll = gen_random_packing(6, n, seed.wrapping_add(trial))?;
        let pop = TilePopulation::build(&coll, SpatialWindow::All);
        let f = random_signal(n, &mut rng);
        let g = random_signal(n, &mut rng);
        let mut entries = std::collections::BTreeMap::new();
        for sq in coll.iter() {
            entries.insert(*sq, random_signal(n, &mut rng));
        }
        let h = VectorFunction::new(&coll, entries)?;
        let r0 = 2.5;
        let r = 3.0;
        let coeffs = coefficients(&f, &g, &h, &pop, r0, r)?;
        let all = pop.all_indices();

        // |Λ| ≤ Λ_P
        let lam = trilinear_continuous(&f, &g, &h, &coll).norm();
        let lam_p = trilinear_discrete(&pop, &coeffs, &all);
        if lam > lam_p + 1e-9 {
            return Err(fail("decompositions", format!("|Λ| = {lam} > Λ_P = {lam_p}")));
        }

        // stopping-time postconditions with exact refined energy
        let e1 = energy12(&pop, &coeffs, &all, 1, EnergyMode::Exact, LevelGrid::Refined);
        if e1.value == 0.0 {
            continue;
        }
        ran += 1;
        let s1 = size_axis(&coeffs, &all, 1);
        let lvl = (e1.value / s1).log2().floor() as i64;
        let dec = decompose_size1(&pop, &coeffs, &all, lvl, e1.value)?;
        if size_axis(&coeffs, &dec.low, 1) > dec.threshold + 1e-12 {
            return Err(fail("decompositions", "low part exceeds the size threshold"));
        }
        let total: f64 = dec
            .families
            .iter()
            .map(|fam| pop.tile(fam.top).time.physical_len(n))
            .sum();
        let bound = 2f64.powf(r0 * (lvl + 1) as f64);
        if total > bound + 1e-9 {
            return Err(fail(
                "decompositions",
                format!("counting bound: {total} > {bound}"),
            ));
        }
        // energy-control pointwise bound for the extracted tops
        let edges: Vec<usize> = dec
            .families
            .iter()
            .flat_map(|fam| {
                let w = pop.tile(fam.top).square.omega1;
                [w.start(), w.end()]
            })
            .collect();
        let cuts = CutGrid::custom(n, edges)?;
        let v = var_carleson(&f, r0, &cuts)?;
        for x in 0..n {
            let mut sum = 0.0;
            for fam in &dec.families {
                let top = pop.tile(fam.top);
                if top.time.contains_point(x) {
                    let p = project(&f, top.square.omega1.into());
                    sum += p.values()[x].norm().powf(r0);
                }
            }
            if sum > v.values()[x].re.powf(r0) + 1e-9 {
                return Err(fail("decompositions", "pointwise energy control"));
            }
        }
        let engine = Size3Engine::new(&pop, &h, r, DEFAULT_DECAY);
        let _ = engine.size3(&all);
    }
    Ok(format!(
        "decompositions: {ran} instances (discretization bound, stopping-time postconditions, counting, energy control)"
    ))
}

fn multiplier(seed: u64) -> Result<String> {
    use crate::multiplier::*;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = 5u32;
    let n = 32;
    for trial in 0..10u64 {
        let coll = gen_random_packing(8, n, seed.wrapping_add(100 + trial))?;
        let entries: Vec<_> = coll
            .iter()
            .map(|sq| {
                (
                    *sq,
                    num_complex::Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                )
            })
            .collect();
        let fam = CoefficientFamily::new(entries, 1.2)?;
        let f = random_signal(n, &mut rng);
        let g = random_signal(n, &mut rng);
        let fast = apply_multiplier(&f, &g, &fam)?;
        let slow = apply_multiplier_naive(&f, &g, &fam)?;
        for (a, b) in fast.values().iter().zip(slow.values()) {
            if (a - b).norm() > 1e-10 {
                return Err(fail("multiplier", "grouped vs naive evaluation"));
            }
        }
        let rep = bound_pipeline(&f, &g, &fam, 3.0, 2.4, 2.4)?;
        if rep.min_pointwise_slack < -1e-9 {
            return Err(fail("multiplier", "pointwise Hölder chain"));
        }
        for (m, bin) in magnitude_partition(&fam)? {
            let cap = 2f64.powf(fam.beta() * (m as f64 + 1.0));
            if bin.len() as f64 > cap {
                return Err(fail("multiplier", "bin cardinality bound"));
            }
        }
        let _ = l;
    }
    Ok("multiplier: 10 instances (grouped=naive, Hölder chain, bin cardinality)".into())
}

/// Quick sanity checks tying the generators to the operator laws.
pub fn line_law_spotcheck(seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 64;
    let coll = gen_line(6, n, seed)?;
    let f = random_signal(n, &mut rng);
    let g = random_signal(n, &mut rng);
    let r = 3.0;
    let t = t_r(&f, &g, &coll, r)?;
    let intervals: Vec<CircularInterval> =
        coll.iter().map(|sq| sq.omega2.into()).collect();
    let rg = rdf(&g, &intervals, r)?;
    let cf = carleson(&f);
    for ((tv, rv), cv) in t.values().iter().zip(rg.values()).zip(cf.values()) {
        if tv.re > rv.re * cv.re + 1e-9 {
            return Err(Error::BadParameter(format!(
                "line law violated: {} > {}",
                tv.re,
                rv.re * cv.re
            )));
        }
    }
    Ok(())
}

#[allow(unused)]
fn _unused(_: &SquareCollection, _: MaximalMode) {
    let _ = dyadic_maximal_with;
}

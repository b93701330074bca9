//! Per-tile coefficients of the discretized trilinear form:
//! `f(P₁) = (⨍_{I_P} |π_{ω₁(P)}f|^{r₀})^{1/r₀}`, the mirrored `g(P₂)`, and
//! `h(P₃) = ‖h_{ω(P)} ∗ χ̌_{ω₃}‖_{L^∞(I_P)}`.

use crate::dyadic::DyadicInterval;
use crate::error::{Error, Result};
use crate::signal::Signal;
use crate::spectral::{mollified_component, project, VectorFunction};
use crate::tile::TilePopulation;
use std::collections::HashMap;

/// Coefficient triple per tile, index-aligned with the population.
#[derive(Clone, Debug)]
pub struct TileCoefficients {
    pub f_p1: Vec<f64>,
    pub g_p2: Vec<f64>,
    pub h_p3: Vec<f64>,
    pub r0: f64,
    pub r: f64,
}

impl TileCoefficients {
    pub fn len(&self) -> usize {
        self.f_p1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f_p1.is_empty()
    }

    /// The `f(P₁)` family for axis 1, `g(P₂)` for axis 2.
    pub fn axis(&self, axis: u8) -> &[f64] {
        match axis {
            1 => &self.f_p1,
            2 => &self.g_p2,
            _ => panic!("axis must be 1 or 2"),
        }
    }
}

/// Computes all three coefficient families. Components of `h` missing a
/// square of the population act as zero. `r0 ≥ 1` required (the harness
/// default keeps `2 < r0 < r`).
pub fn coefficients(
    f: &Signal,
    g: &Signal,
    h: &VectorFunction,
    pop: &TilePopulation,
    r0: f64,
    r: f64,
) -> Result<TileCoefficients> {
    if !(r0 >= 1.0) {
        return Err(Error::BadExponent(format!("r0 = {r0} must be ≥ 1")));
    }
    if !(r > 1.0) {
        return Err(Error::BadExponent(format!("r = {r} must be > 1")));
    }
    let mut proj_f: HashMap<DyadicInterval, Signal> = HashMap::new();
    let mut proj_g: HashMap<DyadicInterval, Signal> = HashMap::new();
    let mut mollified: HashMap<crate::dyadic::DyadicSquare, Option<Signal>> = HashMap::new();

    let mut f_p1 = Vec::with_capacity(pop.len());
    let mut g_p2 = Vec::with_capacity(pop.len());
    let mut h_p3 = Vec::with_capacity(pop.len());

    for tile in pop.tiles() {
        let pf = proj_f
            .entry(tile.square.omega1)
            .or_insert_with(|| project(f, tile.square.omega1.into()));
        f_p1.push(pf.local_average(tile.time, r0)?);

        let pg = proj_g
            .entry(tile.square.omega2)
            .or_insert_with(|| project(g, tile.square.omega2.into()));
        g_p2.push(pg.local_average(tile.time, r0)?);

        let moll = mollified
            .entry(tile.square)
            .or_insert_with(|| h.get(&tile.square).map(|hw| mollified_component(hw, &tile.square)));
        let sup = match moll {
            Some(sig) => tile
                .time
                .grid_points()
                .map(|m| sig.values()[m].norm())
                .fold(0.0f64, f64::max),
            None => 0.0,
        };
        h_p3.push(sup);
    }

    Ok(TileCoefficients {
        f_p1,
        g_p2,
        h_p3,
        r0,
        r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::{DyadicSquare, SquareCollection};
    use crate::signal::random_signal;
    use crate::tile::{SpatialWindow, TilePopulation};
    use num_complex::Complex64;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn square(k: u32, nx: usize, ny: usize, l: u32) -> DyadicSquare {
        DyadicSquare::new(
            DyadicInterval::new(k, nx, l).unwrap(),
            DyadicInterval::new(k, ny, l).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn constant_f_with_zero_frequency_in_omega1() {
        let l = 4;
        let coll = SquareCollection::new(vec![square(1, 0, 1, l)], l).unwrap(); // ω₁ = [0,2) ∋ 0
        let pop = TilePopulation::build(&coll, SpatialWindow::All);
        let one = Signal::constant(16, Complex64::new(1.0, 0.0));
        let h = VectorFunction::zero(&coll);
        let c = coefficients(&one, &one, &h, &pop, 3.0, 4.0).unwrap();
        for &v in &c.f_p1 {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn spectrum_disjoint_from_omega1_gives_zero() {
        let l = 4;
        let coll = SquareCollection::new(vec![square(1, 0, 1, l)], l).unwrap();
        let pop = TilePopulation::build(&coll, SpatialWindow::All);
        let f = Signal::wave(16, 9); // 9 ∉ [0,2)
        let h = VectorFunction::zero(&coll);
        let c = coefficients(&f, &f, &h, &pop, 3.0, 4.0).unwrap();
        for &v in &c.f_p1 {
            assert!(v.abs() < 1e-12);
        }
    }

    #[test]
    fn matches_direct_quadrature_oracle() {
        let l = 5;
        let n = 32;
        let mut rng = StdRng::seed_from_u64(61);
        let coll = SquareCollection::new(
            vec![square(1, 3, 0, l), square(2, 4, 2, l)],
            l,
        )
        .unwrap();
        let pop = TilePopulation::build(&coll, SpatialWindow::All);
        let f = random_signal(n, &mut rng);
        let g = random_signal(n, &mut rng);
        let h = VectorFunction::zero(&coll);
        let r0 = 2.5;
        let c = coefficients(&f, &g, &h, &pop, r0, 3.0).unwrap();
        for (i, tile) in pop.tiles().iter().enumerate() {
            let pf = project(&f, tile.square.omega1.into());
            let mut acc = 0.0;
            for m in tile.time.grid_points() {
                acc += pf.values()[m].norm().powf(r0);
            }
            let direct = (acc / tile.time.len as f64).powf(1.0 / r0);
            assert!((c.f_p1[i] - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn missing_h_component_is_zero() {
        let l = 4;
        let a = square(1, 0, 0, l);
        let b = square(1, 1, 1, l);
        let coll = SquareCollection::new(vec![a, b], l).unwrap();
        let pop = TilePopulation::build(&coll, SpatialWindow::All);
        let mut rng = StdRng::seed_from_u64(62);
        let sig = random_signal(16, &mut rng);
        let h = VectorFunction::new(&coll, [(a, sig)].into_iter().collect()).unwrap();
        let f = Signal::constant(16, Complex64::new(1.0, 0.0));
        let c = coefficients(&f, &f, &h, &pop, 3.0, 4.0).unwrap();
        for (i, tile) in pop.tiles().iter().enumerate() {
            if tile.square == b {
                assert_eq!(c.h_p3[i], 0.0);
            }
        }
    }
}

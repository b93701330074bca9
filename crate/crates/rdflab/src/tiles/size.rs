//! Sizes of tile populations: the sup-coefficient `Size¹`/`Size²` and the
//! column/row-structured `Size³`.
//!
//! `Size³` is evaluated over maximal square sets: for a candidate top `T`
//! and orientation `j` the relevant squares are exactly
//! `Ω_j(T) = {ω(P) : P ≤_j T}`, since adjoining every tile of a member
//! square below the top changes nothing — the functional only sees the
//! space support and the square set.

use crate::dyadic::DyadicSquare;
use crate::spectral::VectorFunction;
use crate::tile::{SpatialInterval, TilePopulation};
use crate::tiles::coefficients::TileCoefficients;
use crate::tiles::phi::PhiWeight;
use std::cell::RefCell;
use std::collections::HashMap;

/// `Size¹` (axis 1) or `Size²` (axis 2): the largest coefficient over the
/// subset; 0 when empty.
pub fn size_axis(coeffs: &TileCoefficients, subset: &[usize], axis: u8) -> f64 {
    let c = coeffs.axis(axis);
    subset.iter().map(|&i| c[i]).fold(0.0, f64::max)
}

pub fn size1(coeffs: &TileCoefficients, subset: &[usize]) -> f64 {
    size_axis(coeffs, subset, 1)
}

pub fn size2(coeffs: &TileCoefficients, subset: &[usize]) -> f64 {
    size_axis(coeffs, subset, 2)
}

/// Shared evaluation state for `Size³`-type quantities: powers `|h_ω|^{r'}`
/// and memoized weighted integrals `∫ |h_ω|^{r'} Φ^ω_I`.
pub struct Size3Engine<'a> {
    pop: &'a TilePopulation,
    pub r_prime: f64,
    pub decay: f64,
    h_pow: HashMap<DyadicSquare, Vec<f64>>,
    int_cache: RefCell<HashMap<(SpatialInterval, DyadicSquare), f64>>,
}

impl<'a> Size3Engine<'a> {
    pub fn new(pop: &'a TilePopulation, h: &VectorFunction, r: f64, decay: f64) -> Self {
        let r_prime = r / (r - 1.0);
        let h_pow = h
            .components()
            .map(|(sq, sig)| {
                (
                    *sq,
                    sig.values().iter().map(|c| c.norm().powf(r_prime)).collect(),
                )
            })
            .collect();
        Size3Engine {
            pop,
            r_prime,
            decay,
            h_pow,
            int_cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn population(&self) -> &TilePopulation {
        self.pop
    }

    /// `∫ |h_ω|^{r'} Φ^ω_I` with the integral as the grid Riemann sum.
    pub fn weighted_integral(&self, interval: SpatialInterval, omega: &DyadicSquare) -> f64 {
        if let Some(&v) = self.int_cache.borrow().get(&(interval, *omega)) {
            return v;
        }
        let v = match self.h_pow.get(omega) {
            None => 0.0,
            Some(pow) => {
                let n = self.pop.grid_size();
                let phi =
                    PhiWeight::for_square_side(interval, n, omega.side()).with_decay(self.decay);
                let mut acc = 0.0;
                for (x, &p) in pow.iter().enumerate() {
                    if p != 0.0 {
                        acc += p * phi.eval(x, n);
                    }
                }
                acc / n as f64
            }
        };
        self.int_cache.borrow_mut().insert((interval, *omega), v);
        v
    }

    /// Squares below the top in the given orientation, within the subset.
    pub fn squares_below(&self, top: usize, axis: u8, subset: &[usize]) -> Vec<DyadicSquare> {
        let t = self.pop.tile(top);
        let mut squares = Vec::new();
        for &i in subset {
            let p = self.pop.tile(i);
            if p.le(t, axis) && !squares.contains(&p.square) {
                squares.push(p.square);
            }
        }
        squares
    }

    /// The defining functional of a column/row with the given top and
    /// square set: `((1/|I_T|) Σ_ω ∫ |h_ω|^{r'} Φ^ω_{I_T})^{1/r'}`.
    pub fn family_value(&self, top: usize, squares: &[DyadicSquare]) -> f64 {
        let t = self.pop.tile(top);
        let phys = t.time.physical_len(self.pop.grid_size());
        let sum: f64 = squares
            .iter()
            .map(|sq| self.weighted_integral(t.time, sq))
            .sum();
        (sum / phys).powf(1.0 / self.r_prime)
    }

    /// Value of the maximal candidate at `(top, axis)` within the subset.
    pub fn local_value(&self, top: usize, axis: u8, subset: &[usize]) -> f64 {
        let squares = self.squares_below(top, axis, subset);
        self.family_value(top, &squares)
    }

    /// `Size³` over the subset: the best candidate top over both
    /// orientations; 0 when empty.
    pub fn size3(&self, subset: &[usize]) -> f64 {
        let mut best = 0.0f64;
        for &t in subset {
            for axis in [1u8, 2u8] {
                best = best.max(self.local_value(t, axis, subset));
            }
        }
        best
    }
}

/// One-call `Size³` for populations where no engine reuse is needed.
pub fn size3(
    pop: &TilePopulation,
    subset: &[usize],
    h: &VectorFunction,
    r: f64,
    decay: f64,
) -> f64 {
    Size3Engine::new(pop, h, r, decay).size3(subset)
}

/// Convenience bundle of all sizes.
pub fn all_sizes(
    coeffs: &TileCoefficients,
    engine: &Size3Engine<'_>,
    subset: &[usize],
) -> (f64, f64, f64) {
    (
        size1(coeffs, subset),
        size2(coeffs, subset),
        engine.size3(subset),
    )
}

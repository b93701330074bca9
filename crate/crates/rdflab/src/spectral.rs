//! Frequency projections, the bilinear projection `π_ω`, smooth bump
//! cutoffs for the dual support, and vector-valued functions indexed by
//! squares.

use crate::dyadic::{CircularInterval, DyadicSquare, SquareCollection};
use crate::error::{Error, Result};
use crate::signal::Signal;
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Sharp frequency projection `π_I f`: the spectrum multiplied by the
/// indicator of the (possibly wrapped) arc `I`.
pub fn project(f: &Signal, interval: CircularInterval) -> Signal {
    assert_eq!(f.len(), interval.grid, "grid mismatch");
    let mut coeffs = vec![Complex64::new(0.0, 0.0); f.len()];
    for (xi, c) in f.spectrum().iter().enumerate() {
        if interval.contains(xi) {
            coeffs[xi] = *c;
        }
    }
    Signal::from_spectrum(coeffs).expect("same length")
}

/// Bilinear projection `π_ω(f,g) = π_{ω₁}f · π_{ω₂}g`.
pub fn bilinear_project(f: &Signal, g: &Signal, omega: &DyadicSquare) -> Signal {
    assert_eq!(f.len(), g.len(), "grid mismatch");
    assert_eq!(f.len(), omega.grid_size(), "grid mismatch");
    let pf = project(f, omega.omega1.into());
    let pg = project(g, omega.omega2.into());
    pf.pointwise_mul(&pg)
}

/// Taper profile for the smooth cutoff; steepness `s` raises the
/// raised-cosine ramp to the power `s` (still 1 on the plateau, 0 outside
/// the support, symmetric and monotone on each ramp).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Taper {
    pub steepness: f64,
}

impl Default for Taper {
    fn default() -> Self {
        Taper { steepness: 1.0 }
    }
}

/// Smoothed characteristic function of the dual support: weights in `[0,1]`,
/// identically 1 on the centred plateau covering the sum-set `-ω₁-ω₂`,
/// identically 0 outside `ω₃`, raised-cosine on the two `|ω|`-length ramps.
#[derive(Clone, Debug)]
pub struct BumpMask {
    weights: Vec<f64>,
    pub plateau: CircularInterval,
    pub support: CircularInterval,
}

impl BumpMask {
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn grid_size(&self) -> usize {
        self.weights.len()
    }
}

/// `χ_{ω₃}` with the default raised-cosine taper.
pub fn smooth_bump(omega: &DyadicSquare) -> BumpMask {
    smooth_bump_with(omega, Taper::default())
}

/// When `4|ω| > N` the precondition fails and the mask clamps to the whole
/// circle (all ones).
pub fn smooth_bump_with(omega: &DyadicSquare, taper: Taper) -> BumpMask {
    let n = omega.grid_size();
    let side = omega.side();
    if 4 * side > n {
        return BumpMask {
            weights: vec![1.0; n],
            plateau: CircularInterval::full(n),
            support: CircularInterval::full(n),
        };
    }
    let c = crate::dyadic::reflected_center(omega, n);
    let mut weights = vec![0.0; n];
    for (xi, w) in weights.iter_mut().enumerate() {
        // signed circular offset from the centre, folded to |d| ≤ N/2
        let fwd = (xi + n - c) % n;
        let u = fwd.min(n - fwd) as f64;
        let s = side as f64;
        *w = if u <= s {
            1.0
        } else if u < 2.0 * s {
            let ramp = 0.5 * (1.0 + (std::f64::consts::PI * (u - s) / s).cos());
            ramp.powf(taper.steepness)
        } else {
            0.0
        };
    }
    BumpMask {
        weights,
        plateau: CircularInterval::new(n, (c + n - side) % n, 2 * side + 1),
        support: CircularInterval::new(n, (c + n - (2 * side - 1)) % n, 4 * side - 1),
    }
}

/// `h_ω ∗ χ̌_{ω₃}`: the spectrum of `h_ω` multiplied by the bump weights.
pub fn mollified_component(h_omega: &Signal, omega: &DyadicSquare) -> Signal {
    mollified_component_with(h_omega, omega, Taper::default())
}

pub fn mollified_component_with(h_omega: &Signal, omega: &DyadicSquare, taper: Taper) -> Signal {
    let mask = smooth_bump_with(omega, taper);
    let coeffs = h_omega
        .spectrum()
        .iter()
        .zip(mask.weights())
        .map(|(&c, &w)| c * w)
        .collect();
    Signal::from_spectrum(coeffs).expect("same length")
}

/// Family `h = {h_ω}_{ω∈Ω}`, the generic element of `L^{s'}(ℓ^{r'})`.
/// Keys are squares of the collection; missing squares act as zero.
#[derive(Clone, Debug)]
pub struct VectorFunction {
    omega: SquareCollection,
    entries: BTreeMap<DyadicSquare, Signal>,
}

impl VectorFunction {
    pub fn new(omega: &SquareCollection, entries: BTreeMap<DyadicSquare, Signal>) -> Result<Self> {
        for (sq, sig) in &entries {
            if !omega.squares().contains(sq) {
                return Err(Error::GridMismatch(format!(
                    "component for {} which is not in the collection",
                    sq
                )));
            }
            if sig.len() != omega.grid_size() {
                return Err(Error::GridMismatch(format!(
                    "component for {} has length {}, expected {}",
                    sq,
                    sig.len(),
                    omega.grid_size()
                )));
            }
        }
        Ok(VectorFunction {
            omega: omega.clone(),
            entries,
        })
    }

    pub fn zero(omega: &SquareCollection) -> Self {
        VectorFunction {
            omega: omega.clone(),
            entries: BTreeMap::new(),
        }
    }

    pub fn collection(&self) -> &SquareCollection {
        &self.omega
    }

    pub fn grid_size(&self) -> usize {
        self.omega.grid_size()
    }

    pub fn get(&self, omega: &DyadicSquare) -> Option<&Signal> {
        self.entries.get(omega)
    }

    pub fn components(&self) -> impl Iterator<Item = (&DyadicSquare, &Signal)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, lambda: f64) -> VectorFunction {
        let entries = self
            .entries
            .iter()
            .map(|(sq, sig)| (*sq, sig.map(|c| c * lambda)))
            .collect();
        VectorFunction {
            omega: self.omega.clone(),
            entries,
        }
    }

    /// `L^s(ℓ^t)` mixed norm: pointwise `ℓ^t` over components, then the
    /// spatial `L^s` (quasi-)norm. Empty family → 0.
    pub fn mixed_norm(&self, s: f64, t: f64) -> Result<f64> {
        if !(s > 0.0) || !(t > 0.0) {
            return Err(Error::BadExponent(format!(
                "mixed norm exponents must be positive, got ({s},{t})"
            )));
        }
        if self.entries.is_empty() {
            return Ok(0.0);
        }
        let n = self.grid_size();
        let mut stack = vec![0.0f64; n];
        for sig in self.entries.values() {
            for (acc, c) in stack.iter_mut().zip(sig.values()) {
                *acc += c.norm().powf(t);
            }
        }
        let stacked = Signal::from_values(
            stack
                .into_iter()
                .map(|v| Complex64::new(v.powf(1.0 / t), 0.0))
                .collect(),
        )?;
        stacked.lp_norm(s)
    }
}

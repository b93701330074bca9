//! Maximal and variational operators: Carleson sup, `r`-variation over cut
//! grids, the linear `RdF^r` aggregate, the bilinear `T^r_Ω`, the dyadic
//! maximal function, and the exceptional-set builder.

mod carleson;
mod exceptional;
mod maximal;
mod variation;

pub use carleson::{carleson, carleson_with, CarlesonMode};
pub use exceptional::{exceptional_set, ExceptionalParams, ExceptionalSetReport, Mask};
pub use maximal::{dyadic_maximal, dyadic_maximal_with, MaximalMode};
pub use variation::{var_carleson, var_carleson_with, CutGrid, CutGridMode, VariationMode};

use crate::dyadic::{CircularInterval, SquareCollection};
use crate::error::{Error, Result};
use crate::signal::Signal;
use crate::spectral::{bilinear_project, project};
use num_complex::Complex64;

/// `RdF^r f = (Σ_j |π_{I_j} f|^r)^{1/r}` over pairwise disjoint frequency
/// intervals.
pub fn rdf(f: &Signal, intervals: &[CircularInterval], r: f64) -> Result<Signal> {
    if !(r > 0.0) {
        return Err(Error::BadExponent(format!("r = {r} must be positive")));
    }
    for (i, a) in intervals.iter().enumerate() {
        for b in intervals.iter().skip(i + 1) {
            if a.frequencies().any(|xi| b.contains(xi)) {
                return Err(Error::OverlappingIntervals);
            }
        }
    }
    let n = f.len();
    let mut acc = vec![0.0f64; n];
    for &i in intervals {
        let p = project(f, i);
        for (a, c) in acc.iter_mut().zip(p.values()) {
            *a += c.norm().powf(r);
        }
    }
    Ok(Signal::from_values(
        acc.into_iter()
            .map(|v| Complex64::new(v.powf(1.0 / r), 0.0))
            .collect(),
    )?)
}

/// `T^r_Ω(f,g) = (Σ_{ω∈Ω} |π_ω(f,g)|^r)^{1/r}`; pass `r = ∞` for the sup
/// variant. Empty collections give the zero signal.
pub fn t_r(f: &Signal, g: &Signal, omega: &SquareCollection, r: f64) -> Result<Signal> {
    if !(r >= 1.0) {
        return Err(Error::BadExponent(format!("r = {r} must be ≥ 1 (or ∞)")));
    }
    Ok(ell_r_aggregate(f, g, omega.squares(), r))
}

/// ℓ^r aggregate of bilinear projections over an arbitrary square list
/// (no disjointness requirement; used by the multiplier pipeline).
pub(crate) fn ell_r_aggregate(
    f: &Signal,
    g: &Signal,
    squares: &[crate::dyadic::DyadicSquare],
    r: f64,
) -> Signal {
    let n = f.len();
    if r.is_infinite() {
        let mut acc = vec![0.0f64; n];
        for sq in squares {
            let p = bilinear_project(f, g, sq);
            for (a, c) in acc.iter_mut().zip(p.values()) {
                *a = a.max(c.norm());
            }
        }
        return Signal::from_values(acc.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
            .expect("power of two");
    }
    let mut acc = vec![0.0f64; n];
    for sq in squares {
        let p = bilinear_project(f, g, sq);
        for (a, c) in acc.iter_mut().zip(p.values()) {
            *a += c.norm().powf(r);
        }
    }
    Signal::from_values(
        acc.into_iter()
            .map(|v| Complex64::new(v.powf(1.0 / r), 0.0))
            .collect(),
    )
    .expect("power of two")
}

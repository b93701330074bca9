//! Variational Carleson operator `V^r` over a frequency cut grid, exact by
//! dynamic programming over increasing cut subsequences.

use crate::error::{Error, Result};
use crate::signal::Signal;
use num_complex::Complex64;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CutGridMode {
    Full,
    DyadicEndpoints,
    Custom,
}

/// Ordered frequency cut points in `{0,…,N}`, always containing `0` and `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutGrid {
    cuts: Vec<usize>,
    pub mode: CutGridMode,
}

impl CutGrid {
    /// Every integer cut `0,…,N`. Exact for all projections onto plain
    /// intervals.
    pub fn full(n: usize) -> Self {
        CutGrid {
            cuts: (0..=n).collect(),
            mode: CutGridMode::Full,
        }
    }

    /// Power-of-two endpoints plus the given extra frequency edges. The
    /// reduced default for large grids: exact for every inequality that
    /// projects only onto those intervals.
    pub fn dyadic_endpoints(n: usize, extra_edges: impl IntoIterator<Item = usize>) -> Self {
        let mut cuts: Vec<usize> = vec![0, n];
        let mut p = 1usize;
        while p < n {
            cuts.push(p);
            p *= 2;
        }
        cuts.extend(extra_edges.into_iter().filter(|&e| e <= n));
        cuts.sort_unstable();
        cuts.dedup();
        CutGrid {
            cuts,
            mode: CutGridMode::DyadicEndpoints,
        }
    }

    pub fn custom(n: usize, cuts: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut cuts: Vec<usize> = cuts.into_iter().collect();
        cuts.push(0);
        cuts.push(n);
        cuts.sort_unstable();
        cuts.dedup();
        if cuts.iter().any(|&c| c > n) {
            return Err(Error::BadCutGrid(format!("cut beyond N = {n}")));
        }
        Ok(CutGrid {
            cuts,
            mode: CutGridMode::Custom,
        })
    }

    /// Default policy: full for `N ≤ 256`, reduced otherwise.
    pub fn auto(n: usize, extra_edges: impl IntoIterator<Item = usize>) -> Self {
        if n <= 256 {
            CutGrid::full(n)
        } else {
            CutGrid::dyadic_endpoints(n, extra_edges)
        }
    }

    pub fn cuts(&self) -> &[usize] {
        &self.cuts
    }

    pub fn contains(&self, c: usize) -> bool {
        self.cuts.binary_search(&c).is_ok()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VariationMode {
    DynamicProgramming,
    Exhaustive,
}

/// `V^r f(x)`: maximize `Σ_j |S_{c_{j+1}} - S_{c_j}|^r` over increasing
/// subsequences of the cut grid, per point; returns the `1/r` power.
pub fn var_carleson(f: &Signal, r: f64, cuts: &CutGrid) -> Result<Signal> {
    var_carleson_with(f, r, cuts, VariationMode::DynamicProgramming)
}

pub fn var_carleson_with(
    f: &Signal,
    r: f64,
    cuts: &CutGrid,
    mode: VariationMode,
) -> Result<Signal> {
    if !(r > 1.0) {
        return Err(Error::BadExponent(format!("variation exponent r = {r} must be > 1")));
    }
    let n = f.len();
    let spectrum = f.spectrum();
    let tau = 2.0 * std::f64::consts::PI;
    let m_cuts = cuts.cuts();
    let values: Vec<Complex64> = (0..n)
        .map(|m| {
            // prefix sums at the cut points only
            let mut prefix = Vec::with_capacity(m_cuts.len());
            let mut acc = Complex64::new(0.0, 0.0);
            let mut xi = 0usize;
            for &c in m_cuts {
                while xi < c {
                    let phase = tau * (xi as f64) * (m as f64) / n as f64;
                    acc += spectrum[xi] * Complex64::new(0.0, phase).exp();
                    xi += 1;
                }
                prefix.push(acc);
            }
            let v = match mode {
                VariationMode::DynamicProgramming => variation_dp(&prefix, r),
                VariationMode::Exhaustive => variation_exhaustive(&prefix, r),
            };
            Complex64::new(v.powf(1.0 / r), 0.0)
        })
        .collect();
    Ok(Signal::from_values(values).expect("power of two"))
}

/// `D[j] = max_{i<j} (D[i] + |S_j - S_i|^r)`; answer `max_j D[j]`.
fn variation_dp(prefix: &[Complex64], r: f64) -> f64 {
    let m = prefix.len();
    let mut d = vec![0.0f64; m];
    let mut best = 0.0f64;
    for j in 1..m {
        for i in 0..j {
            let inc = (prefix[j] - prefix[i]).norm().powf(r);
            d[j] = d[j].max(d[i] + inc);
        }
        best = best.max(d[j]);
    }
    best
}

/// All subsets of cut points (small grids only): the reference oracle.
fn variation_exhaustive(prefix: &[Complex64], r: f64) -> f64 {
    let m = prefix.len();
    assert!(m <= 20, "exhaustive variation is exponential in the cut count");
    let mut best = 0.0f64;
    for mask in 0u32..(1u32 << m) {
        let chosen: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        if chosen.len() < 2 {
            continue;
        }
        let total: f64 = chosen
            .windows(2)
            .map(|w| (prefix[w[1]] - prefix[w[0]]).norm().powf(r))
            .sum();
        best = best.max(total);
    }
    best
}

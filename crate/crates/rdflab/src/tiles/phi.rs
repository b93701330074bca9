//! Rapidly decaying weight functions concentrated on spatial intervals.
//!
//! `Φ_I(z) = (1 + dist(z,I)/|I|)^{-M}` with circular distance, and the
//! square-adapted aggregate `Φ^ω_I = Σ_{J ⊆ I dyadic, |J||ω| = 1} Φ_J`,
//! whose tail decays at the scale `|ω|⁻¹` rather than `|I|`. The overlap
//! constant of these aggregates over disjoint intervals is what the
//! `Energy³` bound runs on.

use crate::tile::SpatialInterval;

/// Default decay exponent.
pub const DEFAULT_DECAY: f64 = 10.0;

/// Weight `Φ_I` (or its aggregated form `Φ^ω_I` when a square side is
/// given): decay exponent, target interval, and the scale of the summed
/// sub-intervals.
#[derive(Clone, Copy, Debug)]
pub struct PhiWeight {
    pub decay: f64,
    pub interval: SpatialInterval,
    /// Grid length of the dyadic sub-intervals `J` (`= N/|ω|`); `None`
    /// evaluates the plain `Φ_I`.
    pub sub_len: Option<usize>,
}

/// Circular distance in grid units from the point `m` to the interval.
fn circ_dist(m: usize, interval: SpatialInterval, n: usize) -> usize {
    let m = m % n;
    if interval.contains_point(m) {
        return 0;
    }
    let last = interval.end() - 1;
    let fwd = (interval.start + n - m) % n; // steps from m forward to start
    let bwd = (m + n - last) % n; // steps from last forward to m
    fwd.min(bwd)
}

impl PhiWeight {
    pub fn plain(interval: SpatialInterval) -> Self {
        PhiWeight {
            decay: DEFAULT_DECAY,
            interval,
            sub_len: None,
        }
    }

    pub fn for_square_side(interval: SpatialInterval, n: usize, side: usize) -> Self {
        PhiWeight {
            decay: DEFAULT_DECAY,
            interval,
            sub_len: Some(n / side),
        }
    }

    pub fn with_decay(mut self, m: f64) -> Self {
        self.decay = m;
        self
    }

    pub fn eval(&self, x: usize, n: usize) -> f64 {
        match self.sub_len {
            None => phi_interval(x, self.interval, n, self.decay),
            Some(j_len) => {
                debug_assert!(j_len <= self.interval.len);
                let mut acc = 0.0;
                let mut start = self.interval.start;
                while start < self.interval.end() {
                    acc += phi_interval(x, SpatialInterval::new(start, j_len), n, self.decay);
                    start += j_len;
                }
                acc
            }
        }
    }

    /// Values over the whole grid.
    pub fn profile(&self, n: usize) -> Vec<f64> {
        (0..n).map(|x| self.eval(x, n)).collect()
    }
}

pub fn phi_interval(x: usize, interval: SpatialInterval, n: usize, decay: f64) -> f64 {
    let d = circ_dist(x, interval, n) as f64 / interval.len as f64;
    (1.0 + d).powf(-decay)
}

/// Certifies the overlap constant: the maximum over grid points of the sum
/// of `Φ_J` over *all* dyadic intervals `J` of one scale (tiling the
/// circle). Any family `{Φ^ω_{I_k}}` with pairwise disjoint `I_k` of length
/// `≥ |ω|⁻¹` sums below this, since their sub-intervals form a sub-family
/// of a single-scale tiling.
pub fn certify_overlap_constant(n: usize, decay: f64) -> f64 {
    let mut worst = 0.0f64;
    let mut j_len = 1usize;
    while j_len <= n {
        // by translation symmetry only the offsets inside one J matter
        for x in 0..j_len {
            let mut acc = 0.0;
            let mut start = 0usize;
            while start < n {
                acc += phi_interval(x, SpatialInterval::new(start, j_len), n, decay);
                start += j_len;
            }
            worst = worst.max(acc);
        }
        j_len *= 2;
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_is_one_inside_and_decays_outside() {
        let n = 64;
        let i = SpatialInterval::new(16, 8);
        let w = PhiWeight::plain(i);
        for x in i.grid_points() {
            assert_eq!(w.eval(x, n), 1.0);
        }
        // one interval-length away: (1 + 1)^{-M}
        let far = w.eval(16 + 8 + 8 - 1, n);
        assert!((far - 2.0f64.powf(-DEFAULT_DECAY)).abs() < 1e-15);
        // decay is monotone moving away (on the short side)
        let mut prev = 1.0;
        for step in 0..20 {
            let v = w.eval((16 + 8 + step) % n, n);
            assert!(v <= prev + 1e-15);
            prev = v;
        }
    }

    #[test]
    fn circular_distance_wraps() {
        let n = 32;
        let i = SpatialInterval::new(0, 4);
        assert_eq!(circ_dist(31, i, n), 1);
        assert_eq!(circ_dist(16, i, n), 13);
    }

    #[test]
    fn aggregated_weight_is_at_least_one_inside() {
        let n = 64;
        let top = SpatialInterval::new(8, 16);
        let w = PhiWeight::for_square_side(top, n, 16); // sub-length 4
        for x in top.grid_points() {
            assert!(w.eval(x, n) >= 1.0, "Φ^ω must be ≥ 1 inside its interval");
        }
    }

    #[test]
    fn overlap_constant_certified_below_four_at_default_decay() {
        for &n in &[16usize, 64, 256] {
            let c = certify_overlap_constant(n, DEFAULT_DECAY);
            assert!(c <= 4.0, "overlap constant {c} exceeds 4 at N = {n}");
            assert!(c >= 1.0);
        }
    }
}

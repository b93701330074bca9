//! Carleson operator on `Z_N` in interval-sup form:
//! `𝒞f(x) = max_{0≤a<b≤N} |π_{[a,b)}f(x)| = max_{a<b} |S_b(x) - S_a(x)|`
//! with `S_j(x) = Σ_{ξ<j} f̂(ξ)e^{2πiξx}` the modulated prefix sums. Per
//! point this is the diameter of the prefix-sum point set, computed by
//! convex hull + rotating calipers; a quadratic all-pairs mode serves as
//! oracle.

use crate::signal::Signal;
use num_complex::Complex64;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CarlesonMode {
    Calipers,
    BruteForce,
}

pub fn carleson(f: &Signal) -> Signal {
    carleson_with(f, CarlesonMode::Calipers)
}

pub fn carleson_with(f: &Signal, mode: CarlesonMode) -> Signal {
    let n = f.len();
    let spectrum = f.spectrum();
    let tau = 2.0 * std::f64::consts::PI;
    let values: Vec<Complex64> = (0..n)
        .map(|m| {
            // prefix sums S_0 … S_N of f̂(ξ)e^{2πiξm/N}
            let mut prefix = Vec::with_capacity(n + 1);
            let mut acc = Complex64::new(0.0, 0.0);
            prefix.push(acc);
            for (xi, c) in spectrum.iter().enumerate() {
                let phase = tau * (xi as f64) * (m as f64) / n as f64;
                acc += c * Complex64::new(0.0, phase).exp();
                prefix.push(acc);
            }
            let pts: Vec<(f64, f64)> = prefix.iter().map(|c| (c.re, c.im)).collect();
            let d = match mode {
                CarlesonMode::Calipers => diameter(&pts),
                CarlesonMode::BruteForce => diameter_brute_force(&pts),
            };
            Complex64::new(d, 0.0)
        })
        .collect();
    Signal::from_values(values).expect("power of two")
}

fn dist2(a: (f64, f64), b: (f64, f64)) -> f64 {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    dx * dx + dy * dy
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Monotone-chain convex hull, counterclockwise, no duplicate endpoints.
fn convex_hull(pts: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut p: Vec<(f64, f64)> = pts.to_vec();
    p.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    p.dedup();
    if p.len() <= 2 {
        return p;
    }
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(2 * p.len());
    for &pt in p.iter() {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0.0 {
            hull.pop();
        }
        hull.push(pt);
    }
    let lower_len = hull.len() + 1;
    for &pt in p.iter().rev() {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0.0
        {
            hull.pop();
        }
        hull.push(pt);
    }
    hull.pop();
    hull
}

/// Diameter of a planar point set via rotating calipers on the hull.
fn diameter(pts: &[(f64, f64)]) -> f64 {
    let hull = convex_hull(pts);
    let h = hull.len();
    match h {
        0 => 0.0,
        1 => 0.0,
        2 => dist2(hull[0], hull[1]).sqrt(),
        _ => {
            let mut best = 0.0f64;
            let mut j = 1usize;
            for i in 0..h {
                let edge_a = hull[i];
                let edge_b = hull[(i + 1) % h];
                // advance the antipodal point while the triangle area grows
                loop {
                    let next = (j + 1) % h;
                    let area_now = (cross(edge_a, edge_b, hull[j])).abs();
                    let area_next = (cross(edge_a, edge_b, hull[next])).abs();
                    if area_next > area_now {
                        j = next;
                    } else {
                        break;
                    }
                }
                best = best.max(dist2(edge_a, hull[j]));
                best = best.max(dist2(edge_b, hull[j]));
            }
            best.sqrt()
        }
    }
}

fn diameter_brute_force(pts: &[(f64, f64)]) -> f64 {
    let mut best = 0.0f64;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            best = best.max(dist2(pts[i], pts[j]));
        }
    }
    best.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::random_signal;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn single_frequency_gives_constant_modulus() {
        let n = 32;
        let c = Complex64::new(0.7, -0.2);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
        coeffs[5] = c;
        let f = Signal::from_spectrum(coeffs).unwrap();
        let cf = carleson(&f);
        for v in cf.values() {
            assert!((v.re - c.norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_signal_gives_zero() {
        let f = Signal::zero(16);
        let cf = carleson(&f);
        assert!(cf.values().iter().all(|v| v.re == 0.0));
    }

    #[test]
    fn calipers_match_brute_force() {
        let mut rng = StdRng::seed_from_u64(21);
        for _ in 0..5 {
            let f = random_signal(64, &mut rng);
            let fast = carleson_with(&f, CarlesonMode::Calipers);
            let slow = carleson_with(&f, CarlesonMode::BruteForce);
            for (a, b) in fast.values().iter().zip(slow.values()) {
                assert!((a.re - b.re).abs() < 1e-12, "{} vs {}", a.re, b.re);
            }
        }
    }

    #[test]
    fn dominates_every_interval_projection() {
        use crate::dyadic::CircularInterval;
        use crate::spectral::project;
        let mut rng = StdRng::seed_from_u64(22);
        let n = 64;
        for _ in 0..20 {
            let f = random_signal(n, &mut rng);
            let cf = carleson(&f);
            let a = rand::Rng::gen_range(&mut rng, 0..n);
            let len = rand::Rng::gen_range(&mut rng, 1..=n - a);
            // non-wrapped interval [a, a+len) — the Carleson sup ranges over these
            let p = project(&f, CircularInterval::new(n, a, len));
            for (pv, cv) in p.values().iter().zip(cf.values()) {
                assert!(pv.norm() <= cv.re + 1e-12);
            }
        }
    }
}

//! Dyadic Hardy–Littlewood maximal function on the grid, by bottom-up
//! aggregation of dyadic-interval averages.

use crate::signal::Signal;
use num_complex::Complex64;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MaximalMode {
    Tree,
    BruteForce,
}

/// `Mf(x) = max over dyadic spatial intervals I ∋ x of ⨍_I |f|`.
pub fn dyadic_maximal(f: &Signal) -> Signal {
    dyadic_maximal_with(f, MaximalMode::Tree)
}

pub fn dyadic_maximal_with(f: &Signal, mode: MaximalMode) -> Signal {
    match mode {
        MaximalMode::Tree => tree_maximal(f),
        MaximalMode::BruteForce => brute_maximal(f),
    }
}

fn tree_maximal(f: &Signal) -> Signal {
    let n = f.len();
    let mut best: Vec<f64> = f.values().iter().map(|c| c.norm()).collect();
    // sums[i] holds the sum of |f| over the current-level block i
    let mut sums = best.clone();
    let mut block = 1usize;
    while block < n {
        block *= 2;
        let levels = n / block;
        let mut next = Vec::with_capacity(levels);
        for b in 0..levels {
            next.push(sums[2 * b] + sums[2 * b + 1]);
        }
        sums = next;
        for (b, s) in sums.iter().enumerate() {
            let avg = s / block as f64;
            for m in b * block..(b + 1) * block {
                if avg > best[m] {
                    best[m] = avg;
                }
            }
        }
    }
    Signal::from_values(best.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
        .expect("power of two")
}

fn brute_maximal(f: &Signal) -> Signal {
    let n = f.len();
    let abs: Vec<f64> = f.values().iter().map(|c| c.norm()).collect();
    let mut best = vec![0.0f64; n];
    let mut block = 1usize;
    while block <= n {
        for b in 0..n / block {
            let avg: f64 = abs[b * block..(b + 1) * block].iter().sum::<f64>() / block as f64;
            for m in b * block..(b + 1) * block {
                best[m] = best[m].max(avg);
            }
        }
        block *= 2;
    }
    Signal::from_values(best.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
        .expect("power of two")
}

//! Seeded collection generators: vertical-line stacks, aligned grids,
//! product families, and greedy random packings. Every output passes
//! collection validation by construction, re-checked at the end.

use crate::dyadic::{DyadicInterval, DyadicSquare, SquareCollection};
use crate::error::{Error, Result};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

fn grid_exponent_of(n: usize) -> Result<u32> {
    if n == 0 || n & (n - 1) != 0 {
        return Err(Error::BadSignalLength(n));
    }
    Ok(n.trailing_zeros())
}

fn square(k: u32, nx: usize, ny: usize, l: u32) -> Result<DyadicSquare> {
    DyadicSquare::new(DyadicInterval::new(k, nx, l)?, DyadicInterval::new(k, ny, l)?)
}

/// `K` disjoint squares all of whose `ω₁` contain the frequency `ξ₀ = 0`;
/// the `ω₂` are then automatically disjoint. Sides vary randomly where
/// space permits.
pub fn gen_line(k_squares: usize, n: usize, seed: u64) -> Result<SquareCollection> {
    let l = grid_exponent_of(n)?;
    if k_squares > n {
        return Err(Error::Infeasible(format!(
            "at most {n} disjoint squares can share a vertical line on Z_{n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // free positions for ω₂, tracked as a unit-cell occupancy map
    let mut occupied = vec![false; n];
    let mut squares = Vec::with_capacity(k_squares);
    while squares.len() < k_squares {
        let remaining = k_squares - squares.len();
        let free: usize = occupied.iter().filter(|&&b| !b).count();
        // try a random side that still leaves room for the rest
        let max_k_side = (l.saturating_sub(2)).min(3);
        let k_side = rng.gen_range(0..=max_k_side);
        let side = 1usize << k_side;
        let fits = side + (remaining - 1) <= free;
        let k_side = if fits { k_side } else { 0 };
        let side = 1usize << k_side;
        // scan ω₂ slots at this scale in a random rotation
        let slots = n / side;
        let offset = rng.gen_range(0..slots);
        let mut placed = false;
        for t in 0..slots {
            let ny = (offset + t) % slots;
            if (ny * side..(ny + 1) * side).all(|c| !occupied[c]) {
                for c in ny * side..(ny + 1) * side {
                    occupied[c] = true;
                }
                squares.push(square(k_side, 0, ny, l)?);
                placed = true;
                break;
            }
        }
        if !placed {
            // only fragmented space remains: fill with a unit square
            let ny = occupied
                .iter()
                .position(|&b| !b)
                .expect("free space was counted above");
            occupied[ny] = true;
            squares.push(square(0, 0, ny, l)?);
        }
    }
    SquareCollection::new(squares, l)
}

/// `m × m` disjoint squares in blocks of size `N/m`; within a grid column
/// all squares share an identical `ω₁` (hence a common frequency), and
/// side lengths vary per column. Requires `m` to be a power of two with
/// `2m ≤ N`.
pub fn gen_grid(m: usize, n: usize, seed: u64) -> Result<SquareCollection> {
    let l = grid_exponent_of(n)?;
    if m == 0 || m & (m - 1) != 0 || 2 * m > n {
        return Err(Error::Infeasible(format!(
            "grid side {m} must be a power of two with 2m ≤ N = {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let block = n / m;
    let block_exp = block.trailing_zeros();
    let mut squares = Vec::with_capacity(m * m);
    for i in 0..m {
        // side ≤ block/2 keeps the spacing large
        let k_side = rng.gen_range(0..block_exp.max(1));
        let side = 1usize << k_side;
        let nx = (i * block) / side;
        for j in 0..m {
            let ny = (j * block) / side;
            squares.push(square(k_side, nx, ny, l)?);
        }
    }
    SquareCollection::new(squares, l)
}

/// Product family `{I × J}` over disjoint dyadic families of one common
/// side length.
pub fn gen_product(
    i_count: usize,
    j_count: usize,
    n: usize,
    seed: u64,
) -> Result<SquareCollection> {
    let l = grid_exponent_of(n)?;
    let max_count = i_count.max(j_count);
    if max_count == 0 {
        return SquareCollection::new(Vec::new(), l);
    }
    if max_count > n {
        return Err(Error::Infeasible(format!(
            "cannot place {max_count} disjoint intervals on Z_{n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // the largest scale that still fits max_count disjoint intervals
    let max_k = (n / max_count).trailing_zeros().min(l.saturating_sub(1));
    let k = rng.gen_range(0..=max_k);
    let slots = 1usize << (l - k);
    let pick = |count: usize, rng: &mut ChaCha8Rng| -> Vec<usize> {
        let mut positions: Vec<usize> = (0..slots).collect();
        for t in (1..positions.len()).rev() {
            let u = rng.gen_range(0..=t);
            positions.swap(t, u);
        }
        positions.truncate(count);
        positions
    };
    let is = pick(i_count, &mut rng);
    let js = pick(j_count, &mut rng);
    let mut squares = Vec::with_capacity(i_count * j_count);
    for &nx in &is {
        for &ny in &js {
            squares.push(square(k, nx, ny, l)?);
        }
    }
    SquareCollection::new(squares, l)
}

/// Greedy random insertion of disjoint dyadic squares with random sides
/// until `K` are accepted; errors with the achieved count after a bounded
/// number of attempts.
pub fn gen_random_packing(k_squares: usize, n: usize, seed: u64) -> Result<SquareCollection> {
    let l = grid_exponent_of(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut squares: Vec<DyadicSquare> = Vec::with_capacity(k_squares);
    let budget = 200 * k_squares + 1000;
    let mut attempts = 0usize;
    while squares.len() < k_squares && attempts < budget {
        attempts += 1;
        // bias toward small sides so later insertions keep succeeding
        let k_max = l.saturating_sub(2);
        let k = rng.gen_range(0..=k_max.min(4));
        let slots = 1usize << (l - k);
        let cand = square(k, rng.gen_range(0..slots), rng.gen_range(0..slots), l)?;
        if squares
            .iter()
            .all(|s| s.is_disjoint_from(&cand).unwrap_or(false))
        {
            squares.push(cand);
        }
    }
    if squares.len() < k_squares {
        return Err(Error::Infeasible(format!(
            "packing reached only {} of {k_squares} squares",
            squares.len()
        )));
    }
    SquareCollection::new(squares, l)
}

//! The trilinear form, its discretization over tile populations, the
//! dualization producing the extremal vector function, and the structured
//! bounds: per-column/row estimates, the variation-controlled extra term,
//! and the two-term size/energy majorant.

use crate::dyadic::SquareCollection;
use crate::error::{Error, Result};
use crate::operators::{var_carleson, CutGrid};
use crate::signal::Signal;
use crate::spectral::{bilinear_project, project, VectorFunction};
use crate::tile::{Orientation, TilePopulation, TreeFamily};
use crate::tiles::coefficients::{coefficients, TileCoefficients};
use crate::tiles::size::{size_axis, Size3Engine};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// `Λ_P = Σ_P f(P₁) g(P₂) h(P₃) |I_P|` over the subset, `|I_P|` physical.
pub fn trilinear_discrete(
    pop: &TilePopulation,
    coeffs: &TileCoefficients,
    subset: &[usize],
) -> f64 {
    let n = pop.grid_size();
    subset
        .iter()
        .map(|&i| {
            coeffs.f_p1[i]
                * coeffs.g_p2[i]
                * coeffs.h_p3[i]
                * pop.tile(i).time.physical_len(n)
        })
        .sum()
}

/// `Λ(f,g,h) = (1/N) Σ_x Σ_ω π_{ω₁}f(x) π_{ω₂}g(x) h_ω(x)`.
pub fn trilinear_continuous(
    f: &Signal,
    g: &Signal,
    h: &VectorFunction,
    omega: &SquareCollection,
) -> Complex64 {
    let n = omega.grid_size();
    let mut acc = Complex64::new(0.0, 0.0);
    for sq in omega.iter() {
        let Some(h_comp) = h.get(sq) else { continue };
        let p = bilinear_project(f, g, sq);
        for (a, b) in p.values().iter().zip(h_comp.values()) {
            acc += a * b;
        }
    }
    acc / n as f64
}

/// Dualizing family for the `ℓ^r` aggregate: with `t_ω = π_ω(f,g)`,
/// `ε_ω = conj(t_ω)|t_ω|^{r-2} / ‖t(x)‖_{ℓ^r}^{r-1}` (zero where the
/// denominator vanishes) satisfies `‖ε(x)‖_{ℓ^{r'}} ≤ 1` and
/// `Σ_ω t_ω ε_ω = ‖t(x)‖_{ℓ^r}` pointwise; the output is
/// `h_ω = h_scalar · ε_ω`.
pub fn dual_h(
    h_scalar: &Signal,
    f: &Signal,
    g: &Signal,
    omega: &SquareCollection,
    r: f64,
) -> Result<VectorFunction> {
    if !(r > 1.0) {
        return Err(Error::BadExponent(format!("r = {r} must be > 1")));
    }
    let n = omega.grid_size();
    let projections: Vec<Signal> = omega
        .iter()
        .map(|sq| bilinear_project(f, g, sq))
        .collect();
    let mut norms = vec![0.0f64; n];
    for p in &projections {
        for (acc, c) in norms.iter_mut().zip(p.values()) {
            *acc += c.norm().powf(r);
        }
    }
    for v in norms.iter_mut() {
        *v = v.powf(1.0 / r);
    }
    let mut entries = BTreeMap::new();
    for (sq, p) in omega.iter().zip(&projections) {
        let values = p
            .values()
            .iter()
            .zip(&norms)
            .zip(h_scalar.values())
            .map(|((t, &norm), hx)| {
                if norm == 0.0 || t.norm() == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    hx * t.conj() * t.norm().powf(r - 2.0) / norm.powf(r - 1.0)
                }
            })
            .collect();
        entries.insert(*sq, Signal::from_values(values)?);
    }
    VectorFunction::new(omega, entries)
}

/// Both sides of the per-column (per-row) estimate: the restricted discrete
/// form against the product of the local average term, the sizes, and the
/// top length.
pub fn column_row_bound(
    pop: &TilePopulation,
    family: &TreeFamily,
    f: &Signal,
    g: &Signal,
    h: &VectorFunction,
    r0: f64,
    r: f64,
    decay: f64,
) -> Result<(f64, f64)> {
    family.validate(pop)?;
    let n = pop.grid_size();
    let coeffs = coefficients(f, g, h, pop, r0, r)?;
    let lhs = trilinear_discrete(pop, &coeffs, &family.members);

    let top_len = pop.tile(family.top).time.physical_len(n);
    let sigma = (r - r0) / r;

    // the local-average factor uses the opposite function to the
    // orientation: columns average g, rows average f
    let (avg_sig, own_axis) = match family.orientation {
        Orientation::Column => (g, 1u8),
        Orientation::Row => (f, 2u8),
    };
    let other_axis = 3 - own_axis;
    let mut avg = 0.0;
    for &i in &family.members {
        let tile = pop.tile(i);
        let proj = project(avg_sig, tile.omega_j(other_axis).into());
        for m in tile.time.grid_points() {
            avg += proj.values()[m].norm().powf(r0);
        }
    }
    let avg = avg / pop.tile(family.top).time.len as f64;

    let s_own = size_axis(&coeffs, &family.members, own_axis);
    let s_other = size_axis(&coeffs, &family.members, other_axis);
    let engine = Size3Engine::new(pop, h, r, decay);
    let s3 = engine.size3(&family.members);

    let rhs = avg.powf(1.0 / r) * s_own * s_other.powf(sigma) * s3 * top_len;
    Ok((lhs, rhs))
}

/// The variation-controlled extra term: for a column,
/// `lhs = (1/|I_C|) Σ_P ∫_{I_P} |π_{ω₂(P)}g|^{r₀}` and
/// `rhs = ⨍_{I_C} (V^{r₀}g)^{r₀}`; rows mirror with `f` and `ω₁`. The
/// bound holds with constant one when the cut grid contains the relevant
/// `ω` endpoints.
pub fn extra_term(
    pop: &TilePopulation,
    family: &TreeFamily,
    sig: &Signal,
    r0: f64,
    cuts: &CutGrid,
) -> Result<(f64, f64)> {
    family.validate(pop)?;
    let other_axis = match family.orientation {
        Orientation::Column => 2u8,
        Orientation::Row => 1u8,
    };
    let top = pop.tile(family.top);
    let mut lhs = 0.0;
    for &i in &family.members {
        let tile = pop.tile(i);
        let proj = project(sig, tile.omega_j(other_axis).into());
        for m in tile.time.grid_points() {
            lhs += proj.values()[m].norm().powf(r0);
        }
    }
    lhs /= top.time.len as f64;

    let v = var_carleson(sig, r0, cuts)?;
    let mut rhs = 0.0;
    for m in top.time.grid_points() {
        rhs += v.values()[m].re.powf(r0);
    }
    rhs /= top.time.len as f64;
    Ok((lhs, rhs))
}

/// Snapshot of the six size/energy functionals with the derived exponents.
#[derive(Clone, Copy, Debug)]
pub struct SizeEnergyReport {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub r0: f64,
    pub r: f64,
}

impl SizeEnergyReport {
    pub fn sigma(&self) -> f64 {
        (self.r - self.r0) / self.r
    }

    pub fn gamma(&self) -> f64 {
        2f64.powf(self.r0 / (self.r / (self.r - 1.0)))
    }

    pub fn r_prime(&self) -> f64 {
        self.r / (self.r - 1.0)
    }
}

/// Evaluates the two-term right-hand side of the general estimate at the
/// interpolation parameters `θ`, `ξ` (each summing to one and inside the
/// admissible box). `sup_var_g`/`sup_var_f` are the bracketed sup-average
/// variation terms multiplying the first/second product.
pub fn general_estimate_rhs(
    report: &SizeEnergyReport,
    theta: [f64; 3],
    xi: [f64; 3],
    sup_var_g: f64,
    sup_var_f: f64,
) -> Result<f64> {
    let sigma = report.sigma();
    let half_cap = (2.0 * sigma).recip().min(1.0);
    let check_sum = |v: [f64; 3], name: &str| {
        if (v[0] + v[1] + v[2] - 1.0).abs() > 1e-12 {
            return Err(Error::BadParameter(format!("{name} must sum to 1")));
        }
        Ok(())
    };
    check_sum(theta, "θ")?;
    check_sum(xi, "ξ")?;
    let in_range = |v: f64, lo_open: bool, hi: f64| {
        if lo_open {
            v > 0.0 && v <= hi
        } else {
            (0.0..=hi).contains(&v)
        }
    };
    if !in_range(theta[0], false, half_cap)
        || !in_range(theta[1], false, 0.5)
        || !in_range(theta[2], true, 1.0)
    {
        return Err(Error::BadParameter(format!("θ = {theta:?} out of range")));
    }
    if !in_range(xi[0], false, 0.5)
        || !in_range(xi[1], false, half_cap)
        || !in_range(xi[2], true, 1.0)
    {
        return Err(Error::BadParameter(format!("ξ = {xi:?} out of range")));
    }

    let rp_over_r0 = report.r_prime() / report.r0;
    let pow = |base: f64, e: f64| {
        if base == 0.0 && e == 0.0 {
            1.0
        } else {
            base.powf(e)
        }
    };
    let term1 = pow(sup_var_g, 1.0 / report.r)
        * pow(report.s1, 2.0 * sigma * theta[0])
        * pow(report.e1, 1.0 - 2.0 * sigma * theta[0])
        * pow(report.s2, 2.0 * sigma * theta[1])
        * pow(report.e2, sigma - 2.0 * sigma * theta[1])
        * pow(report.s3, 2.0 * sigma * theta[2] * rp_over_r0)
        * pow(report.e3, 1.0 - 2.0 * sigma * theta[2] * rp_over_r0);
    let term2 = pow(sup_var_f, 1.0 / report.r)
        * pow(report.s1, 2.0 * sigma * xi[0])
        * pow(report.e1, sigma - 2.0 * sigma * xi[0])
        * pow(report.s2, 2.0 * sigma * xi[1])
        * pow(report.e2, 1.0 - 2.0 * sigma * xi[1])
        * pow(report.s3, 2.0 * sigma * xi[2] * rp_over_r0)
        * pow(report.e3, 1.0 - 2.0 * sigma * xi[2] * rp_over_r0);
    Ok(term1 + term2)
}

/// The bracketed sup-average variation terms over a subset:
/// `sup_P ⨍_{I_P} (V^{r₀}·)^{r₀}` for `g` and `f`.
pub fn sup_variation_averages(
    pop: &TilePopulation,
    subset: &[usize],
    f: &Signal,
    g: &Signal,
    r0: f64,
    cuts: &CutGrid,
) -> Result<(f64, f64)> {
    let vf = var_carleson(f, r0, cuts)?;
    let vg = var_carleson(g, r0, cuts)?;
    let mut sup_f = 0.0f64;
    let mut sup_g = 0.0f64;
    for &i in subset {
        let tile = pop.tile(i);
        let mut af = 0.0;
        let mut ag = 0.0;
        for m in tile.time.grid_points() {
            af += vf.values()[m].re.powf(r0);
            ag += vg.values()[m].re.powf(r0);
        }
        sup_f = sup_f.max(af / tile.time.len as f64);
        sup_g = sup_g.max(ag / tile.time.len as f64);
    }
    Ok((sup_g, sup_f))
}

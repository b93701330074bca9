//! Complex signals on the `N`-point spatial grid with cached spectra.
//!
//! Conventions: samples live at `x_m = m/N`; the analysis transform is
//! `f̂(ξ) = (1/N) Σ_m f(x_m) e^{-2πiξm/N}` so that `‖f‖_{L^p}` matches the
//! Riemann sum of the continuum torus and Plancherel reads
//! `(1/N)Σ|f|² = Σ|f̂|²`. Synthesis inverts exactly.

use crate::error::{Error, Result};
use crate::tile::SpatialInterval;
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::io::{Read, Write};
use std::sync::{Arc, OnceLock};

/// Immutable complex signal; the spectrum is computed once on first use.
#[derive(Clone, Debug)]
pub struct Signal {
    values: Arc<Vec<Complex64>>,
    spectrum: Arc<OnceLock<Arc<Vec<Complex64>>>>,
}

fn is_power_of_two(n: usize) -> bool {
    n != 0 && n & (n - 1) == 0
}

impl Signal {
    pub fn from_values(values: Vec<Complex64>) -> Result<Self> {
        if !is_power_of_two(values.len()) {
            return Err(Error::BadSignalLength(values.len()));
        }
        Ok(Signal {
            values: Arc::new(values),
            spectrum: Arc::new(OnceLock::new()),
        })
    }

    /// Synthesizes `f(x_m) = Σ_ξ c_ξ e^{2πiξm/N}` and seeds the cache with
    /// the given coefficients.
    pub fn from_spectrum(coeffs: Vec<Complex64>) -> Result<Self> {
        if !is_power_of_two(coeffs.len()) {
            return Err(Error::BadSignalLength(coeffs.len()));
        }
        let mut buf = coeffs.clone();
        let mut planner = FftPlanner::new();
        planner.plan_fft_inverse(buf.len()).process(&mut buf);
        let sig = Signal {
            values: Arc::new(buf),
            spectrum: Arc::new(OnceLock::new()),
        };
        let _ = sig.spectrum.set(Arc::new(coeffs));
        Ok(sig)
    }

    pub fn zero(n: usize) -> Self {
        Signal::from_values(vec![Complex64::new(0.0, 0.0); n]).expect("power of two")
    }

    pub fn constant(n: usize, c: Complex64) -> Self {
        Signal::from_values(vec![c; n]).expect("power of two")
    }

    /// Pure wave `e^{2πiξx}` at integer frequency `xi`.
    pub fn wave(n: usize, xi: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
        coeffs[xi % n] = Complex64::new(1.0, 0.0);
        Signal::from_spectrum(coeffs).expect("power of two")
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Fourier coefficients `f̂(ξ)`, `ξ ∈ {0,…,N-1}` (computed once).
    pub fn spectrum(&self) -> &[Complex64] {
        self.spectrum.get_or_init(|| {
            let n = self.values.len();
            let mut buf = self.values.as_ref().clone();
            let mut planner = FftPlanner::new();
            planner.plan_fft_forward(n).process(&mut buf);
            let scale = 1.0 / n as f64;
            for c in buf.iter_mut() {
                *c *= scale;
            }
            Arc::new(buf)
        })
    }

    /// `L^p` (quasi-)norm `((1/N) Σ |f(x_m)|^p)^{1/p}`; the max for `p = ∞`.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        if p.is_infinite() && p > 0.0 {
            return Ok(self
                .values
                .iter()
                .map(|c| c.norm())
                .fold(0.0f64, f64::max));
        }
        if !(p > 0.0) {
            return Err(Error::BadExponent(format!("p = {p} must be positive")));
        }
        let n = self.len() as f64;
        let sum: f64 = self.values.iter().map(|c| c.norm().powf(p)).sum();
        Ok((sum / n).powf(1.0 / p))
    }

    /// `(⨍_I |f|^{r₀})^{1/r₀}` over the grid points of `I`.
    pub fn local_average(&self, interval: SpatialInterval, r0: f64) -> Result<f64> {
        if interval.len == 0 {
            return Err(Error::EmptyInterval);
        }
        if !(r0 > 0.0) {
            return Err(Error::BadExponent(format!("r0 = {r0} must be positive")));
        }
        let mut sum = 0.0;
        for m in interval.grid_points() {
            sum += self.values[m % self.len()].norm().powf(r0);
        }
        Ok((sum / interval.len as f64).powf(1.0 / r0))
    }

    /// Pointwise map producing a new signal.
    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Signal {
        Signal::from_values(self.values.iter().map(|&c| f(c)).collect()).expect("same length")
    }

    pub fn pointwise_mul(&self, other: &Signal) -> Signal {
        assert_eq!(self.len(), other.len(), "grid mismatch");
        Signal::from_values(
            self.values
                .iter()
                .zip(other.values.iter())
                .map(|(&a, &b)| a * b)
                .collect(),
        )
        .expect("same length")
    }
}

/// Binary signal record: `N` as little-endian u64, then `N` pairs of
/// little-endian f64 `(re, im)`. Round-trips exactly.
pub fn write_signal<W: Write>(w: &mut W, sig: &Signal) -> Result<()> {
    w.write_all(&(sig.len() as u64).to_le_bytes())?;
    for c in sig.values() {
        w.write_all(&c.re.to_le_bytes())?;
        w.write_all(&c.im.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_signal<R: Read>(r: &mut R) -> Result<Signal> {
    let mut len_buf = [0u8; 8];
    r.read_exact(&mut len_buf)?;
    let n = u64::from_le_bytes(len_buf) as usize;
    let mut values = Vec::with_capacity(n);
    let mut buf = [0u8; 8];
    for _ in 0..n {
        r.read_exact(&mut buf)?;
        let re = f64::from_le_bytes(buf);
        r.read_exact(&mut buf)?;
        let im = f64::from_le_bytes(buf);
        values.push(Complex64::new(re, im));
    }
    Signal::from_values(values)
}

/// Random signal with iid standard complex Gaussian samples.
pub fn random_signal(n: usize, rng: &mut impl rand::Rng) -> Signal {
    use rand::distributions::Distribution;
    let normal = rand_distr_standard_normal();
    let values = (0..n)
        .map(|_| Complex64::new(normal.sample(rng), normal.sample(rng)))
        .collect();
    Signal::from_values(values).expect("power of two")
}

// rand's StandardNormal lives in rand_distr; a Box-Muller fallback keeps the
// dependency list short.
struct BoxMuller;

impl rand::distributions::Distribution<f64> for BoxMuller {
    fn sample<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let u2: f64 = rng.gen::<f64>();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }
}

fn rand_distr_standard_normal() -> impl rand::distributions::Distribution<f64> {
    BoxMuller
}

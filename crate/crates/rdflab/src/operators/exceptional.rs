//! Exceptional-set construction for restricted-weak-type runs: the union of
//! four maximal-operator super-level sets is removed from `H` to obtain the
//! major subset `H'`; the threshold constant escalates until `|H'| > |H|/2`.

use crate::error::{Error, Result};
use crate::operators::{carleson, dyadic_maximal, var_carleson, CutGrid};
use crate::signal::Signal;

/// Subset of grid points, with measure `|E| = #points / N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mask {
    bits: Vec<bool>,
}

impl Mask {
    pub fn new(bits: Vec<bool>) -> Self {
        Mask { bits }
    }

    pub fn empty(n: usize) -> Self {
        Mask { bits: vec![false; n] }
    }

    pub fn full(n: usize) -> Self {
        Mask { bits: vec![true; n] }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn contains(&self, m: usize) -> bool {
        self.bits[m]
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Physical measure `#points / N`.
    pub fn measure(&self) -> f64 {
        self.count() as f64 / self.bits.len() as f64
    }

    pub fn union(&self, other: &Mask) -> Mask {
        Mask::new(
            self.bits
                .iter()
                .zip(&other.bits)
                .map(|(&a, &b)| a || b)
                .collect(),
        )
    }

    pub fn minus(&self, other: &Mask) -> Mask {
        Mask::new(
            self.bits
                .iter()
                .zip(&other.bits)
                .map(|(&a, &b)| a && !b)
                .collect(),
        )
    }

    pub fn complement(&self) -> Mask {
        Mask::new(self.bits.iter().map(|&b| !b).collect())
    }
}

#[derive(Clone, Debug)]
pub struct ExceptionalParams {
    /// Exponent on `𝒞f` (the paper-scale choice is far larger; the default
    /// keeps the dynamic range usable at desk scale).
    pub p_exp: f64,
    /// Exponent on `𝒞g`.
    pub q_exp: f64,
    pub r0: f64,
    /// Initial threshold constant; doubled on each retry.
    pub k_start: f64,
    pub max_rounds: u32,
    pub cuts: Option<CutGrid>,
}

impl ExceptionalParams {
    /// Defaults derived from `r`: `r₀ = (r+2)/2`, `𝔭 = 𝔮 = 4·r₀`, `K = 4`,
    /// up to 8 doublings.
    pub fn for_r(r: f64) -> Self {
        let r0 = (r + 2.0) / 2.0;
        ExceptionalParams {
            p_exp: 4.0 * r0,
            q_exp: 4.0 * r0,
            r0,
            k_start: 4.0,
            max_rounds: 8,
            cuts: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExceptionalSetReport {
    pub exceptional: Mask,
    pub retained: Mask,
    pub exceptional_measure: f64,
    pub retained_measure: f64,
    /// The four super-level sets at the final constant, in the order
    /// `M(|𝒞f|^𝔭)`, `M(|𝒞g|^𝔮)`, `M(|V^{r₀}f|^{r₀})`, `M(|V^{r₀}g|^{r₀})`.
    pub components: [Mask; 4],
    /// Final threshold constant.
    pub k_used: f64,
    /// Whether `|H'| > |H|/2` was reached within the escalation budget.
    pub succeeded: bool,
    pub rounds: u32,
}

fn check_dominated(f: &Signal, mask: &Mask, name: &str) -> Result<()> {
    for (m, c) in f.values().iter().enumerate() {
        let bound = if mask.contains(m) { 1.0 + 1e-12 } else { 1e-12 };
        if c.norm() > bound {
            return Err(Error::NotDominated(format!(
                "|{name}({m})| = {} exceeds the indicator of its set",
                c.norm()
            )));
        }
    }
    Ok(())
}

fn superlevel(sig: &Signal, threshold: f64) -> Mask {
    Mask::new(sig.values().iter().map(|c| c.re > threshold).collect())
}

/// Builds `E` as the union of the four threshold sets and `H' = H∖E`,
/// doubling the constant until the major-subset condition holds.
pub fn exceptional_set(
    f: &Signal,
    g: &Signal,
    f_support: &Mask,
    g_support: &Mask,
    target: &Mask,
    params: &ExceptionalParams,
) -> Result<ExceptionalSetReport> {
    let n = f.len();
    check_dominated(f, f_support, "f")?;
    check_dominated(g, g_support, "g")?;
    let (mf, mg, mh) = (
        f_support.measure(),
        g_support.measure(),
        target.measure(),
    );
    if mf == 0.0 || mg == 0.0 || mh == 0.0 {
        return Err(Error::BadParameter(
            "the sets F, G, H must have positive measure".into(),
        ));
    }

    let cuts = params
        .cuts
        .clone()
        .unwrap_or_else(|| CutGrid::auto(n, std::iter::empty()));

    let cf = carleson(f);
    let cg = carleson(g);
    let vf = var_carleson(f, params.r0, &cuts)?;
    let vg = var_carleson(g, params.r0, &cuts)?;

    let m_cf = dyadic_maximal(&cf.map(|c| num_complex::Complex64::new(c.norm().powf(params.p_exp), 0.0)));
    let m_cg = dyadic_maximal(&cg.map(|c| num_complex::Complex64::new(c.norm().powf(params.q_exp), 0.0)));
    let m_vf = dyadic_maximal(&vf.map(|c| num_complex::Complex64::new(c.norm().powf(params.r0), 0.0)));
    let m_vg = dyadic_maximal(&vg.map(|c| num_complex::Complex64::new(c.norm().powf(params.r0), 0.0)));

    let ratio_f = mf / mh;
    let ratio_g = mg / mh;

    let mut k = params.k_start;
    let mut rounds = 0;
    loop {
        rounds += 1;
        let components = [
            superlevel(&m_cf, k * ratio_f),
            superlevel(&m_cg, k * ratio_g),
            superlevel(&m_vf, k * ratio_f),
            superlevel(&m_vg, k * ratio_g),
        ];
        let exceptional = components
            .iter()
            .fold(Mask::empty(n), |acc, m| acc.union(m));
        let retained = target.minus(&exceptional);
        let succeeded = retained.measure() > mh / 2.0;
        if succeeded || rounds >= params.max_rounds {
            return Ok(ExceptionalSetReport {
                exceptional_measure: exceptional.measure(),
                retained_measure: retained.measure(),
                exceptional,
                retained,
                components,
                k_used: k,
                succeeded,
                rounds,
            });
        }
        k *= 2.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn constant_one_on_full_torus_keeps_everything() {
        let n = 64;
        let one = Signal::constant(n, Complex64::new(1.0, 0.0));
        let full = Mask::full(n);
        let params = ExceptionalParams::for_r(3.0);
        let rep = exceptional_set(&one, &one, &full, &full, &full, &params).unwrap();
        assert!(rep.succeeded);
        assert_eq!(rep.exceptional.count(), 0);
        assert_eq!(rep.retained, full);
        assert_eq!(rep.k_used, 4.0);
    }

    #[test]
    fn zero_inputs_give_empty_exceptional_set() {
        let n = 32;
        let zero = Signal::zero(n);
        let full = Mask::full(n);
        let params = ExceptionalParams::for_r(3.0);
        let rep = exceptional_set(&zero, &zero, &full, &full, &full, &params).unwrap();
        assert_eq!(rep.exceptional.count(), 0);
    }

    #[test]
    fn domination_violation_is_rejected() {
        let n = 32;
        let big = Signal::constant(n, Complex64::new(2.0, 0.0));
        let full = Mask::full(n);
        let params = ExceptionalParams::for_r(3.0);
        assert!(exceptional_set(&big, &big, &full, &full, &full, &params).is_err());
    }

    #[test]
    fn concentrated_bump_reaches_major_subset() {
        let n = 256;
        let mut rng = StdRng::seed_from_u64(51);
        // F is 1/16 of H = full torus
        let mut fbits = vec![false; n];
        for b in fbits.iter_mut().take(n / 16) {
            *b = true;
        }
        let fmask = Mask::new(fbits);
        let gmask = Mask::full(n);
        let h = Mask::full(n);
        let fvals = (0..n)
            .map(|m| {
                if fmask.contains(m) {
                    Complex64::new(rng.gen_range(0.0..1.0), 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        let f = Signal::from_values(fvals).unwrap();
        let g = Signal::constant(n, Complex64::new(0.5, 0.0));
        let params = ExceptionalParams::for_r(3.0);
        let rep = exceptional_set(&f, &g, &fmask, &gmask, &h, &params).unwrap();
        assert!(rep.succeeded, "K escalation exhausted at K = {}", rep.k_used);
        assert!(rep.retained_measure > h.measure() / 2.0);
        // H' ⊆ H
        for m in 0..n {
            if rep.retained.contains(m) {
                assert!(h.contains(m));
            }
        }
    }
}

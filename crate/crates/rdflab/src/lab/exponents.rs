//! Exponent bookkeeping: Hölder-consistent tuples and the admissible
//! region `r' < p,q < r`, `r'/2 < s < r/2` attached to a fixed `r > 2`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentTuple {
    pub p: f64,
    pub q: f64,
    pub s: f64,
    pub r: f64,
}

impl ExponentTuple {
    /// Builds the tuple with `s` from the scaling relation
    /// `1/p + 1/q = 1/s`.
    pub fn from_pqr(p: f64, q: f64, r: f64) -> Result<Self> {
        if !(p > 0.0 && q > 0.0 && r > 1.0) {
            return Err(Error::BadExponent(format!(
                "need p,q > 0 and r > 1, got ({p},{q},{r})"
            )));
        }
        Ok(ExponentTuple {
            p,
            q,
            s: 1.0 / (1.0 / p + 1.0 / q),
            r,
        })
    }

    pub fn new(p: f64, q: f64, s: f64, r: f64) -> Result<Self> {
        let t = Self::from_pqr(p, q, r)?;
        if (1.0 / p + 1.0 / q - 1.0 / s).abs() > 1e-12 {
            return Err(Error::BadExponent(format!(
                "1/{p} + 1/{q} ≠ 1/{s}"
            )));
        }
        Ok(ExponentTuple { s, ..t })
    }

    pub fn r_prime(&self) -> f64 {
        self.r / (self.r - 1.0)
    }

    /// Strict membership in the uniformity range.
    pub fn in_range(&self) -> bool {
        let rp = self.r_prime();
        self.r > 2.0
            && self.p > rp
            && self.p < self.r
            && self.q > rp
            && self.q < self.r
            && self.s > rp / 2.0
            && self.s < self.r / 2.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdmissibleRange {
    /// Open interval for both `p` and `q`.
    pub pq: (f64, f64),
    /// Open interval for `s`.
    pub s: (f64, f64),
}

/// The exponent region of the uniformity statement for a given `r > 2`.
pub fn admissible_range(r: f64) -> Result<AdmissibleRange> {
    if !(r > 2.0) {
        return Err(Error::BadExponent(format!("r = {r} must exceed 2")));
    }
    let rp = r / (r - 1.0);
    Ok(AdmissibleRange {
        pq: (rp, r),
        s: (rp / 2.0, r / 2.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissible_range_examples() {
        let a = admissible_range(3.0).unwrap();
        assert!((a.pq.0 - 1.5).abs() < 1e-12 && (a.pq.1 - 3.0).abs() < 1e-12);
        assert!((a.s.0 - 0.75).abs() < 1e-12 && (a.s.1 - 1.5).abs() < 1e-12);

        let a = admissible_range(4.0).unwrap();
        assert!((a.pq.0 - 4.0 / 3.0).abs() < 1e-12 && (a.pq.1 - 4.0).abs() < 1e-12);
        assert!((a.s.0 - 2.0 / 3.0).abs() < 1e-12 && (a.s.1 - 2.0).abs() < 1e-12);

        assert!(admissible_range(2.0).is_err());
    }

    #[test]
    fn boundary_is_excluded() {
        // p exactly r' is out (strict inequalities)
        let t = ExponentTuple::from_pqr(1.5, 2.9, 3.0).unwrap();
        assert!(!t.in_range());
        let t = ExponentTuple::from_pqr(2.5, 2.5, 3.0).unwrap();
        assert!(t.in_range());
        assert!((t.s - 1.25).abs() < 1e-12);
    }

    #[test]
    fn holder_relation_enforced() {
        assert!(ExponentTuple::new(2.0, 2.0, 1.0, 3.0).is_ok());
        assert!(ExponentTuple::new(2.0, 2.0, 1.1, 3.0).is_err());
    }
}

//! The Boolean oracle marking candidates whose conformation has penalty
//! below `delta`.
//!
//! The penalty is first normalized into `[0, 1]` by `p1 = 6^4 (n^6 + n^2)`
//! and then raised to `1/p2` with `p2 = log_(1-eps)(delta / p1)`. This puts
//! every solution below `1 - eps` and every non-solution in `[1 - eps, 1]`,
//! so `f(k) = 1 - floor(value + eps)` is exactly the solution indicator.

use rayon::prelude::*;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::geometry::{penalty, realize, InternalCoords};
use crate::instance::DmdgpInstance;

pub const DEFAULT_DELTA: f64 = 1e-4;
pub const DEFAULT_EPSILON: f64 = 0.5;
pub const DEFAULT_SCAN_CAP: u64 = 1 << 24;

/// `6^4 (n^6 + n^2)`, an upper bound on `g` for distances within 6 angstroms.
pub fn normalization(n: usize) -> f64 {
    let n = n as f64;
    6f64.powi(4) * (n.powi(6) + n.powi(2))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleParams {
    pub n: usize,
    pub delta: f64,
    pub epsilon: f64,
    pub p1: f64,
    pub p2: f64,
}

impl OracleParams {
    pub fn new(n: usize, delta: f64, epsilon: f64) -> Result<Self> {
        if n < 4 {
            return Err(Error::TooFewVertices(n));
        }
        if !(delta > 0.0) {
            return Err(Error::OracleParams(format!("delta must be positive, got {delta}")));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::OracleParams(format!("epsilon must lie in (0, 1), got {epsilon}")));
        }
        if !(delta + epsilon < 1.0) {
            return Err(Error::OracleParams(format!("need delta + epsilon < 1, got {delta} + {epsilon}")));
        }
        let p1 = normalization(n);
        let p2 = (delta / p1).ln() / (1.0 - epsilon).ln();
        debug_assert!(p2 > 0.0);
        Ok(Self { n, delta, epsilon, p1, p2 })
    }

    pub fn with_defaults(n: usize) -> Self {
        Self::new(n, DEFAULT_DELTA, DEFAULT_EPSILON).expect("default parameters are valid")
    }

    /// `g / p1`.
    pub fn normalized(&self, g: f64) -> f64 {
        g / self.p1
    }

    /// `(g / p1)^(1/p2)`, with `g = 0` mapped to `0`.
    pub fn threshold_value(&self, g: f64) -> f64 {
        if g == 0.0 {
            0.0
        } else {
            self.normalized(g).powf(1.0 / self.p2)
        }
    }

    /// `1 - floor(value + eps)`.
    pub fn indicator(&self, g: f64) -> i64 {
        1 - (self.threshold_value(g) + self.epsilon).floor() as i64
    }
}

/// One row of an oracle scan.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleEvaluation {
    pub index: u64,
    pub bits: BitString,
    pub penalty: f64,
    pub normalized: f64,
    pub value: f64,
    pub marked: bool,
}

/// The oracle `f` bound to one instance.
#[derive(Clone, Debug)]
pub struct Oracle<'a> {
    instance: &'a DmdgpInstance,
    internal: &'a InternalCoords,
    params: OracleParams,
}

impl<'a> Oracle<'a> {
    pub fn new(instance: &'a DmdgpInstance, internal: &'a InternalCoords, params: OracleParams) -> Self {
        assert_eq!(instance.n(), params.n, "oracle parameters were built for another n");
        assert_eq!(instance.n(), internal.n());
        Self { instance, internal, params }
    }

    pub fn params(&self) -> &OracleParams {
        &self.params
    }

    pub fn size(&self) -> u64 {
        self.instance.candidate_count()
    }

    pub fn evaluate(&self, index: u64) -> OracleEvaluation {
        assert!(index < self.size(), "candidate {index} out of range");
        let bits = BitString::from_index(index, self.instance.n() - 3);
        let conf = realize(self.internal, &bits).expect("bit length matches instance");
        let g = penalty(&conf, self.instance);
        OracleEvaluation {
            index,
            bits,
            penalty: g,
            normalized: self.params.normalized(g),
            value: self.params.threshold_value(g),
            marked: self.params.indicator(g) == 1,
        }
    }

    /// `f(k)`.
    pub fn eval(&self, index: u64) -> bool {
        self.evaluate(index).marked
    }

    pub fn scan(&self) -> Result<Vec<OracleEvaluation>> {
        self.check_cap(DEFAULT_SCAN_CAP)?;
        Ok((0..self.size()).into_par_iter().map(|k| self.evaluate(k)).collect())
    }

    pub fn marked_set(&self) -> Result<Vec<u64>> {
        self.marked_set_with_cap(DEFAULT_SCAN_CAP)
    }

    /// Every index with `f(k) = 1`, ascending.
    pub fn marked_set_with_cap(&self, cap: u64) -> Result<Vec<u64>> {
        self.check_cap(cap)?;
        Ok((0..self.size()).into_par_iter().filter(|&k| self.eval(k)).collect())
    }

    fn check_cap(&self, cap: u64) -> Result<()> {
        let size = self.size();
        if size > cap {
            Err(Error::ScanCapExceeded { size, cap })
        } else {
            Ok(())
        }
    }
}

pub fn oracle_eval(inst: &DmdgpInstance, internal: &InternalCoords, params: &OracleParams, k: u64) -> bool {
    Oracle::new(inst, internal, *params).eval(k)
}

pub fn marked_set(inst: &DmdgpInstance, internal: &InternalCoords, params: &OracleParams) -> Result<Vec<u64>> {
    Oracle::new(inst, internal, *params).marked_set()
}

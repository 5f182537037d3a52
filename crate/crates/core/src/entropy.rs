//! Shannon entropy in bits.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Absolute tolerance for every entropy comparison and for probability mass
/// normalisation.
pub const ENTROPY_TOLERANCE: f64 = 1e-9;

/// Entropy measured in bits (log base 2). Always finite and non-negative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EntropyBits(f64);

impl EntropyBits {
    pub const ZERO: EntropyBits = EntropyBits(0.0);

    pub fn new(bits: f64) -> Self {
        debug_assert!(bits.is_finite() && bits >= -ENTROPY_TOLERANCE);
        EntropyBits(bits.max(0.0))
    }

    pub fn bits(self) -> f64 {
        self.0
    }

    /// `self <= other` up to [`ENTROPY_TOLERANCE`].
    pub fn at_most(self, other: EntropyBits) -> bool {
        self.0 <= other.0 + ENTROPY_TOLERANCE
    }

    pub fn approx_eq(self, other: EntropyBits) -> bool {
        (self.0 - other.0).abs() <= ENTROPY_TOLERANCE
    }
}

impl fmt::Display for EntropyBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6} bits", self.0)
    }
}

/// Entropy of a uniform distribution over `n` outcomes: `log2 n`.
pub fn uniform(n: usize) -> Result<EntropyBits> {
    if n == 0 {
        return Err(Error::InconsistentInfoSet("empty candidate set".into()));
    }
    Ok(EntropyBits((n as f64).log2()))
}

/// `-sum p log2 p` with `0 log 0 = 0`. Masses must be non-negative and sum to
/// one within [`ENTROPY_TOLERANCE`].
pub fn shannon(masses: &[f64]) -> Result<EntropyBits> {
    let mut total = 0.0;
    for (i, &p) in masses.iter().enumerate() {
        if !p.is_finite() || p < 0.0 {
            return Err(Error::InvalidDistribution(format!("cell {i} has mass {p}")));
        }
        total += p;
    }
    if (total - 1.0).abs() > ENTROPY_TOLERANCE {
        return Err(Error::InvalidDistribution(format!(
            "masses sum to {total}, expected 1"
        )));
    }
    let h: f64 = masses
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum();
    Ok(EntropyBits::new(h))
}

/// Mean of `log2 n_o` weighted by class size: `sum_o (n_o / n) log2 n_o`.
///
/// `class_sizes` must be given in a fixed order for bitwise-reproducible
/// results.
pub(crate) fn weighted_class_entropy(class_sizes: impl IntoIterator<Item = usize>) -> f64 {
    let mut n = 0usize;
    let mut acc = 0.0;
    for size in class_sizes {
        n += size;
        if size > 1 {
            acc += size as f64 * (size as f64).log2();
        }
    }
    if n == 0 {
        0.0
    } else {
        acc / n as f64
    }
}

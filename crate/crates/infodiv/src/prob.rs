//! Probability mass functions over finite alphabets.
//!
//! A [`Pmf`] assigns one probability per letter of an implicit alphabet
//! `{z_1, ..., z_n}`. Entries may be exactly 0 or 1: the singular cases are
//! the whole point of the divergence comparisons, so they are handled at the
//! measure level rather than banned at construction.

use crate::error::{Error, Result};

/// Absolute tolerance for the sum-to-one check.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// A validated discrete probability mass function.
///
/// Invariants enforced at construction: at least one entry, every entry in
/// `[0, 1]`, and the total within [`SUM_TOLERANCE`] of 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf(Vec<f64>);

impl Pmf {
    /// Validates `probs` and wraps it as a PMF.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Empty);
        }
        for (index, &value) in probs.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFiniteEntry { index });
            }
            if value < 0.0 {
                return Err(Error::NegativeEntry { index, value });
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::SumNotOne { sum });
        }
        Ok(Pmf(probs))
    }

    /// The uniform PMF on `n` letters, each entry `1/n`.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        Ok(Pmf(vec![1.0 / n as f64; n]))
    }

    /// Number of letters in the alphabet.
    #[allow(clippy::len_without_is_empty)] // a PMF is never empty
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }

    /// Clips every entry into `[sigma, 1 - sigma]` and renormalizes.
    ///
    /// The clip is applied once to the raw entries; the division that
    /// restores the unit sum may leave entries slightly inside the raw bound
    /// (the effective bound is `sigma / s` for the post-clip sum `s`).
    pub fn clamped(&self, policy: ClampPolicy) -> Pmf {
        let lo = policy.sigma;
        let hi = 1.0 - policy.sigma;
        let clipped: Vec<f64> = self.0.iter().map(|&p| p.clamp(lo, hi)).collect();
        let sum: f64 = clipped.iter().sum();
        Pmf::new(clipped.into_iter().map(|p| p / sum).collect())
            .expect("clip-then-renormalize yields a valid PMF")
    }
}

/// Clamping policy keeping PMF entries away from 0 and 1.
///
/// Entries below `sigma` are raised to `sigma`, entries above `1 - sigma`
/// lowered to `1 - sigma`; the result is then renormalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClampPolicy {
    sigma: f64,
}

impl ClampPolicy {
    pub fn new(sigma: f64) -> Result<Self> {
        if !sigma.is_finite() || !(0.0..0.5).contains(&sigma) {
            return Err(Error::SigmaOutOfRange { sigma });
        }
        Ok(ClampPolicy { sigma })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

/// A joint distribution over letter pairs of one alphabet under two
/// conditions: cell `(i, j)` is the probability of `z_i` under the first
/// condition together with `z_j` under the second.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPmf {
    n: usize,
    cells: Vec<f64>, // row-major n x n
}

impl JointPmf {
    /// Validates an `n x n` grid of cells: square, entries in `[0, 1]`,
    /// total within [`SUM_TOLERANCE`] of 1.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut cells = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::SizeMismatch {
                    left: row.len(),
                    right: n,
                });
            }
            cells.extend_from_slice(row);
        }
        for (index, &value) in cells.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFiniteEntry { index });
            }
            if value < 0.0 {
                return Err(Error::NegativeEntry { index, value });
            }
        }
        let sum: f64 = cells.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::SumNotOne { sum });
        }
        Ok(JointPmf { n, cells })
    }

    /// The independence joint: cell `(i, j) = p_i * q_j`.
    pub fn independent(p: &Pmf, q: &Pmf) -> Result<Self> {
        if p.len() != q.len() {
            return Err(Error::SizeMismatch {
                left: p.len(),
                right: q.len(),
            });
        }
        let n = p.len();
        let mut cells = Vec::with_capacity(n * n);
        for &pi in p.probs() {
            for &qj in q.probs() {
                cells.push(pi * qj);
            }
        }
        Ok(JointPmf { n, cells })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cell(&self, i: usize, j: usize) -> f64 {
        self.cells[i * self.n + j]
    }

    /// Marginal of the first condition (row sums).
    pub fn row_marginal(&self) -> Pmf {
        let probs = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.cell(i, j)).sum())
            .collect();
        Pmf::new(probs).expect("row sums of a valid joint form a valid PMF")
    }

    /// Marginal of the second condition (column sums).
    pub fn column_marginal(&self) -> Pmf {
        let probs = (0..self.n)
            .map(|j| (0..self.n).map(|i| self.cell(i, j)).sum())
            .collect();
        Pmf::new(probs).expect("column sums of a valid joint form a valid PMF")
    }
}

//! Comparison tooling for the candidate measures: binary-alphabet curve
//! sweeps, threshold solvers for the sigma-clamp and crossing claims, and
//! the multi-criteria score table.
//!
//! Sweeps follow the two-PMF family `P = {p1, 1-p1}`,
//! `Q = {q1, 1-q1}` with `q1 = (1-alpha)*p1 + alpha*(1-p1)`: at `alpha = 0`
//! the PMFs coincide, at `alpha = 1` they are maximally divergent.

use std::collections::BTreeSet;

use indexmap::IndexMap;
use serde::Deserialize;

use crate::divergence::{self, Measure};
use crate::error::{Error, Result};
use crate::prob::Pmf;

/// Evaluation grid for the `p1` axis.
#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    /// `lo, lo + step, ..., hi` (endpoint snapped to `hi`).
    Linear { lo: f64, hi: f64, step: f64 },
    /// Log-spaced points `lo * 10^(j / points_per_decade)` up to `hi`;
    /// bounds must be strictly positive.
    Log {
        lo: f64,
        hi: f64,
        points_per_decade: usize,
    },
}

impl Default for Grid {
    fn default() -> Self {
        Grid::Linear {
            lo: 0.0,
            hi: 1.0,
            step: 0.001,
        }
    }
}

impl Grid {
    /// The near-zero inspection range `[1e-10, 0.1]` at 22 points per decade.
    pub fn near_zero_default() -> Self {
        Grid::Log {
            lo: 1e-10,
            hi: 0.1,
            points_per_decade: 22,
        }
    }

    /// Materializes the grid points, endpoints included.
    pub fn points(&self) -> Result<Vec<f64>> {
        match *self {
            Grid::Linear { lo, hi, step } => {
                if step.is_nan() || step <= 0.0 || hi < lo || !lo.is_finite() || !hi.is_finite() {
                    return Err(Error::BadTable(format!(
                        "invalid linear grid {lo}..{hi} step {step}"
                    )));
                }
                let count = ((hi - lo) / step).round() as usize;
                Ok((0..=count)
                    .map(|i| if i == count { hi } else { lo + i as f64 * step })
                    .collect())
            }
            Grid::Log {
                lo,
                hi,
                points_per_decade,
            } => {
                if lo.is_nan() || lo <= 0.0 || hi < lo || points_per_decade == 0 || !hi.is_finite()
                {
                    return Err(Error::BadTable(format!(
                        "invalid log grid {lo}..{hi} at {points_per_decade} points/decade"
                    )));
                }
                let decades = (hi / lo).log10();
                // guard against fp jitter bumping an exact decade count up
                let count = (decades * points_per_decade as f64 - 1e-9).ceil() as usize;
                Ok((0..=count)
                    .map(|j| {
                        if j == count {
                            hi
                        } else {
                            lo * 10f64.powf(j as f64 / points_per_decade as f64)
                        }
                    })
                    .collect())
            }
        }
    }
}

/// What to sweep: which measures, at which `alpha` values, over which grid.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub measures: Vec<Measure>,
    pub alphas: Vec<f64>,
    pub grid: Grid,
}

impl SweepSpec {
    /// Default comparison sweep: `alpha = 0.0, 0.1, ..., 1.0` on the unit
    /// linear grid.
    pub fn new(measures: Vec<Measure>) -> Self {
        SweepSpec {
            measures,
            alphas: (0..=10).map(|i| i as f64 / 10.0).collect(),
            grid: Grid::default(),
        }
    }
}

/// One sweep sample; `value` is `+inf` at KL singularities.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub measure: Measure,
    pub alpha: f64,
    pub p1: f64,
    pub q1: f64,
    pub value: f64,
}

/// Evaluates every measure at every `(alpha, p1)` pair, ordered by measure,
/// then `alpha`, then `p1`. Conditional entropy cannot be swept (it needs a
/// joint distribution), so it propagates `MISSING_JOINT`.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    for alpha in &spec.alphas {
        if !(0.0..=1.0).contains(alpha) {
            return Err(Error::BadTable(format!("alpha {alpha} outside [0, 1]")));
        }
    }
    let points = spec.grid.points()?;
    let mut rows = Vec::with_capacity(spec.measures.len() * spec.alphas.len() * points.len());
    for &measure in &spec.measures {
        measure.validate()?;
        for &alpha in &spec.alphas {
            for &p1 in &points {
                let q1 = (1.0 - alpha) * p1 + alpha * (1.0 - p1);
                let p = Pmf::new(vec![p1, 1.0 - p1])?;
                let q = Pmf::new(vec![q1, 1.0 - q1])?;
                let value = divergence::evaluate(measure, &p, &q, None)?;
                rows.push(SweepRow {
                    measure,
                    alpha,
                    p1,
                    q1,
                    value,
                });
            }
        }
    }
    Ok(rows)
}

fn binary_family_value(measure: Measure, alpha: f64, p1: f64) -> f64 {
    let q1 = (1.0 - alpha) * p1 + alpha * (1.0 - p1);
    let p = Pmf::new(vec![p1, 1.0 - p1]).expect("p1 in [0,1]");
    let q = Pmf::new(vec![q1, 1.0 - q1]).expect("q1 in [0,1]");
    divergence::evaluate(measure, &p, &q, None).expect("swept measures need no joint")
}

/// Finds the `p1` in `(0, 0.5]` at which the measure's curve (at fixed
/// `alpha`) crosses `threshold`: below the returned `p1` the value exceeds
/// the threshold. Requires the curve to be monotone decreasing on the
/// segment, which holds for the families compared here.
pub fn find_crossing(measure: Measure, alpha: f64, threshold: f64) -> Result<f64> {
    measure.validate()?;
    assert!(threshold > 0.0, "threshold must be positive");
    let f = |p1: f64| binary_family_value(measure, alpha, p1);
    if f(0.0) <= threshold {
        return Err(Error::NoCrossing {
            measure: measure.to_string(),
            threshold,
        });
    }
    Ok(bisect_decreasing(f, 0.0, 0.5, threshold))
}

/// Bisection for a monotone decreasing `f` with `f(lo) > target >= f(hi)`,
/// run to `|f(mid) - target| < 1e-9` (or f64 exhaustion).
fn bisect_decreasing(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, target: f64) -> f64 {
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..300 {
        mid = 0.5 * (lo + hi);
        let value = f(mid);
        if (value - target).abs() < 1e-9 {
            return mid;
        }
        if value > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    mid
}

/// Worst-case binary KL over PMFs clamped to `[sigma, 1 - sigma]`:
/// `(1 - 2*sigma) * log2((1 - sigma) / sigma)`, reached by the pair
/// `P = {1 - sigma, sigma}`, `Q = {sigma, 1 - sigma}`.
pub fn worst_case_clamped_kl(sigma: f64) -> f64 {
    (1.0 - 2.0 * sigma) * ((1.0 - sigma) / sigma).log2()
}

/// The sigma at which the worst-case clamped binary KL equals `bound`:
/// clamping tighter than this keeps every binary KL below the bound.
/// Monotone decreasing in `bound`.
pub fn clamp_sigma_for_bound(bound: f64) -> f64 {
    assert!(bound > 0.0, "bound must be positive");
    bisect_decreasing(worst_case_clamped_kl, 1e-300, 0.5, bound)
}

/// One scoring criterion: a name plus an importance label (the labels are
/// informational except for `critical`, see [`mcda_sum`]).
#[derive(Debug, Clone, Deserialize)]
pub struct Criterion {
    pub name: String,
    pub importance: String,
}

/// A measure-comparison score table: per-measure ordinal scores in
/// `[0, 5]` against each criterion, plus explicit elimination flags.
/// Scores are data, not code — any table with consistent shapes loads.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McdaTable {
    pub criteria: Vec<Criterion>,
    pub scores: IndexMap<String, Vec<u8>>,
    #[serde(default)]
    pub eliminated: Vec<String>,
    #[serde(default)]
    pub note: Option<String>,
}

impl McdaTable {
    pub fn from_json(text: &str) -> Result<Self> {
        let table: McdaTable = serde_json::from_str(text)?;
        for (measure, row) in &table.scores {
            if row.len() != table.criteria.len() {
                return Err(Error::BadTable(format!(
                    "measure '{measure}' has {} scores for {} criteria",
                    row.len(),
                    table.criteria.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&s| s > 5) {
                return Err(Error::BadTable(format!(
                    "measure '{measure}' has score {bad} outside 0..=5"
                )));
            }
        }
        for label in &table.eliminated {
            if !table.scores.contains_key(label) {
                return Err(Error::BadTable(format!(
                    "eliminated measure '{label}' has no score row"
                )));
            }
        }
        Ok(table)
    }
}

/// Per-measure unweighted totals plus the measures ruled out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McdaSummary {
    /// Totals in score-table order.
    pub totals: IndexMap<String, u32>,
    pub eliminated: BTreeSet<String>,
}

/// Sums each measure's scores and reports the elimination set: the table's
/// explicit flags plus every measure scoring 0 on a criterion marked
/// `critical` (a zero there rules a measure out regardless of its sum).
pub fn mcda_sum(table: &McdaTable) -> McdaSummary {
    let totals: IndexMap<String, u32> = table
        .scores
        .iter()
        .map(|(measure, row)| (measure.clone(), row.iter().map(|&s| s as u32).sum()))
        .collect();
    let mut eliminated: BTreeSet<String> = table.eliminated.iter().cloned().collect();
    for (measure, row) in &table.scores {
        for (criterion, &score) in table.criteria.iter().zip(row) {
            if criterion.importance == "critical" && score == 0 {
                eliminated.insert(measure.clone());
            }
        }
    }
    McdaSummary { totals, eliminated }
}

//! The cost-benefit measure of a lossy process: alphabet compression minus
//! potential distortion, in the original KL form and the bounded
//! `H_max * D` form, plus scenario evaluation over labelled candidate PMFs.

use indexmap::IndexMap;
use serde::Deserialize;

use crate::divergence::{self, Measure};
use crate::entropy::{max_entropy, shannon_entropy};
use crate::error::{Error, Result};
use crate::prob::Pmf;

/// One step of a data-intelligence workflow: an input alphabet, the
/// (usually smaller) output alphabet, and the PMF a viewer reconstructs
/// over the input alphabet from the output.
#[derive(Debug, Clone)]
pub struct ProcessStep {
    input: Pmf,
    output: Pmf,
    reconstruction: Pmf,
}

impl ProcessStep {
    /// The reconstruction must live on the input alphabet; the output
    /// alphabet may be any size.
    pub fn new(input: Pmf, output: Pmf, reconstruction: Pmf) -> Result<Self> {
        if reconstruction.len() != input.len() {
            return Err(Error::SizeMismatch {
                left: reconstruction.len(),
                right: input.len(),
            });
        }
        Ok(ProcessStep {
            input,
            output,
            reconstruction,
        })
    }

    pub fn input(&self) -> &Pmf {
        &self.input
    }
    pub fn output(&self) -> &Pmf {
        &self.output
    }
    pub fn reconstruction(&self) -> &Pmf {
        &self.reconstruction
    }
}

/// Alphabet compression `AC = H(input) - H(output)`: the information lost
/// by the step. Negative when the step raises entropy.
pub fn alphabet_compression(step: &ProcessStep) -> f64 {
    shannon_entropy(&step.input) - shannon_entropy(&step.output)
}

/// The original benefit measure `AC - D_KL(reconstruction || input)`.
///
/// `-inf` whenever the reconstruction puts mass on a letter the input rules
/// out — the singularity that motivates the bounded form.
pub fn benefit_kl(step: &ProcessStep) -> f64 {
    let pd = divergence::kl(&step.reconstruction, &step.input)
        .expect("step invariant guarantees matching sizes");
    alphabet_compression(step) - pd
}

/// The bounded benefit measure `AC - H_max(input) * D(reconstruction || input)`.
///
/// `measure` must be one of the `[0, 1]`-bounded entropic candidates (JS or
/// either new divergence). Scaling by `H_max` rather than `H(input)` keeps
/// a maximally wrong reconstruction of a zero-entropy input visibly bad:
/// with `H(input)` the distortion term would vanish exactly when the lie is
/// most blatant.
pub fn benefit_bounded(step: &ProcessStep, measure: Measure) -> Result<f64> {
    match measure {
        Measure::Js | Measure::NewCommutative { .. } | Measure::NewNoncommutative { .. } => {}
        other => {
            return Err(Error::UnsupportedKind {
                kind: other.to_string(),
            })
        }
    }
    let d = divergence::evaluate(measure, &step.reconstruction, &step.input, None)?;
    Ok(alphabet_compression(step) - max_entropy(step.input.len()) * d)
}

/// How many bits of distortion a group's knowledge saves relative to a
/// knowledge-free baseline.
pub fn knowledge_worth(baseline_pd: f64, group_pd: f64) -> f64 {
    baseline_pd - group_pd
}

/// A ground-truth PMF plus labelled candidate PMFs to score against it.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub note: Option<String>,
    ground_truth: Vec<f64>,
    candidates: IndexMap<String, Vec<f64>>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let scenario: Scenario = serde_json::from_str(text)?;
        let truth = scenario.ground_truth()?;
        for (label, probs) in &scenario.candidates {
            let candidate = Pmf::new(probs.clone())?;
            if candidate.len() != truth.len() {
                return Err(Error::BadTable(format!(
                    "candidate '{label}' has {} letters, ground truth has {}",
                    candidate.len(),
                    truth.len()
                )));
            }
        }
        Ok(scenario)
    }

    pub fn ground_truth(&self) -> Result<Pmf> {
        Pmf::new(self.ground_truth.clone())
    }

    /// Candidate labels in file order.
    pub fn labels(&self) -> Vec<&str> {
        self.candidates.keys().map(String::as_str).collect()
    }
}

/// Distortion of every candidate from the ground truth:
/// `D(candidate || ground_truth)`, labelled, in file order.
pub fn evaluate_scenario(scenario: &Scenario, measure: Measure) -> Result<Vec<(String, f64)>> {
    let truth = scenario.ground_truth()?;
    scenario
        .candidates
        .iter()
        .map(|(label, probs)| {
            let candidate = Pmf::new(probs.clone())?;
            let value = divergence::evaluate(measure, &candidate, &truth, None)?;
            Ok((label.clone(), value))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn pmf(v: &[f64]) -> Pmf {
        Pmf::new(v.to_vec()).unwrap()
    }

    fn step(input: &[f64], output: &[f64], reconstruction: &[f64]) -> ProcessStep {
        ProcessStep::new(pmf(input), pmf(output), pmf(reconstruction)).unwrap()
    }

    #[test]
    fn compression_examples() {
        let s = ProcessStep::new(
            Pmf::uniform(256).unwrap(),
            Pmf::uniform(2).unwrap(),
            Pmf::uniform(256).unwrap(),
        )
        .unwrap();
        assert_eq!(alphabet_compression(&s), 7.0);

        let s = step(&[0.3, 0.7], &[0.3, 0.7], &[0.3, 0.7]);
        assert_eq!(alphabet_compression(&s), 0.0);

        let s = step(&[1.0, 0.0], &[0.5, 0.5], &[1.0, 0.0]);
        assert_eq!(alphabet_compression(&s), -1.0);
    }

    #[test]
    fn benefit_kl_examples() {
        let s = step(&[0.2, 0.8], &[0.5, 0.5], &[0.2, 0.8]);
        assert_eq!(benefit_kl(&s), alphabet_compression(&s));

        let s = step(&[0.99, 0.01], &[0.5, 0.5], &[0.01, 0.99]);
        let ac = alphabet_compression(&s);
        let b = benefit_kl(&s);
        assert!(((ac - b) - 6.50).abs() < 0.01);

        let s = step(&[0.0, 1.0], &[0.5, 0.5], &[1.0, 0.0]);
        assert_eq!(benefit_kl(&s), f64::NEG_INFINITY);
    }

    #[test]
    fn benefit_bounded_examples() {
        let s = step(&[0.2, 0.8], &[0.5, 0.5], &[0.2, 0.8]);
        assert_eq!(
            benefit_bounded(&s, Measure::Js).unwrap(),
            alphabet_compression(&s)
        );

        // wrong-legend paradox: zero-entropy input, maximally divergent
        // reconstruction; the distortion term must stay at H_max * 1 = 1
        let s = step(&[1.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]);
        assert_eq!(benefit_bounded(&s, Measure::Js).unwrap(), -1.0);
        assert_eq!(
            benefit_bounded(&s, Measure::NewCommutative { k: 2.0 }).unwrap(),
            -1.0
        );
        assert!(shannon_entropy(s.input()) == 0.0);
    }

    #[test]
    fn benefit_bounded_rejects_unbounded_or_non_entropic_measures() {
        let s = step(&[0.5, 0.5], &[0.5, 0.5], &[0.5, 0.5]);
        for measure in [
            Measure::Kl,
            Measure::ScaledKl { scale: 0.3 },
            Measure::Minkowski { k: 2.0 },
            Measure::CondEntropy,
        ] {
            assert!(matches!(
                benefit_bounded(&s, measure),
                Err(Error::UnsupportedKind { .. })
            ));
        }
    }

    #[test]
    fn knowledge_worth_examples() {
        assert_eq!(knowledge_worth(6.50, 0.00), 6.50);
        assert!((knowledge_worth(6.50, 1.12) - 5.38).abs() < 1e-12);
        assert!((knowledge_worth(13.28, 0.05) - 13.23).abs() < 1e-12);
    }

    #[test]
    fn scenario_one_reproduces_kl_column() {
        let scenario = Scenario::from_json(fixtures::SCENARIO_1).unwrap();
        let rows = evaluate_scenario(&scenario, Measure::Kl).unwrap();
        let expected = [("MIP", 6.50), ("doctors", 0.00), ("patients", 1.12)];
        for ((label, value), (want_label, want)) in rows.iter().zip(expected) {
            assert_eq!(label, want_label);
            assert!((value - want).abs() < 0.01, "{label}: {value}");
        }
    }

    #[test]
    fn scenario_three_reproduces_kl_column() {
        let scenario = Scenario::from_json(fixtures::SCENARIO_3).unwrap();
        let rows = evaluate_scenario(&scenario, Measure::Kl).unwrap();
        let expected = [("MIP", 2.54), ("doctors", 0.06), ("patients", 2.54)];
        for ((label, value), (want_label, want)) in rows.iter().zip(expected) {
            assert_eq!(label, want_label);
            assert!((value - want).abs() < 0.01, "{label}: {value}");
        }
    }

    #[test]
    fn candidate_equal_to_truth_scores_zero() {
        let scenario = Scenario::from_json(
            r#"{"name":"t","ground_truth":[0.6,0.4],"candidates":{"same":[0.6,0.4]}}"#,
        )
        .unwrap();
        let rows = evaluate_scenario(&scenario, Measure::Kl).unwrap();
        assert_eq!(rows[0].1, 0.0);
    }

    #[test]
    fn scenario_rejects_mismatched_candidate() {
        let bad = r#"{"name":"t","ground_truth":[0.6,0.4],"candidates":{"odd":[1.0]}}"#;
        assert!(Scenario::from_json(bad).is_err());
    }

    fn pmf_with_zeros(n: usize) -> impl Strategy<Value = Pmf> {
        prop::collection::vec((0.0f64..10.0, prop::bool::ANY), n).prop_map(|pairs| {
            let mut v: Vec<f64> = pairs
                .into_iter()
                .map(|(x, zero)| if zero { 0.0 } else { x })
                .collect();
            let s: f64 = v.iter().sum();
            if s == 0.0 {
                v[0] = 1.0;
            } else {
                for x in v.iter_mut() {
                    *x /= s;
                }
            }
            Pmf::new(v).unwrap()
        })
    }

    fn step_strategy() -> impl Strategy<Value = ProcessStep> {
        (2usize..=16, 1usize..=16).prop_flat_map(|(n_in, n_out)| {
            (
                pmf_with_zeros(n_in),
                pmf_with_zeros(n_out),
                pmf_with_zeros(n_in),
            )
                .prop_map(|(input, output, reconstruction)| {
                    ProcessStep::new(input, output, reconstruction).unwrap()
                })
        })
    }

    proptest! {
        // The core claim of the bounded form: finite for every valid step.
        #[test]
        fn benefit_bounded_is_finite(s in step_strategy(), k in 0.5f64..4.0) {
            for measure in [
                Measure::Js,
                Measure::NewCommutative { k },
                Measure::NewNoncommutative { k },
            ] {
                let b = benefit_bounded(&s, measure).unwrap();
                prop_assert!(b.is_finite());
                prop_assert!(b >= alphabet_compression(&s) - max_entropy(s.input().len()) - 1e-9);
            }
        }

        #[test]
        fn zero_distortion_means_benefit_equals_compression(s in step_strategy()) {
            let same = ProcessStep::new(
                s.input().clone(),
                s.output().clone(),
                s.input().clone(),
            )
            .unwrap();
            let ac = alphabet_compression(&same);
            prop_assert_eq!(benefit_kl(&same), ac);
            prop_assert_eq!(benefit_bounded(&same, Measure::Js).unwrap(), ac);
        }

        // Distortion of the maximally wrong reconstruction of a constant
        // input is the full H_max, never 0.
        #[test]
        fn legend_paradox_guard(n in 2usize..=8) {
            let mut truth = vec![0.0; n];
            truth[0] = 1.0;
            let mut lie = vec![0.0; n];
            lie[n - 1] = 1.0;
            let s = ProcessStep::new(
                Pmf::new(truth.clone()).unwrap(),
                Pmf::new(truth).unwrap(),
                Pmf::new(lie).unwrap(),
            )
            .unwrap();
            let b = benefit_bounded(&s, Measure::Js).unwrap();
            prop_assert!((b + max_entropy(n)).abs() < 1e-12);
        }
    }
}

//! Candidate distortion measures and their dispatch.
//!
//! The measure families compared here:
//!
//! - `D_KL(P||Q) = sum p_i * log2(p_i / q_i)` — unbounded, singular when
//!   some `p_i > 0` has `q_i = 0`.
//! - scaled KL: `c * D_KL`.
//! - `D_JS(P||Q) = (D_KL(P||M) + D_KL(Q||M)) / 2`, `M = (P+Q)/2` — in `[0, 1]`.
//! - `D_new^k(P||Q) = (1/2) sum (p_i + q_i) * log2(|p_i - q_i|^k + 1)` — the
//!   commutative bounded measure, in `[0, 1]`.
//! - `D_ncm^k(P||Q) = sum p_i * log2(|p_i - q_i|^k + 1)` — its
//!   non-commutative counterpart, in `[0, 1]`.
//! - `D_M^k(P,Q) = (sum |p_i - q_i|^k)^(1/k)` — Minkowski distance,
//!   non-entropic, bounded by `2^(1/k)`.
//! - conditional entropy `H(P|Q)` — needs a joint distribution.

use std::fmt;
use std::str::FromStr;

use crate::entropy;
use crate::error::{Error, Result};
use crate::prob::{JointPmf, Pmf};

/// Selector of a measure family plus its parameters.
///
/// Serialized names (used verbatim in CLI flags and CSV output): `kl`,
/// `kl_scaled_<scale>`, `js`, `dnew_k<k>`, `dncm_k<k>`, `minkowski_k<k>`,
/// `cond_entropy`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Measure {
    Kl,
    ScaledKl { scale: f64 },
    Js,
    NewCommutative { k: f64 },
    NewNoncommutative { k: f64 },
    Minkowski { k: f64 },
    CondEntropy,
}

impl Measure {
    /// Checks the parameter constraints (`scale > 0`, `k > 0`).
    pub fn validate(&self) -> Result<()> {
        match *self {
            Measure::ScaledKl { scale } if scale.is_nan() || scale <= 0.0 => {
                Err(Error::NonpositiveScale { scale })
            }
            Measure::NewCommutative { k }
            | Measure::NewNoncommutative { k }
            | Measure::Minkowski { k }
                if k.is_nan() || k <= 0.0 =>
            {
                Err(Error::NonpositiveK { k })
            }
            _ => Ok(()),
        }
    }

    /// Least upper bound of the measure over all PMF pairs on an `n`-letter
    /// alphabet (`n >= 2`). KL and scaled KL are unbounded; conditional
    /// entropy is bounded by the largest possible `H(P)`. The Minkowski
    /// bound `2^(1/k)` is the norm bound, valid for `k >= 1` (the compared
    /// variants use k = 2 and k = 200).
    pub fn upper_bound(&self, n: usize) -> f64 {
        match *self {
            Measure::Kl | Measure::ScaledKl { .. } => f64::INFINITY,
            Measure::Js | Measure::NewCommutative { .. } | Measure::NewNoncommutative { .. } => 1.0,
            Measure::Minkowski { k } => 2f64.powf(1.0 / k),
            Measure::CondEntropy => entropy::max_entropy(n),
        }
    }

    /// Whether the measure is entropic (log-of-probability based); Minkowski
    /// distances are not, so their values carry no "bits" unit.
    pub fn is_entropic(&self) -> bool {
        !matches!(self, Measure::Minkowski { .. })
    }
}

/// Formats a parameter the way `f64` displays shortest (2 -> "2", 0.3 -> "0.3").
fn fmt_param(x: f64) -> String {
    format!("{x}")
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Measure::Kl => write!(f, "kl"),
            Measure::ScaledKl { scale } => write!(f, "kl_scaled_{}", fmt_param(scale)),
            Measure::Js => write!(f, "js"),
            Measure::NewCommutative { k } => write!(f, "dnew_k{}", fmt_param(k)),
            Measure::NewNoncommutative { k } => write!(f, "dncm_k{}", fmt_param(k)),
            Measure::Minkowski { k } => write!(f, "minkowski_k{}", fmt_param(k)),
            Measure::CondEntropy => write!(f, "cond_entropy"),
        }
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownMeasure { name: s.into() };
        let parse = |v: &str| v.parse::<f64>().map_err(|_| unknown());
        let measure = match s {
            "kl" => Measure::Kl,
            "js" => Measure::Js,
            "cond_entropy" => Measure::CondEntropy,
            _ => {
                if let Some(v) = s.strip_prefix("kl_scaled_") {
                    Measure::ScaledKl { scale: parse(v)? }
                } else if let Some(v) = s.strip_prefix("dnew_k") {
                    Measure::NewCommutative { k: parse(v)? }
                } else if let Some(v) = s.strip_prefix("dncm_k") {
                    Measure::NewNoncommutative { k: parse(v)? }
                } else if let Some(v) = s.strip_prefix("minkowski_k") {
                    Measure::Minkowski { k: parse(v)? }
                } else {
                    return Err(unknown());
                }
            }
        };
        measure.validate()?;
        Ok(measure)
    }
}

fn check_sizes(p: &Pmf, q: &Pmf) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::SizeMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(())
}

/// KL divergence `D_KL(P||Q)` in bits; `+inf` exactly when some letter has
/// `p_i > 0` and `q_i = 0`.
pub fn kl(p: &Pmf, q: &Pmf) -> Result<f64> {
    check_sizes(p, q)?;
    let mut total = 0.0;
    for (&pi, &qi) in p.probs().iter().zip(q.probs()) {
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            return Ok(f64::INFINITY);
        }
        total += pi * (pi / qi).log2();
    }
    Ok(total)
}

/// `scale * D_KL(P||Q)`.
pub fn scaled_kl(p: &Pmf, q: &Pmf, scale: f64) -> Result<f64> {
    if scale.is_nan() || scale <= 0.0 {
        return Err(Error::NonpositiveScale { scale });
    }
    Ok(scale * kl(p, q)?)
}

/// Jensen-Shannon divergence, symmetric and always finite, in `[0, 1]`.
///
/// Evaluated in the expanded per-letter form so the two argument orders
/// produce bit-identical sums.
pub fn js(p: &Pmf, q: &Pmf) -> Result<f64> {
    check_sizes(p, q)?;
    let mut total = 0.0;
    for (&pi, &qi) in p.probs().iter().zip(q.probs()) {
        let m = pi + qi;
        let mut term = 0.0;
        if pi > 0.0 {
            term += pi * (2.0 * pi / m).log2();
        }
        if qi > 0.0 {
            term += qi * (2.0 * qi / m).log2();
        }
        total += term;
    }
    Ok(0.5 * total)
}

/// The commutative bounded measure
/// `D_new^k = (1/2) sum (p_i + q_i) * log2(|p_i - q_i|^k + 1)`, in `[0, 1]`.
pub fn d_new(p: &Pmf, q: &Pmf, k: f64) -> Result<f64> {
    check_sizes(p, q)?;
    if k.is_nan() || k <= 0.0 {
        return Err(Error::NonpositiveK { k });
    }
    let total = p
        .probs()
        .iter()
        .zip(q.probs())
        .map(|(&pi, &qi)| (pi + qi) * ((pi - qi).abs().powf(k) + 1.0).log2())
        .sum::<f64>();
    Ok(0.5 * total)
}

/// The non-commutative variant
/// `D_ncm^k = sum p_i * log2(|p_i - q_i|^k + 1)`, in `[0, 1]`.
pub fn d_ncm(p: &Pmf, q: &Pmf, k: f64) -> Result<f64> {
    check_sizes(p, q)?;
    if k.is_nan() || k <= 0.0 {
        return Err(Error::NonpositiveK { k });
    }
    Ok(p.probs()
        .iter()
        .zip(q.probs())
        .map(|(&pi, &qi)| pi * ((pi - qi).abs().powf(k) + 1.0).log2())
        .sum())
}

/// Minkowski distance `(sum |p_i - q_i|^k)^(1/k)`.
///
/// Computed with the largest difference factored out, so large `k` (the
/// comparisons use k = 200) does not underflow.
pub fn minkowski(p: &Pmf, q: &Pmf, k: f64) -> Result<f64> {
    check_sizes(p, q)?;
    if k.is_nan() || k <= 0.0 {
        return Err(Error::NonpositiveK { k });
    }
    let max_diff = p
        .probs()
        .iter()
        .zip(q.probs())
        .map(|(&pi, &qi)| (pi - qi).abs())
        .fold(0.0f64, f64::max);
    if max_diff == 0.0 {
        return Ok(0.0);
    }
    let scaled: f64 = p
        .probs()
        .iter()
        .zip(q.probs())
        .map(|(&pi, &qi)| ((pi - qi).abs() / max_diff).powf(k))
        .sum();
    Ok(max_diff * scaled.powf(1.0 / k))
}

/// Uniform dispatch over all measures, so sweeps and scoring can iterate
/// over them. Conditional entropy needs `joint`; every other measure
/// ignores it.
pub fn evaluate(measure: Measure, p: &Pmf, q: &Pmf, joint: Option<&JointPmf>) -> Result<f64> {
    measure.validate()?;
    match measure {
        Measure::Kl => kl(p, q),
        Measure::ScaledKl { scale } => scaled_kl(p, q, scale),
        Measure::Js => js(p, q),
        Measure::NewCommutative { k } => d_new(p, q, k),
        Measure::NewNoncommutative { k } => d_ncm(p, q, k),
        Measure::Minkowski { k } => minkowski(p, q, k),
        Measure::CondEntropy => {
            check_sizes(p, q)?;
            let joint = joint.ok_or(Error::MissingJoint)?;
            if joint.n() != p.len() {
                return Err(Error::SizeMismatch {
                    left: joint.n(),
                    right: p.len(),
                });
            }
            Ok(entropy::conditional_entropy(joint))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pmf(v: &[f64]) -> Pmf {
        Pmf::new(v.to_vec()).unwrap()
    }

    #[test]
    fn kl_reproduces_table_values() {
        assert!((kl(&pmf(&[0.01, 0.99]), &pmf(&[0.99, 0.01])).unwrap() - 6.50).abs() < 0.01);
        assert_eq!(kl(&pmf(&[0.3, 0.7]), &pmf(&[0.3, 0.7])).unwrap(), 0.0);
        assert!((kl(&pmf(&[0.7, 0.3]), &pmf(&[0.99, 0.01])).unwrap() - 1.12).abs() < 0.01);
    }

    #[test]
    fn kl_singularity() {
        assert_eq!(
            kl(&pmf(&[1.0, 0.0]), &pmf(&[0.0, 1.0])).unwrap(),
            f64::INFINITY
        );
        // q_i = 0 only where p_i = 0 stays finite
        assert_eq!(kl(&pmf(&[0.0, 1.0]), &pmf(&[0.0, 1.0])).unwrap(), 0.0);
    }

    #[test]
    fn scaled_kl_examples() {
        let v = scaled_kl(&pmf(&[0.01, 0.99]), &pmf(&[0.99, 0.01]), 0.3).unwrap();
        assert!((v - 1.950).abs() < 0.01);
        let a = scaled_kl(&pmf(&[0.7, 0.3]), &pmf(&[0.2, 0.8]), 1.0).unwrap();
        let b = kl(&pmf(&[0.7, 0.3]), &pmf(&[0.2, 0.8])).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            scaled_kl(&pmf(&[0.4, 0.6]), &pmf(&[0.4, 0.6]), 0.3).unwrap(),
            0.0
        );
        assert!(matches!(
            scaled_kl(&pmf(&[0.5, 0.5]), &pmf(&[0.5, 0.5]), 0.0),
            Err(Error::NonpositiveScale { .. })
        ));
    }

    #[test]
    fn js_examples() {
        assert_eq!(js(&pmf(&[1.0, 0.0]), &pmf(&[0.0, 1.0])).unwrap(), 1.0);
        assert_eq!(js(&pmf(&[0.2, 0.8]), &pmf(&[0.2, 0.8])).unwrap(), 0.0);
        // frozen from the two-KL-halves oracle (also cross-checked against
        // H(M) - (H(P) + H(Q))/2)
        let v = js(&pmf(&[0.7, 0.3]), &pmf(&[0.99, 0.01])).unwrap();
        assert!((v - 0.14117062044301137).abs() < 1e-12);
    }

    #[test]
    fn js_matches_kl_halves_oracle() {
        let p = pmf(&[0.7, 0.3]);
        let q = pmf(&[0.99, 0.01]);
        let m = pmf(&[0.845, 0.155]);
        let oracle = 0.5 * (kl(&p, &m).unwrap() + kl(&q, &m).unwrap());
        assert!((js(&p, &q).unwrap() - oracle).abs() < 1e-12);
    }

    #[test]
    fn d_new_examples() {
        for k in [1.0, 2.0, 0.5, 200.0] {
            assert_eq!(d_new(&pmf(&[1.0, 0.0]), &pmf(&[0.0, 1.0]), k).unwrap(), 1.0);
        }
        assert_eq!(
            d_new(&pmf(&[0.3, 0.7]), &pmf(&[0.3, 0.7]), 2.0).unwrap(),
            0.0
        );
        let v = d_new(&pmf(&[0.7, 0.3]), &pmf(&[0.99, 0.01]), 2.0).unwrap();
        assert!((v - 0.11649784050174836).abs() < 1e-12);
        assert!((v - (0.29f64.powi(2) + 1.0).log2()).abs() < 1e-12);
    }

    #[test]
    fn d_ncm_examples_show_asymmetry() {
        assert_eq!(
            d_ncm(&pmf(&[1.0, 0.0]), &pmf(&[0.0, 1.0]), 1.0).unwrap(),
            1.0
        );
        assert_eq!(
            d_ncm(&pmf(&[0.4, 0.6]), &pmf(&[0.4, 0.6]), 1.0).unwrap(),
            0.0
        );
        let p = pmf(&[0.7, 0.2, 0.1]);
        let q = pmf(&[0.1, 0.6, 0.3]);
        let forward = d_ncm(&p, &q, 1.0).unwrap();
        let reverse = d_ncm(&q, &p, 1.0).unwrap();
        assert!((forward - 0.5980391395962741).abs() < 1e-12);
        assert!((reverse - 0.4379736085635469).abs() < 1e-12);
        assert!(forward != reverse);
    }

    #[test]
    fn minkowski_examples() {
        let v = minkowski(&pmf(&[1.0, 0.0]), &pmf(&[0.0, 1.0]), 2.0).unwrap();
        assert!((v - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert_eq!(
            minkowski(&pmf(&[0.3, 0.7]), &pmf(&[0.3, 0.7]), 2.0).unwrap(),
            0.0
        );
        let v = minkowski(&pmf(&[0.7, 0.3]), &pmf(&[0.99, 0.01]), 2.0).unwrap();
        assert!((v - 0.4101219330881976).abs() < 1e-12);
    }

    #[test]
    fn minkowski_large_k_does_not_underflow() {
        // true value approaches the max |difference| as k grows
        let v = minkowski(&pmf(&[0.5, 0.49, 0.01]), &pmf(&[0.49, 0.5, 0.01]), 200.0).unwrap();
        assert!((v - 0.01 * 2f64.powf(1.0 / 200.0)).abs() < 1e-12);
    }

    #[test]
    fn evaluate_dispatches() {
        let p = pmf(&[0.1, 0.9]);
        let q = pmf(&[0.9, 0.1]);
        assert_eq!(evaluate(Measure::Js, &p, &p, None).unwrap(), 0.0);
        assert!((evaluate(Measure::Kl, &p, &q, None).unwrap() - 2.54).abs() < 0.01);
        assert_eq!(
            evaluate(
                Measure::NewCommutative { k: 1.0 },
                &pmf(&[1.0, 0.0]),
                &pmf(&[0.0, 1.0]),
                None
            )
            .unwrap(),
            1.0
        );
    }

    #[test]
    fn evaluate_cond_entropy_requires_joint() {
        let p = pmf(&[0.5, 0.5]);
        assert!(matches!(
            evaluate(Measure::CondEntropy, &p, &p, None),
            Err(Error::MissingJoint)
        ));
        let j = JointPmf::new(vec![vec![0.4, 0.1], vec![0.1, 0.4]]).unwrap();
        let v = evaluate(Measure::CondEntropy, &p, &p, Some(&j)).unwrap();
        assert!((v - 0.7219).abs() < 1e-3);
    }

    #[test]
    fn upper_bounds() {
        assert_eq!(Measure::Js.upper_bound(7), 1.0);
        let b = Measure::Minkowski { k: 2.0 }.upper_bound(2);
        assert!((b - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert_eq!(Measure::Kl.upper_bound(2), f64::INFINITY);
        assert_eq!(Measure::CondEntropy.upper_bound(4), 2.0);
    }

    #[test]
    fn names_round_trip() {
        let measures = [
            Measure::Kl,
            Measure::ScaledKl { scale: 0.3 },
            Measure::Js,
            Measure::NewCommutative { k: 1.0 },
            Measure::NewCommutative { k: 2.0 },
            Measure::NewNoncommutative { k: 2.0 },
            Measure::Minkowski { k: 200.0 },
            Measure::CondEntropy,
        ];
        let names = [
            "kl",
            "kl_scaled_0.3",
            "js",
            "dnew_k1",
            "dnew_k2",
            "dncm_k2",
            "minkowski_k200",
            "cond_entropy",
        ];
        for (m, name) in measures.iter().zip(names) {
            assert_eq!(m.to_string(), name);
            assert_eq!(name.parse::<Measure>().unwrap(), *m);
        }
        assert!("dnew_k0".parse::<Measure>().is_err());
        assert!("banana".parse::<Measure>().is_err());
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

    fn pair_strategy() -> impl Strategy<Value = (Pmf, Pmf)> {
        (2usize..=16).prop_flat_map(|n| (pmf_with_zeros(n), pmf_with_zeros(n)))
    }

    proptest! {
        #[test]
        fn bounded_measures_stay_in_range((p, q) in pair_strategy(), k in 0.25f64..8.0) {
            let j = js(&p, &q).unwrap();
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&j));
            let dn = d_new(&p, &q, k).unwrap();
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&dn));
            let dc = d_ncm(&p, &q, k).unwrap();
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&dc));
            let mk = minkowski(&p, &q, k).unwrap();
            prop_assert!(mk >= -1e-12);
            prop_assert!(mk.is_finite());
            // the 2^(1/k) bound is a norm fact, so it needs k >= 1
            if k >= 1.0 {
                prop_assert!(mk <= 2f64.powf(1.0 / k) + 1e-12);
            }
        }

        #[test]
        fn js_and_d_new_symmetric_exactly((p, q) in pair_strategy(), k in 0.25f64..8.0) {
            prop_assert_eq!(js(&p, &q).unwrap(), js(&q, &p).unwrap());
            prop_assert_eq!(d_new(&p, &q, k).unwrap(), d_new(&q, &p, k).unwrap());
        }

        #[test]
        fn d_new_averages_the_two_d_ncm((p, q) in pair_strategy(), k in 0.25f64..8.0) {
            let avg = 0.5 * (d_ncm(&p, &q, k).unwrap() + d_ncm(&q, &p, k).unwrap());
            prop_assert!((d_new(&p, &q, k).unwrap() - avg).abs() < 1e-12);
        }

        #[test]
        fn zero_iff_identical((p, q) in pair_strategy()) {
            let max_diff = p
                .probs()
                .iter()
                .zip(q.probs())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            prop_assert_eq!(kl(&p, &p).unwrap(), 0.0);
            if max_diff < 1e-12 {
                prop_assert!(js(&p, &q).unwrap().abs() < 1e-10);
                prop_assert!(d_new(&p, &q, 2.0).unwrap().abs() < 1e-10);
                prop_assert!(d_ncm(&p, &q, 2.0).unwrap().abs() < 1e-10);
                prop_assert!(minkowski(&p, &q, 2.0).unwrap().abs() < 1e-10);
            } else if max_diff > 1e-6 {
                prop_assert!(js(&p, &q).unwrap() > 0.0);
                prop_assert!(d_new(&p, &q, 2.0).unwrap() > 0.0);
                prop_assert!(d_ncm(&p, &q, 2.0).unwrap() + d_ncm(&q, &p, 2.0).unwrap() > 0.0);
                prop_assert!(minkowski(&p, &q, 2.0).unwrap() > 0.0);
            }
        }

        #[test]
        fn kl_singular_iff_support_violation((p, q) in pair_strategy()) {
            let singular = p
                .probs()
                .iter()
                .zip(q.probs())
                .any(|(&a, &b)| a > 0.0 && b == 0.0);
            let v = kl(&p, &q).unwrap();
            prop_assert_eq!(v.is_infinite(), singular);
            prop_assert!(js(&p, &q).unwrap().is_finite());
        }

        #[test]
        fn binary_d_new_closed_form(p1 in 0.0f64..=1.0, q1 in 0.0f64..=1.0, k in 0.25f64..8.0) {
            let p = pmf(&[p1, 1.0 - p1]);
            let q = pmf(&[q1, 1.0 - q1]);
            let closed = ((p1 - q1).abs().powf(k) + 1.0).log2();
            prop_assert!((d_new(&p, &q, k).unwrap() - closed).abs() < 1e-12);
        }
    }
}

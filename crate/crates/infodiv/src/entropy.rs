//! Entropy measures: Shannon entropy, maximum entropy, cross entropy,
//! mutual information, and conditional entropy. All results are in bits
//! (base-2 logarithms) with the convention `0 * log2(0) = 0`.

use crate::error::{Error, Result};
use crate::prob::{JointPmf, Pmf};

/// Shannon entropy `H(P) = -sum p_i * log2(p_i)`, in `[0, log2 n]`.
pub fn shannon_entropy(p: &Pmf) -> f64 {
    -p.probs()
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * x.log2())
        .sum::<f64>()
}

/// Maximum entropy of an `n`-letter alphabet: `log2(n)`, reached by the
/// uniform PMF.
pub fn max_entropy(n: usize) -> f64 {
    assert!(n >= 1, "alphabet needs at least one letter");
    (n as f64).log2()
}

/// Entropy of `count` independent, identically distributed elements with
/// `per_element_entropy` bits each.
pub fn composite_iid_entropy(per_element_entropy: f64, count: usize) -> f64 {
    assert!(per_element_entropy >= 0.0 && count >= 1);
    per_element_entropy * count as f64
}

/// Cross entropy `H_CE(P, Q) = -sum p_i * log2(q_i)`.
///
/// Returns `+inf` when some `p_i > 0` has `q_i = 0`: the cost of a code
/// that reserved no codeword for a letter that does occur. Satisfies
/// `H_CE(P, Q) = H(P) + D_KL(P||Q)` whenever finite.
pub fn cross_entropy(p: &Pmf, q: &Pmf) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::SizeMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let mut total = 0.0;
    for (&pi, &qi) in p.probs().iter().zip(q.probs()) {
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            return Ok(f64::INFINITY);
        }
        total -= pi * qi.log2();
    }
    Ok(total)
}

/// Mutual information `I = sum r_ij * log2(r_ij / (p_i * q_j))` of a joint
/// distribution, with marginals taken from the joint itself. Zero cells
/// contribute nothing; the result is clamped at 0 against rounding.
pub fn mutual_information(joint: &JointPmf) -> f64 {
    let p = joint.row_marginal();
    let q = joint.column_marginal();
    let mut total = 0.0;
    for i in 0..joint.n() {
        for j in 0..joint.n() {
            let r = joint.cell(i, j);
            if r > 0.0 {
                total += r * (r / (p.probs()[i] * q.probs()[j])).log2();
            }
        }
    }
    total.max(0.0)
}

/// Conditional entropy `H(P|Q) = H(P) - I(P;Q)` of the joint's first
/// marginal given its second, bounded by `[0, H(P)]`.
pub fn conditional_entropy(joint: &JointPmf) -> f64 {
    (shannon_entropy(&joint.row_marginal()) - mutual_information(joint)).max(0.0)
}

//! Prefix-free binary codes and the coding-side boundedness checks.
//!
//! A Huffman code over an `n`-letter alphabet never assigns a codeword
//! longer than `n - 1` bits, so the average codeword cost of encoding a
//! true PMF `P` with a code built for `Q` — the operational reading of
//! cross entropy — is bounded by `n - 1` even where the analytic formula
//! diverges. This module builds the codes, the mathematically-literal
//! `ceil(log2(1/q_i))` lengths, and the dyadic family that makes the
//! `n - 1` bound tight.

use std::collections::BinaryHeap;

use crate::entropy::shannon_entropy;
use crate::error::{Error, Result};
use crate::prob::Pmf;

/// A prefix-free binary code: one codeword per letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeTable {
    codewords: Vec<String>,
}

impl CodeTable {
    pub fn codewords(&self) -> &[String] {
        &self.codewords
    }

    /// Per-letter codeword lengths in bits.
    pub fn lengths(&self) -> Vec<usize> {
        self.codewords.iter().map(|c| c.len()).collect()
    }

    pub fn max_length(&self) -> usize {
        self.codewords.iter().map(|c| c.len()).max().unwrap_or(0)
    }

    /// `sum 2^(-L_i)`; at most 1 for any prefix-free code.
    pub fn kraft_sum(&self) -> f64 {
        self.codewords
            .iter()
            .map(|c| 2f64.powi(-(c.len() as i32)))
            .sum()
    }

    /// True when no codeword is a prefix of another.
    pub fn is_prefix_free(&self) -> bool {
        for (i, a) in self.codewords.iter().enumerate() {
            for (j, b) in self.codewords.iter().enumerate() {
                if i != j && b.starts_with(a.as_str()) {
                    return false;
                }
            }
        }
        true
    }

    /// Two-column listing `letter_index<TAB>codeword`, one letter per line.
    pub fn to_tsv(&self) -> String {
        self.codewords
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{i}\t{c}"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

// Heap entry ordered so that the node with the smallest probability pops
// first, ties broken by the smallest original letter index.
struct HeapEntry {
    prob: f64,
    min_index: usize,
    node: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.prob == other.prob && self.min_index == other.min_index
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // reversed: BinaryHeap is a max-heap, we want the minimum on top
        other
            .prob
            .total_cmp(&self.prob)
            .then_with(|| other.min_index.cmp(&self.min_index))
    }
}

enum Node {
    Leaf { letter: usize },
    Internal { left: usize, right: usize },
}

/// Builds the Huffman code for `q`.
///
/// Deterministic under ties: of equally probable nodes the one carrying the
/// smallest original letter index merges first, a merged node carries the
/// minimum contained index, and the child with the lower index becomes the
/// left (`0`) branch. Zero-probability letters are legal; they merge first
/// and receive the longest codewords. A single-letter alphabet gets the
/// empty codeword.
pub fn huffman_code(q: &Pmf) -> CodeTable {
    let n = q.len();
    if n == 1 {
        return CodeTable {
            codewords: vec![String::new()],
        };
    }

    let mut nodes: Vec<Node> = (0..n).map(|letter| Node::Leaf { letter }).collect();
    let mut heap: BinaryHeap<HeapEntry> = q
        .probs()
        .iter()
        .enumerate()
        .map(|(i, &p)| HeapEntry {
            prob: p,
            min_index: i,
            node: i,
        })
        .collect();

    while heap.len() > 1 {
        let first = heap.pop().unwrap();
        let second = heap.pop().unwrap();
        let (left, right) = if first.min_index < second.min_index {
            (first.node, second.node)
        } else {
            (second.node, first.node)
        };
        nodes.push(Node::Internal { left, right });
        heap.push(HeapEntry {
            prob: first.prob + second.prob,
            min_index: first.min_index.min(second.min_index),
            node: nodes.len() - 1,
        });
    }

    let root = heap.pop().unwrap().node;
    let mut codewords = vec![String::new(); n];
    let mut stack = vec![(root, String::new())];
    while let Some((id, prefix)) = stack.pop() {
        match nodes[id] {
            Node::Leaf { letter } => codewords[letter] = prefix,
            Node::Internal { left, right } => {
                stack.push((left, format!("{prefix}0")));
                stack.push((right, format!("{prefix}1")));
            }
        }
    }
    CodeTable { codewords }
}

/// The mathematically-literal codeword lengths `ceil(log2(1/q_i))`.
///
/// Undefined for zero-probability letters, which is exactly the gap the
/// Huffman construction closes.
pub fn literal_lengths(q: &Pmf) -> Result<Vec<usize>> {
    q.probs()
        .iter()
        .enumerate()
        .map(|(index, &qi)| {
            if qi == 0.0 {
                Err(Error::ZeroProbabilityLetter { index })
            } else {
                Ok((-qi.log2()).ceil().max(0.0) as usize)
            }
        })
        .collect()
}

/// Probabilistic average codeword length `sum p_i * L_i` in bits.
pub fn average_length(lengths: &[usize], p: &Pmf) -> Result<f64> {
    if lengths.len() != p.len() {
        return Err(Error::SizeMismatch {
            left: lengths.len(),
            right: p.len(),
        });
    }
    Ok(lengths
        .iter()
        .zip(p.probs())
        .map(|(&l, &pi)| pi * l as f64)
        .sum())
}

/// Average cost of encoding true PMF `p` with the Huffman code built for
/// `q`: the operational cross entropy. Bounded by `n - 1` for every pair.
pub fn conceptual_cross_entropy(p: &Pmf, q: &Pmf) -> Result<f64> {
    average_length(&huffman_code(q).lengths(), p)
}

/// Operational cross entropy minus `H(P)`: the coding reading of the KL
/// divergence. Finite for every input pair, including the singular ones,
/// and at most `n - 1`.
pub fn conceptual_kl_bound(p: &Pmf, q: &Pmf) -> Result<f64> {
    Ok(conceptual_cross_entropy(p, q)? - shannon_entropy(p))
}

/// The worst-case PMF forcing a Huffman codeword of length `n - 1`:
///
/// ```text
/// q(z_n) = eps,  q(z_j) = (1 - eps) * 2^(-j)  for j = n-1 .. 2,
/// q(z_1) = (1 - eps) * (2^(-1) + 2^(-(n-1)))
/// ```
///
/// with `0 < eps < 2^(-(n-1))`.
pub fn dyadic_epsilon_pmf(n: usize, epsilon: f64) -> Result<Pmf> {
    if n < 2 {
        return Err(Error::Empty);
    }
    let max = 2f64.powi(-((n - 1) as i32));
    if !epsilon.is_finite() || epsilon <= 0.0 || epsilon >= max {
        return Err(Error::EpsilonOutOfRange { epsilon, max });
    }
    let rest = 1.0 - epsilon;
    let mut probs = vec![0.0; n];
    probs[n - 1] = epsilon;
    for j in 2..n {
        probs[j - 1] = rest * 2f64.powi(-(j as i32));
    }
    probs[0] = rest * (0.5 + 2f64.powi(-((n - 1) as i32)));
    Pmf::new(probs)
}

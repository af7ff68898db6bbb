//! Longest common subsequence between an answer and a response.
//!
//! The alignment is a canonical LCS witness produced by a full length table
//! and a fixed traceback order, so classification built on top of it is
//! reproducible.

use serde::{Deserialize, Serialize};

use crate::token::{tokens_equal, ComparisonPolicy, TokenSequence};

/// Longest sequence accepted by the grading pipeline. Keeps the length table
/// at or below 10^8 cells.
pub const MAX_TOKENS: usize = 10_000;

/// Matched `(answer_index, response_index)` pairs of one LCS.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alignment {
    pub pairs: Vec<(usize, usize)>,
    pub answer_len: usize,
    pub response_len: usize,
}

impl Alignment {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// True when every token of both sequences is matched.
    pub fn is_complete(&self) -> bool {
        self.pairs.len() == self.answer_len && self.pairs.len() == self.response_len
    }

    /// Per-index flags telling which answer tokens are matched.
    pub fn answer_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.answer_len];
        for &(a, _) in &self.pairs {
            mask[a] = true;
        }
        mask
    }

    pub fn response_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.response_len];
        for &(_, r) in &self.pairs {
            mask[r] = true;
        }
        mask
    }
}

/// Computes the canonical LCS alignment of two slices under `eq`.
///
/// `table[i][j]` holds the LCS length of `answer[..i]` and `response[..j]`.
/// Traceback starts at the bottom-right cell: matching elements are always
/// taken, and when skipping either side keeps the optimum the answer side is
/// skipped first.
pub fn align_by<A, R>(answer: &[A], response: &[R], eq: impl Fn(&A, &R) -> bool) -> Alignment {
    let (n, m) = (answer.len(), response.len());
    let width = m + 1;
    let mut table = vec![0u32; (n + 1) * width];
    for i in 1..=n {
        for j in 1..=m {
            table[i * width + j] = if eq(&answer[i - 1], &response[j - 1]) {
                table[(i - 1) * width + j - 1] + 1
            } else {
                table[(i - 1) * width + j].max(table[i * width + j - 1])
            };
        }
    }

    let mut pairs = Vec::with_capacity(table[n * width + m] as usize);
    let (mut i, mut j) = (n, m);
    while i > 0 && j > 0 {
        if eq(&answer[i - 1], &response[j - 1]) {
            pairs.push((i - 1, j - 1));
            i -= 1;
            j -= 1;
        } else if table[(i - 1) * width + j] >= table[i * width + j - 1] {
            i -= 1;
        } else {
            j -= 1;
        }
    }
    pairs.reverse();
    Alignment {
        pairs,
        answer_len: n,
        response_len: m,
    }
}

/// LCS length only, keeping a single row sized to the shorter input.
pub fn length_by<A, R>(answer: &[A], response: &[R], eq: impl Fn(&A, &R) -> bool) -> usize {
    if answer.len() < response.len() {
        rolling_length(answer, response, |short, long| eq(short, long))
    } else {
        rolling_length(response, answer, |short, long| eq(long, short))
    }
}

fn rolling_length<S, L>(short: &[S], long: &[L], eq: impl Fn(&S, &L) -> bool) -> usize {
    let mut row = vec![0usize; short.len() + 1];
    for item in long {
        // `diag` carries the previous row's value at column k - 1.
        let mut diag = 0;
        for (k, s) in short.iter().enumerate() {
            let above = row[k + 1];
            row[k + 1] = if eq(s, item) {
                diag + 1
            } else {
                above.max(row[k])
            };
            diag = above;
        }
    }
    row[short.len()]
}

pub fn lcs_align(
    answer: &TokenSequence,
    response: &TokenSequence,
    policy: ComparisonPolicy,
) -> Alignment {
    align_by(&answer.tokens, &response.tokens, |a, r| {
        tokens_equal(a, r, policy)
    })
}

pub fn lcs_length(
    answer: &TokenSequence,
    response: &TokenSequence,
    policy: ComparisonPolicy,
) -> usize {
    length_by(&answer.tokens, &response.tokens, |a, r| {
        tokens_equal(a, r, policy)
    })
}

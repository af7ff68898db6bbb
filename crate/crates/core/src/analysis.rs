//! Mistake classification on top of an LCS alignment.
//!
//! For each distinct token value with `a` copies in the answer, `r` in the
//! response and `l` inside the alignment:
//!
//! ```text
//! placed    = l
//! misplaced = min(a, r) - l
//! missing   = max(a - r, 0)
//! extra     = max(r - a, 0)
//! ```
//!
//! Counts alone do not say *which* copy of a repeated token is wrong, so
//! occurrences are assigned left to right: among the unaligned response copies
//! of a value the first `misplaced` ones are misplaced and the rest extra; among
//! the unaligned answer copies the first `misplaced` ones are the partners of
//! those misplaced tokens and the last `missing` ones are missing.

use std::collections::HashMap;
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grading::grade_fraction;
use crate::lcs::Alignment;
use crate::token::{Span, TokenSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MistakeKind {
    Misplaced,
    Extra,
    Missing,
}

impl fmt::Display for MistakeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MistakeKind::Misplaced => "misplaced",
            MistakeKind::Extra => "extra",
            MistakeKind::Missing => "missing",
        })
    }
}

/// Occurrence counts of one token value and the resulting breakdown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueCounts {
    pub value: String,
    pub in_answer: usize,
    pub in_response: usize,
    pub aligned: usize,
    pub placed: usize,
    pub misplaced: usize,
    pub missing: usize,
    pub extra: usize,
}

impl ValueCounts {
    /// Panics if `aligned` exceeds either occurrence count.
    pub fn new(
        value: impl Into<String>,
        in_answer: usize,
        in_response: usize,
        aligned: usize,
    ) -> Self {
        assert!(
            aligned <= in_answer.min(in_response),
            "aligned count {aligned} exceeds min({in_answer}, {in_response})"
        );
        ValueCounts {
            value: value.into(),
            in_answer,
            in_response,
            aligned,
            placed: aligned,
            misplaced: in_answer.min(in_response) - aligned,
            missing: in_answer.saturating_sub(in_response),
            extra: in_response.saturating_sub(in_answer),
        }
    }

    pub fn mistakes(&self) -> usize {
        self.misplaced + self.missing + self.extra
    }
}

/// One reported mistake bound to a concrete token occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mistake {
    pub kind: MistakeKind,
    /// Normalized token text.
    pub value: String,
    /// Source spelling used in messages: the response token for misplaced
    /// and extra mistakes, the answer token for missing ones.
    pub text: String,
    /// Set for misplaced and extra mistakes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub response_index: Option<usize>,
    /// Byte span in the response, set together with `response_index`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span: Option<Span>,
    /// Answer token this mistake refers to: the missing token itself, or the
    /// unaligned answer copy paired with a misplaced token. Never set for
    /// extra mistakes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub answer_index: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MistakeReport {
    pub alignment: Alignment,
    /// One entry per distinct value, in order of first appearance (answer
    /// first, then response).
    pub counts: Vec<ValueCounts>,
    /// Misplaced and extra mistakes by response index, then missing ones by
    /// answer index.
    pub mistakes: Vec<Mistake>,
    pub grade: f64,
}

impl MistakeReport {
    pub fn is_perfect(&self) -> bool {
        self.mistakes.is_empty()
    }

    pub fn count_of(&self, kind: MistakeKind) -> usize {
        self.mistakes.iter().filter(|m| m.kind == kind).count()
    }

    pub fn counts_for(&self, value: &str) -> Option<&ValueCounts> {
        self.counts.iter().find(|c| c.value == value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlignmentMismatch {
    #[error("alignment covers {expected} {side} tokens but the sequence has {actual}")]
    Length {
        side: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("alignment pair ({0}, {1}) is out of range")]
    OutOfRange(usize, usize),
    #[error("alignment pairs are not strictly increasing at pair {0}")]
    NotIncreasing(usize),
    #[error("alignment pairs answer token {0} with unequal response token {1}")]
    Unequal(usize, usize),
}

fn check_alignment(
    answer: &TokenSequence,
    response: &TokenSequence,
    alignment: &Alignment,
) -> Result<(), AlignmentMismatch> {
    if alignment.answer_len != answer.len() {
        return Err(AlignmentMismatch::Length {
            side: "answer",
            expected: alignment.answer_len,
            actual: answer.len(),
        });
    }
    if alignment.response_len != response.len() {
        return Err(AlignmentMismatch::Length {
            side: "response",
            expected: alignment.response_len,
            actual: response.len(),
        });
    }
    let mut prev: Option<(usize, usize)> = None;
    for (k, &(a, r)) in alignment.pairs.iter().enumerate() {
        let (Some(at), Some(rt)) = (answer.get(a), response.get(r)) else {
            return Err(AlignmentMismatch::OutOfRange(a, r));
        };
        if prev.is_some_and(|(pa, pr)| a <= pa || r <= pr) {
            return Err(AlignmentMismatch::NotIncreasing(k));
        }
        if at.normalized != rt.normalized {
            return Err(AlignmentMismatch::Unequal(a, r));
        }
        prev = Some((a, r));
    }
    Ok(())
}

/// Classifies every unaligned token of `answer` and `response`.
///
/// Both sequences must have been lexed under the policy used to build
/// `alignment`; values are compared by their normalized text.
pub fn classify(
    answer: &TokenSequence,
    response: &TokenSequence,
    alignment: &Alignment,
) -> Result<MistakeReport, AlignmentMismatch> {
    check_alignment(answer, response, alignment)?;
    let answer_aligned = alignment.answer_mask();
    let response_aligned = alignment.response_mask();

    // value -> [a, r, l]
    let mut tally: IndexMap<&str, [usize; 3]> = IndexMap::new();
    for t in &answer.tokens {
        tally.entry(&t.normalized).or_default()[0] += 1;
    }
    for t in &response.tokens {
        tally.entry(&t.normalized).or_default()[1] += 1;
    }
    for &(a, _) in &alignment.pairs {
        tally[answer.tokens[a].normalized.as_str()][2] += 1;
    }
    let counts: Vec<ValueCounts> = tally
        .iter()
        .map(|(v, &[a, r, l])| ValueCounts::new(*v, a, r, l))
        .collect();
    let by_value: HashMap<&str, &ValueCounts> =
        counts.iter().map(|c| (c.value.as_str(), c)).collect();

    let mut unaligned_answer: HashMap<&str, Vec<usize>> = HashMap::new();
    for t in answer.tokens.iter().filter(|t| !answer_aligned[t.index]) {
        unaligned_answer
            .entry(&t.normalized)
            .or_default()
            .push(t.index);
    }

    let mut misplaced = Vec::new();
    let mut extra = Vec::new();
    let mut seen: HashMap<&str, usize> = HashMap::new();
    for t in response
        .tokens
        .iter()
        .filter(|t| !response_aligned[t.index])
    {
        let value = t.normalized.as_str();
        let nth = seen.entry(value).or_default();
        let vc = by_value[value];
        let mut mistake = Mistake {
            kind: MistakeKind::Extra,
            value: value.to_owned(),
            text: t.raw.clone(),
            response_index: Some(t.index),
            span: Some(t.span),
            answer_index: None,
        };
        if *nth < vc.misplaced {
            mistake.kind = MistakeKind::Misplaced;
            mistake.answer_index = Some(unaligned_answer[value][*nth]);
            misplaced.push(mistake);
        } else {
            extra.push(mistake);
        }
        *nth += 1;
    }

    let mut missing = Vec::new();
    for (value, indices) in &unaligned_answer {
        let vc = by_value[value];
        for &i in &indices[indices.len() - vc.missing..] {
            let t = &answer.tokens[i];
            missing.push(Mistake {
                kind: MistakeKind::Missing,
                value: (*value).to_owned(),
                text: t.raw.clone(),
                response_index: None,
                span: None,
                answer_index: Some(i),
            });
        }
    }
    missing.sort_by_key(|m| m.answer_index);

    let mut mistakes = misplaced;
    mistakes.append(&mut extra);
    mistakes.append(&mut missing);

    let mut report = MistakeReport {
        alignment: alignment.clone(),
        counts,
        mistakes,
        grade: 0.0,
    };
    report.grade = grade_fraction(&report, answer.len(), response.len());
    Ok(report)
}

//! Grades and best-answer selection.

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{classify, MistakeReport};
use crate::bank::Question;
use crate::lcs::{lcs_align, MAX_TOKENS};
use crate::lexer::{tokenize, LexError};
use crate::messages::render_messages;

/// `|LCS| / max(answer_len, response_len)`, and 0 for an empty response.
///
/// Dividing by the longer side means padding a response with junk lowers the
/// grade just like leaving tokens out does. Questions never have empty
/// answers; two empty sequences grade 1 since nothing is wrong.
pub fn grade_fraction(report: &MistakeReport, answer_len: usize, response_len: usize) -> f64 {
    let denom = answer_len.max(response_len);
    if denom == 0 {
        return 1.0;
    }
    if response_len == 0 {
        return 0.0;
    }
    report.alignment.len() as f64 / denom as f64
}

/// One graded submission, as written to the attempt log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradedAttempt {
    pub question_id: String,
    pub response_text: String,
    pub chosen_answer_index: usize,
    pub report: MistakeReport,
    pub messages: Vec<String>,
    pub timestamp: DateTime<Utc>,
}

impl GradedAttempt {
    pub fn grade(&self) -> f64 {
        self.report.grade
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradeError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error("response has {0} tokens, more than the limit of {MAX_TOKENS}")]
    TooLong(usize),
}

/// Grades `response` against every reference answer of `question` and keeps
/// the best: highest grade, then fewest mistakes, then lowest answer index.
pub fn evaluate(question: &Question, response: &str) -> Result<GradedAttempt, GradeError> {
    evaluate_at(question, response, Utc::now())
}

/// [`evaluate`] with an explicit timestamp.
pub fn evaluate_at(
    question: &Question,
    response: &str,
    timestamp: DateTime<Utc>,
) -> Result<GradedAttempt, GradeError> {
    let policy = question.policy();
    let lexed = tokenize(response, question.lexer(), policy)?;
    if lexed.len() > MAX_TOKENS {
        return Err(GradeError::TooLong(lexed.len()));
    }

    let mut best: Option<(usize, MistakeReport)> = None;
    for (index, answer) in question.lexed_answers().iter().enumerate() {
        let alignment = lcs_align(answer, &lexed, policy);
        let report = classify(answer, &lexed, &alignment)
            .expect("alignment computed from the same sequences");
        let better = match &best {
            None => true,
            Some((_, b)) => {
                report.grade > b.grade
                    || (report.grade == b.grade && report.mistakes.len() < b.mistakes.len())
            }
        };
        if better {
            best = Some((index, report));
        }
    }
    let (chosen_answer_index, report) = best.expect("questions have at least one answer");
    let messages = render_messages(&report, &question.answers()[chosen_answer_index]);
    Ok(GradedAttempt {
        question_id: question.id().to_owned(),
        response_text: response.to_owned(),
        chosen_answer_index,
        report,
        messages,
        timestamp,
    })
}

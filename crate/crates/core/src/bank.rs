//! Questions, reference answers and the on-disk question bank.
//!
//! A question file is a single JSON object:
//!
//! ```json
//! {
//!   "id": "function-header",
//!   "prompt": "Write the header ...",
//!   "lexer": "c-family",
//!   "case_sensitive": true,
//!   "answers": [{ "text": "void f(int a)", "descriptions": ["..."] }]
//! }
//! ```
//!
//! `case_sensitive` may be omitted, in which case the lexer's default applies.
//! Unknown fields are rejected.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lcs::MAX_TOKENS;
use crate::lexer::{tokenize, LexerId};
use crate::token::{ComparisonPolicy, TokenSequence};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceAnswer {
    pub text: String,
    /// Grammatical role of each answer token, used instead of the token text
    /// in misplaced and missing messages.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descriptions: Option<Vec<String>>,
}

impl ReferenceAnswer {
    pub fn new(text: impl Into<String>) -> Self {
        ReferenceAnswer {
            text: text.into(),
            descriptions: None,
        }
    }

    pub fn with_descriptions<S: Into<String>>(mut self, d: impl IntoIterator<Item = S>) -> Self {
        self.descriptions = Some(d.into_iter().map(Into::into).collect());
        self
    }

    pub fn description(&self, answer_index: usize) -> Option<&str> {
        self.descriptions
            .as_ref()
            .and_then(|d| d.get(answer_index))
            .map(String::as_str)
    }
}

/// Wire form of a question file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuestionFile {
    id: String,
    prompt: String,
    lexer: String,
    #[serde(default)]
    case_sensitive: Option<bool>,
    answers: Vec<ReferenceAnswer>,
}

#[derive(Debug, Error)]
pub enum QuestionError {
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
}

impl QuestionError {
    fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        QuestionError::Invalid {
            field: field.into(),
            message: message.into(),
        }
    }

    /// The offending field, e.g. `answers[0].descriptions`.
    pub fn field(&self) -> &str {
        match self {
            QuestionError::Schema { path, .. } => path,
            QuestionError::Invalid { field, .. } => field,
        }
    }
}

/// A validated question with its reference answers already lexed.
#[derive(Debug, Clone)]
pub struct Question {
    id: String,
    prompt: String,
    lexer: LexerId,
    policy: ComparisonPolicy,
    answers: Vec<ReferenceAnswer>,
    lexed: Vec<TokenSequence>,
}

impl Question {
    pub fn new(
        id: impl Into<String>,
        prompt: impl Into<String>,
        lexer: LexerId,
        policy: ComparisonPolicy,
        answers: Vec<ReferenceAnswer>,
    ) -> Result<Self, QuestionError> {
        let id = id.into();
        if id.trim().is_empty() {
            return Err(QuestionError::invalid("id", "must not be empty"));
        }
        if answers.is_empty() {
            return Err(QuestionError::invalid(
                "answers",
                "at least one reference answer is required",
            ));
        }
        let mut lexed = Vec::with_capacity(answers.len());
        for (i, answer) in answers.iter().enumerate() {
            let seq = tokenize(&answer.text, &lexer, policy)
                .map_err(|e| QuestionError::invalid(format!("answers[{i}].text"), e.to_string()))?;
            if seq.is_empty() {
                return Err(QuestionError::invalid(
                    format!("answers[{i}].text"),
                    "answer contains no tokens",
                ));
            }
            if seq.len() > MAX_TOKENS {
                return Err(QuestionError::invalid(
                    format!("answers[{i}].text"),
                    format!("{} tokens exceeds the limit of {MAX_TOKENS}", seq.len()),
                ));
            }
            if let Some(d) = &answer.descriptions {
                if d.len() != seq.len() {
                    return Err(QuestionError::invalid(
                        format!("answers[{i}].descriptions"),
                        format!(
                            "expected {} entries (one per token), found {}",
                            seq.len(),
                            d.len()
                        ),
                    ));
                }
            }
            lexed.push(seq);
        }
        Ok(Question {
            id,
            prompt: prompt.into(),
            lexer,
            policy,
            answers,
            lexed,
        })
    }

    pub fn from_json(json: &str) -> Result<Self, QuestionError> {
        let de = &mut serde_json::Deserializer::from_str(json);
        let file: QuestionFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            QuestionError::Schema {
                path: if path == "." { "<root>".into() } else { path },
                message: e.into_inner().to_string(),
            }
        })?;
        let lexer: LexerId = file
            .lexer
            .parse()
            .map_err(|e: crate::lexer::UnknownLexer| {
                QuestionError::invalid("lexer", e.to_string())
            })?;
        let policy = file
            .case_sensitive
            .map(|case_sensitive| ComparisonPolicy { case_sensitive })
            .unwrap_or_else(|| lexer.default_policy());
        Question::new(file.id, file.prompt, lexer, policy, file.answers)
    }

    pub fn to_json(&self) -> String {
        let file = QuestionFile {
            id: self.id.clone(),
            prompt: self.prompt.clone(),
            lexer: self.lexer.to_string(),
            case_sensitive: Some(self.policy.case_sensitive),
            answers: self.answers.clone(),
        };
        serde_json::to_string_pretty(&file).expect("question serializes")
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn prompt(&self) -> &str {
        &self.prompt
    }

    pub fn lexer(&self) -> &LexerId {
        &self.lexer
    }

    pub fn policy(&self) -> ComparisonPolicy {
        self.policy
    }

    pub fn answers(&self) -> &[ReferenceAnswer] {
        &self.answers
    }

    /// Token sequences of the reference answers, index-aligned with
    /// [`answers`](Self::answers).
    pub fn lexed_answers(&self) -> &[TokenSequence] {
        &self.lexed
    }
}

#[derive(Debug, Error)]
pub enum BankError {
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Question {
        path: PathBuf,
        #[source]
        source: QuestionError,
    },
    #[error("duplicate question id \"{id}\" in {first} and {second}")]
    DuplicateId {
        id: String,
        first: PathBuf,
        second: PathBuf,
    },
}

pub fn load_question(path: &Path) -> Result<Question, BankError> {
    let text = fs::read_to_string(path).map_err(|source| BankError::Io {
        path: path.to_owned(),
        source,
    })?;
    Question::from_json(&text).map_err(|source| BankError::Question {
        path: path.to_owned(),
        source,
    })
}

/// Read-only set of questions keyed by id.
#[derive(Debug, Clone, Default)]
pub struct Bank {
    questions: BTreeMap<String, Question>,
}

impl Bank {
    /// Loads every `*.json` file in `dir` (non-recursive). Any invalid file
    /// fails the whole load.
    pub fn load_dir(dir: &Path) -> Result<Self, BankError> {
        let io_err = |source| BankError::Io {
            path: dir.to_owned(),
            source,
        };
        let mut paths: Vec<PathBuf> = fs::read_dir(dir)
            .map_err(io_err)?
            .map(|e| e.map(|e| e.path()))
            .collect::<Result<_, _>>()
            .map_err(io_err)?;
        paths.retain(|p| p.is_file() && p.extension().is_some_and(|e| e == "json"));
        paths.sort();

        let mut origins: BTreeMap<String, PathBuf> = BTreeMap::new();
        let mut bank = Bank::default();
        for path in paths {
            let q = load_question(&path)?;
            if let Some(first) = origins.get(q.id()) {
                return Err(BankError::DuplicateId {
                    id: q.id().to_owned(),
                    first: first.clone(),
                    second: path,
                });
            }
            origins.insert(q.id().to_owned(), path);
            bank.questions.insert(q.id().to_owned(), q);
        }
        Ok(bank)
    }

    pub fn from_questions(questions: impl IntoIterator<Item = Question>) -> Result<Self, String> {
        let mut bank = Bank::default();
        for q in questions {
            let id = q.id().to_owned();
            if bank.questions.insert(id.clone(), q).is_some() {
                return Err(format!("duplicate question id \"{id}\""));
            }
        }
        Ok(bank)
    }

    pub fn get(&self, id: &str) -> Option<&Question> {
        self.questions.get(id)
    }

    pub fn len(&self) -> usize {
        self.questions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.questions.is_empty()
    }

    /// Questions in id order.
    pub fn iter(&self) -> impl Iterator<Item = &Question> {
        self.questions.values()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = r#"{
        "id": "header",
        "prompt": "Write the header",
        "lexer": "c-family",
        "case_sensitive": true,
        "answers": [{"text": "void f(int a)", "descriptions": ["t","n","(","at","an",")"]}]
    }"#;

    #[test]
    fn parses_valid_question() {
        let q = Question::from_json(HEADER).unwrap();
        assert_eq!(q.id(), "header");
        assert_eq!(q.lexed_answers()[0].len(), 6);
        assert_eq!(q.answers()[0].description(1), Some("n"));
        assert!(q.policy().case_sensitive);
    }

    #[test]
    fn case_sensitivity_defaults_to_lexer() {
        let q = Question::from_json(
            r#"{"id":"e","prompt":"p","lexer":"english","answers":[{"text":"The cat"}]}"#,
        )
        .unwrap();
        assert!(!q.policy().case_sensitive);
        let q = Question::from_json(
            r#"{"id":"e","prompt":"p","lexer":"english","case_sensitive":true,"answers":[{"text":"The cat"}]}"#,
        )
        .unwrap();
        assert!(q.policy().case_sensitive);
    }

    #[test]
    fn json_round_trip() {
        let q = Question::from_json(HEADER).unwrap();
        let again = Question::from_json(&q.to_json()).unwrap();
        assert_eq!(again.answers(), q.answers());
        assert_eq!(again.policy(), q.policy());
        assert_eq!(again.lexer(), q.lexer());
    }

    fn field_of(json: &str) -> String {
        Question::from_json(json).unwrap_err().field().to_owned()
    }

    #[test]
    fn errors_name_the_offending_field() {
        assert_eq!(
            field_of(
                r#"{"id":"x","prompt":"p","lexer":"c-family","answers":[{"text":"a","extra":1}]}"#
            ),
            "answers[0].extra"
        );
        assert_eq!(
            field_of(r#"{"id":"x","prompt":"p","lexer":"c-family","answers":[{"text":5}]}"#),
            "answers[0].text"
        );
        assert_eq!(
            field_of(r#"{"id":"x","prompt":"p","lexer":"klingon","answers":[{"text":"a"}]}"#),
            "lexer"
        );
        assert_eq!(
            field_of(r#"{"id":"","prompt":"p","lexer":"c-family","answers":[{"text":"a"}]}"#),
            "id"
        );
        assert_eq!(
            field_of(r#"{"id":"x","prompt":"p","lexer":"c-family","answers":[]}"#),
            "answers"
        );
        assert_eq!(
            field_of(
                r#"{"id":"x","prompt":"p","lexer":"c-family","answers":[{"text":"a","descriptions":["1","2"]}]}"#
            ),
            "answers[0].descriptions"
        );
        assert_eq!(
            field_of(
                r#"{"id":"x","prompt":"p","lexer":"c-family","answers":[{"text":"a"},{"text":"\"open"}]}"#
            ),
            "answers[1].text"
        );
        assert_eq!(
            field_of(r#"{"id":"x","prompt":"p","lexer":"c-family","answers":[{"text":"  "}]}"#),
            "answers[0].text"
        );
        let err = Question::from_json(r#"{"id":"x","prompt":"p","lexer":"c-family"}"#).unwrap_err();
        assert!(err.to_string().contains("answers"), "{err}");
        let err = Question::from_json(
            r#"{"id":"x","prompt":"p","lexer":"c-family","answers":[{"text":"a"}],"bogus":1}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("bogus"), "{err}");
    }

    #[test]
    fn bank_loads_directory_and_rejects_duplicates() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("a.json"), HEADER).unwrap();
        fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
        fs::write(
            dir.path().join("b.json"),
            r#"{"id":"other","prompt":"p","lexer":"english","answers":[{"text":"Hi."}]}"#,
        )
        .unwrap();
        let bank = Bank::load_dir(dir.path()).unwrap();
        assert_eq!(bank.len(), 2);
        assert_eq!(
            bank.iter().map(|q| q.id()).collect::<Vec<_>>(),
            ["header", "other"]
        );

        fs::write(dir.path().join("c.json"), HEADER).unwrap();
        assert!(matches!(
            Bank::load_dir(dir.path()),
            Err(BankError::DuplicateId { .. })
        ));
    }

    #[test]
    fn bank_load_fails_on_invalid_file() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("bad.json"), "{").unwrap();
        let err = Bank::load_dir(dir.path()).unwrap_err();
        assert!(err.to_string().contains("bad.json"));
    }
}

//! Token data model and the equality policy used when aligning sequences.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lexer::LexerId;

/// Lexical category of a token.
///
/// The kind is informational only; it never participates in equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TokenKind {
    Identifier,
    KeywordLike,
    NumberLiteral,
    StringLiteral,
    Punctuation,
    Word,
    Other,
}

impl TokenKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TokenKind::Identifier => "identifier",
            TokenKind::KeywordLike => "keyword-like",
            TokenKind::NumberLiteral => "number-literal",
            TokenKind::StringLiteral => "string-literal",
            TokenKind::Punctuation => "punctuation",
            TokenKind::Word => "word",
            TokenKind::Other => "other",
        }
    }
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Half-open byte range `[start, end)` into the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start < end, "empty span {start}..{end}");
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start >= self.end
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// One lexeme of a response or reference answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub kind: TokenKind,
    /// Exact source substring.
    pub raw: String,
    /// Comparison text: `raw` after the policy's normalization. Never empty.
    pub normalized: String,
    pub span: Span,
    /// Position within the containing sequence.
    pub index: usize,
}

/// Decides when two tokens count as the same lexeme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComparisonPolicy {
    pub case_sensitive: bool,
}

impl ComparisonPolicy {
    pub const CASE_SENSITIVE: ComparisonPolicy = ComparisonPolicy {
        case_sensitive: true,
    };
    pub const CASE_INSENSITIVE: ComparisonPolicy = ComparisonPolicy {
        case_sensitive: false,
    };

    /// Applies the policy's normalization to a raw lexeme.
    pub fn normalize(&self, raw: &str) -> String {
        if self.case_sensitive {
            raw.to_owned()
        } else {
            raw.to_lowercase()
        }
    }

    pub fn texts_equal(&self, a: &str, b: &str) -> bool {
        if self.case_sensitive {
            a == b
        } else {
            a == b || a.to_lowercase() == b.to_lowercase()
        }
    }
}

/// Token equality under `policy`. Kinds are ignored.
pub fn tokens_equal(a: &Token, b: &Token, policy: ComparisonPolicy) -> bool {
    policy.texts_equal(&a.normalized, &b.normalized)
}

/// The output of a lexer: tokens plus the text they came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenSequence {
    pub tokens: Vec<Token>,
    pub source: String,
    pub lexer_id: LexerId,
}

impl TokenSequence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn normalized(&self) -> impl Iterator<Item = &str> + '_ {
        self.tokens.iter().map(|t| t.normalized.as_str())
    }

    pub fn get(&self, index: usize) -> Option<&Token> {
        self.tokens.get(index)
    }
}

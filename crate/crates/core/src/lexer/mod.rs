//! Pluggable tokenizers.
//!
//! Every language-specific rule lives behind [`Lexer`]; the alignment and
//! classification code only ever sees [`TokenSequence`]s. Adding a language
//! means implementing the trait and listing it in [`REGISTRY`].

mod c_family;
mod english;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::token::{ComparisonPolicy, Span, Token, TokenKind, TokenSequence};

pub use c_family::CFamilyLexer;
pub use english::EnglishLexer;

/// A lexeme boundary as found by a lexer, before normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lexeme {
    pub kind: TokenKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("{message} at byte {position}")]
pub struct LexError {
    /// Byte offset into the source where the offending construct starts.
    pub position: usize,
    pub message: String,
}

impl LexError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        LexError {
            position,
            message: message.into(),
        }
    }
}

pub trait Lexer: Send + Sync {
    fn id(&self) -> &'static str;

    /// Case handling used when a question does not say otherwise.
    fn default_policy(&self) -> ComparisonPolicy;

    /// Splits `source` into lexemes in source order, skipping whitespace and
    /// anything else the language treats as insignificant.
    fn scan(&self, source: &str) -> Result<Vec<Lexeme>, LexError>;
}

pub static REGISTRY: &[&dyn Lexer] = &[&CFamilyLexer, &EnglishLexer];

pub fn lookup(id: &str) -> Option<&'static dyn Lexer> {
    REGISTRY.iter().copied().find(|l| l.id() == id)
}

/// Name of a registered lexer, e.g. `"c-family"` or `"english"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LexerId(&'static str);

impl Serialize for LexerId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.0)
    }
}

impl<'de> Deserialize<'de> for LexerId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl LexerId {
    pub const C_FAMILY: LexerId = LexerId("c-family");
    pub const ENGLISH: LexerId = LexerId("english");

    pub fn as_str(&self) -> &'static str {
        self.0
    }

    pub fn lexer(&self) -> &'static dyn Lexer {
        // Construction goes through the registry, so the lookup cannot fail.
        lookup(self.0).expect("LexerId always names a registered lexer")
    }

    pub fn default_policy(&self) -> ComparisonPolicy {
        self.lexer().default_policy()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown lexer \"{0}\" (expected one of: {known})", known = known_ids())]
pub struct UnknownLexer(pub String);

fn known_ids() -> String {
    REGISTRY
        .iter()
        .map(|l| l.id())
        .collect::<Vec<_>>()
        .join(", ")
}

impl FromStr for LexerId {
    type Err = UnknownLexer;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        lookup(s)
            .map(|l| LexerId(l.id()))
            .ok_or_else(|| UnknownLexer(s.to_owned()))
    }
}

impl fmt::Display for LexerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// Lexes `source` with the given lexer and normalizes every token under
/// `policy`.
pub fn tokenize(
    source: &str,
    lexer: &LexerId,
    policy: ComparisonPolicy,
) -> Result<TokenSequence, LexError> {
    let lexemes = lexer.lexer().scan(source)?;
    let tokens = lexemes
        .into_iter()
        .enumerate()
        .map(|(index, lx)| {
            let raw = &source[lx.span.start..lx.span.end];
            Token {
                kind: lx.kind,
                raw: raw.to_owned(),
                normalized: policy.normalize(raw),
                span: lx.span,
                index,
            }
        })
        .collect();
    Ok(TokenSequence {
        tokens,
        source: source.to_owned(),
        lexer_id: lexer.clone(),
    })
}

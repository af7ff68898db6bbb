use super::{LexError, Lexeme, Lexer};
use crate::token::{ComparisonPolicy, Span, TokenKind};

const PUNCTUATION: &[char] = &['.', ',', ';', ':', '!', '?', '"', '\'', '(', ')', '—'];

/// Word-level tokenizer for English sentences. Never fails.
///
/// A word is a run of letters that may contain apostrophes and hyphens
/// between letters (`cat's`, `well-known`). Digit runs become number tokens.
/// Every listed punctuation mark is a token of its own; any other
/// non-whitespace character is a one-character [`TokenKind::Other`] token.
#[derive(Debug, Clone, Copy, Default)]
pub struct EnglishLexer;

fn is_joiner(c: char) -> bool {
    matches!(c, '\'' | '’' | '-')
}

impl Lexer for EnglishLexer {
    fn id(&self) -> &'static str {
        "english"
    }

    fn default_policy(&self) -> ComparisonPolicy {
        ComparisonPolicy::CASE_INSENSITIVE
    }

    fn scan(&self, source: &str) -> Result<Vec<Lexeme>, LexError> {
        let mut out = Vec::new();
        let mut chars = source.char_indices().peekable();
        while let Some((start, c)) = chars.next() {
            if c.is_whitespace() {
                continue;
            }
            let mut end = start + c.len_utf8();
            let kind = if c.is_alphabetic() {
                loop {
                    let rest = &source[end..];
                    let mut it = rest.chars();
                    match (it.next(), it.next()) {
                        (Some(n), _) if n.is_alphabetic() => end += n.len_utf8(),
                        (Some(j), Some(n)) if is_joiner(j) && n.is_alphabetic() => {
                            end += j.len_utf8() + n.len_utf8()
                        }
                        _ => break,
                    }
                }
                TokenKind::Word
            } else if c.is_ascii_digit() {
                end += source[end..]
                    .chars()
                    .take_while(|d| d.is_ascii_digit())
                    .count();
                TokenKind::NumberLiteral
            } else if PUNCTUATION.contains(&c) {
                TokenKind::Punctuation
            } else {
                TokenKind::Other
            };
            while chars.peek().is_some_and(|&(i, _)| i < end) {
                chars.next();
            }
            out.push(Lexeme {
                kind,
                span: Span::new(start, end),
            });
        }
        Ok(out)
    }
}

use super::{LexError, Lexeme, Lexer};
use crate::token::{ComparisonPolicy, Span, TokenKind};

/// Operators and separators, longest first so the first hit is the longest
/// match.
const OPERATORS: &[&str] = &[
    "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||", //
    "{", "}", "(", ")", "[", "]", ";", ",", ".", "+", "-", "*", "/", "%", "=", "<", ">", "!", "&",
    "|", "^", "~", "?", ":",
];

/// Tokenizer for C, C++, Java and similar languages.
///
/// There is no keyword table: `int` and `void` are plain identifiers. Unknown
/// characters (`#`, `@`, non-ASCII symbols) become single-character
/// [`TokenKind::Other`] tokens.
#[derive(Debug, Clone, Copy, Default)]
pub struct CFamilyLexer;

fn is_ident_start(c: char) -> bool {
    c == '_' || c.is_alphabetic()
}

fn is_ident_continue(c: char) -> bool {
    c == '_' || c.is_alphabetic() || c.is_ascii_digit()
}

struct Scanner<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat_while(&mut self, pred: impl Fn(char) -> bool) {
        while self.peek().is_some_and(&pred) {
            self.bump();
        }
    }

    /// Skips whitespace and comments. Returns an error for an unterminated
    /// block comment.
    fn skip_trivia(&mut self) -> Result<(), LexError> {
        loop {
            self.eat_while(char::is_whitespace);
            let rest = self.rest();
            if rest.starts_with("//") {
                match rest.find('\n') {
                    Some(nl) => self.pos += nl + 1,
                    None => self.pos = self.src.len(),
                }
            } else if let Some(body) = rest.strip_prefix("/*") {
                match body.find("*/") {
                    Some(end) => self.pos += 2 + end + 2,
                    None => return Err(LexError::new(self.pos, "unterminated block comment")),
                }
            } else {
                return Ok(());
            }
        }
    }

    fn quoted(&mut self, quote: char) -> Result<(), LexError> {
        let start = self.pos;
        self.bump();
        loop {
            match self.bump() {
                Some('\\') => {
                    // An escaped newline is still a broken literal.
                    if matches!(self.bump(), None | Some('\n')) {
                        break;
                    }
                }
                Some(c) if c == quote => return Ok(()),
                Some('\n') | None => break,
                Some(_) => {}
            }
        }
        let what = if quote == '"' { "string" } else { "character" };
        Err(LexError::new(start, format!("unterminated {what} literal")))
    }

    fn number(&mut self) {
        self.eat_while(|c| c.is_ascii_digit());
        if self.peek() == Some('.') {
            self.bump();
            self.eat_while(|c| c.is_ascii_digit());
        }
    }
}

impl Lexer for CFamilyLexer {
    fn id(&self) -> &'static str {
        "c-family"
    }

    fn default_policy(&self) -> ComparisonPolicy {
        ComparisonPolicy::CASE_SENSITIVE
    }

    fn scan(&self, source: &str) -> Result<Vec<Lexeme>, LexError> {
        let mut sc = Scanner {
            src: source,
            pos: 0,
        };
        let mut out = Vec::new();
        loop {
            sc.skip_trivia()?;
            let start = sc.pos;
            let Some(c) = sc.peek() else { break };
            let kind = if is_ident_start(c) {
                sc.eat_while(is_ident_continue);
                TokenKind::Identifier
            } else if c.is_ascii_digit() {
                sc.number();
                TokenKind::NumberLiteral
            } else if c == '"' || c == '\'' {
                sc.quoted(c)?;
                TokenKind::StringLiteral
            } else if let Some(op) = OPERATORS.iter().find(|op| sc.rest().starts_with(*op)) {
                sc.pos += op.len();
                TokenKind::Punctuation
            } else {
                sc.bump();
                TokenKind::Other
            };
            out.push(Lexeme {
                kind,
                span: Span::new(start, sc.pos),
            });
        }
        Ok(out)
    }
}

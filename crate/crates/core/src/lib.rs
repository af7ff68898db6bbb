//! Detects token-sequence mistakes in free-text responses to grammar
//! exercises.
//!
//! A response and each reference answer are lexed into tokens, aligned by a
//! longest common subsequence, and every token left outside the alignment is
//! reported as misplaced, missing or extra. Messages can name the grammatical
//! role of an answer token instead of revealing its text.
//!
//! ```
//! use seqgrade_core::{evaluate, ComparisonPolicy, LexerId, Question, ReferenceAnswer};
//!
//! let q = Question::new(
//!     "header",
//!     "Write the function header",
//!     LexerId::C_FAMILY,
//!     ComparisonPolicy::CASE_SENSITIVE,
//!     vec![ReferenceAnswer::new("void function(int abc, int def)")],
//! )
//! .unwrap();
//! let attempt = evaluate(&q, "function int abc, int def, void").unwrap();
//! assert_eq!(attempt.messages[0], "\"void\" is misplaced");
//! ```

pub mod analysis;
pub mod bank;
pub mod grading;
pub mod lcs;
pub mod lexer;
pub mod messages;
pub mod token;

pub use analysis::{classify, AlignmentMismatch, Mistake, MistakeKind, MistakeReport, ValueCounts};
pub use bank::{Bank, BankError, Question, QuestionError, ReferenceAnswer};
pub use grading::{evaluate, evaluate_at, grade_fraction, GradeError, GradedAttempt};
pub use lcs::{lcs_align, lcs_length, Alignment, MAX_TOKENS};
pub use lexer::{tokenize, LexError, LexerId};
pub use messages::render_messages;
pub use token::{tokens_equal, ComparisonPolicy, Span, Token, TokenKind, TokenSequence};

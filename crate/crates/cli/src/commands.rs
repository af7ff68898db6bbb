use std::fs;
use std::path::Path;
use std::process::ExitCode;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use seqgrade_core::bank::load_question;
use seqgrade_core::{
    evaluate, Bank, ComparisonPolicy, GradeError, GradedAttempt, LexerId, Question,
};
use seqgrade_server::{RouterOptions, ServeConfig, Server};

use crate::{BatchArgs, Format, GradeArgs, ServeArgs, TextInput, TokenizeArgs, ValidateArgs};

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_LEX: u8 = 2;
pub const EXIT_IMPERFECT: u8 = 3;

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))
}

fn read_input(input: &TextInput) -> Result<String, String> {
    match (&input.text, &input.file) {
        (Some(t), _) => Ok(t.clone()),
        (None, Some(f)) => read(f),
        (None, None) => unreachable!("clap requires one input"),
    }
}

fn report_lex_error(source: &str, err: &seqgrade_core::LexError) -> ExitCode {
    eprintln!("lex error at byte {}: {}", err.position, err.message);
    // Show the offending line with a caret under the position.
    let line_start = source[..err.position].rfind('\n').map_or(0, |i| i + 1);
    let line_end = source[err.position..]
        .find('\n')
        .map_or(source.len(), |i| err.position + i);
    let col = source[line_start..err.position].chars().count();
    eprintln!("  {}", &source[line_start..line_end]);
    eprintln!("  {}^", " ".repeat(col));
    ExitCode::from(EXIT_LEX)
}

pub fn tokenize(args: TokenizeArgs) -> ExitCode {
    let lexer: LexerId = match args.lexer.parse() {
        Ok(l) => l,
        Err(e) => return fail(e),
    };
    let text = match read_input(&args.input) {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    let policy = if args.case_sensitive {
        ComparisonPolicy::CASE_SENSITIVE
    } else if args.case_insensitive {
        ComparisonPolicy::CASE_INSENSITIVE
    } else {
        lexer.default_policy()
    };
    match seqgrade_core::tokenize(&text, &lexer, policy) {
        Ok(seq) => {
            for t in &seq.tokens {
                println!("{}\t{}\t{}\t{}", t.index, t.kind, t.normalized, t.span);
            }
            ExitCode::SUCCESS
        }
        Err(e) => report_lex_error(&text, &e),
    }
}

fn load(path: &Path) -> Result<Question, String> {
    load_question(path).map_err(|e| e.to_string())
}

pub fn grade(args: GradeArgs) -> ExitCode {
    let question = match load(&args.question) {
        Ok(q) => q,
        Err(e) => return fail(e),
    };
    let response = match (&args.response, &args.response_file) {
        (Some(r), _) => r.clone(),
        (None, Some(f)) => match read(f) {
            Ok(r) => r,
            Err(e) => return fail(e),
        },
        (None, None) => unreachable!("clap requires a response"),
    };
    let attempt = match evaluate(&question, &response) {
        Ok(a) => a,
        Err(GradeError::Lex(e)) => return report_lex_error(&response, &e),
        Err(e) => return fail(e),
    };
    match args.format {
        Format::Human => {
            println!("grade {:.4}", attempt.grade());
            for (i, m) in attempt.messages.iter().enumerate() {
                println!("{}. {m}", i + 1);
            }
        }
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&attempt).expect("attempt serializes")
        ),
    }
    if attempt.report.is_perfect() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_IMPERFECT)
    }
}

#[derive(Debug, Deserialize)]
struct ResponseLine {
    response: String,
}

/// Output record for a batch line that could not be graded.
#[derive(Debug, Serialize, Deserialize)]
pub struct BatchError {
    pub line: usize,
    pub error: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
}

fn grade_line(
    question: &Question,
    line_no: usize,
    line: &str,
    json_lines: bool,
) -> Result<GradedAttempt, BatchError> {
    let response = if json_lines {
        serde_json::from_str::<ResponseLine>(line)
            .map_err(|e| BatchError {
                line: line_no,
                error: format!("malformed JSON line: {e}"),
                position: None,
            })?
            .response
    } else {
        line.to_owned()
    };
    evaluate(question, &response).map_err(|e| BatchError {
        line: line_no,
        position: match &e {
            GradeError::Lex(l) => Some(l.position),
            _ => None,
        },
        error: match e {
            GradeError::Lex(l) => l.message,
            other => other.to_string(),
        },
    })
}

pub fn batch(args: BatchArgs) -> ExitCode {
    let question = match load(&args.question) {
        Ok(q) => q,
        Err(e) => return fail(e),
    };
    let input = match read(&args.responses) {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    let lines: Vec<&str> = input.lines().collect();
    let results: Vec<Result<GradedAttempt, BatchError>> = lines
        .par_iter()
        .enumerate()
        .map(|(i, line)| grade_line(&question, i + 1, line, args.json_lines))
        .collect();

    let mut graded = 0usize;
    let mut total = 0.0;
    let mut failed = 0usize;
    for r in &results {
        let json = match r {
            Ok(a) => {
                graded += 1;
                total += a.grade();
                serde_json::to_string(a)
            }
            Err(e) => {
                failed += 1;
                serde_json::to_string(e)
            }
        };
        println!("{}", json.expect("record serializes"));
    }
    let mean = if graded == 0 {
        0.0
    } else {
        total / graded as f64
    };
    eprintln!("count {graded}, mean grade {mean:.4}, errors {failed}");
    ExitCode::SUCCESS
}

pub fn validate(args: ValidateArgs) -> ExitCode {
    let mut ok = true;
    for path in &args.paths {
        if path.is_dir() {
            match Bank::load_dir(path) {
                Ok(bank) => println!("{}: {} questions ok", path.display(), bank.len()),
                Err(e) => {
                    eprintln!("error: {e}");
                    ok = false;
                }
            }
        } else {
            match load(path) {
                Ok(q) => println!("{}: question \"{}\" ok", path.display(), q.id()),
                Err(e) => {
                    eprintln!("error: {e}");
                    ok = false;
                }
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_USAGE)
    }
}

pub fn serve(args: ServeArgs) -> ExitCode {
    let cfg = ServeConfig {
        port: args.port,
        bank_dir: args.bank,
        log: args.log,
        router: RouterOptions {
            ui_dir: args.ui_dir,
            cors_origin: args.cors_origin,
        },
    };
    let runtime = match tokio::runtime::Runtime::new() {
        Ok(rt) => rt,
        Err(e) => return fail(e),
    };
    let result = runtime.block_on(async {
        let server = Server::bind(&cfg).await?;
        eprintln!(
            "serving {} questions on http://{}",
            server.question_count(),
            server.local_addr()?
        );
        server.run().await
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}

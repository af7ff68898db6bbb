//! `seqgrade` command-line tool.
//!
//! Exit codes: 0 success or perfect grade, 1 usage or input error, 2 lex
//! error in the response, 3 graded with mistakes.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "seqgrade", version, about = "Token-sequence mistake grading")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the tokens of a text, one per line
    Tokenize(TokenizeArgs),
    /// Grade one response against a question file
    Grade(GradeArgs),
    /// Grade one response per line of a file, writing NDJSON
    Batch(BatchArgs),
    /// Check question files or a bank directory
    Validate(ValidateArgs),
    /// Run the HTTP API
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
#[group(id = "input", required = true, multiple = false)]
struct TextInput {
    /// Inline text
    #[arg(long)]
    text: Option<String>,
    /// Read the text from a file
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TokenizeArgs {
    #[arg(long)]
    lexer: String,
    #[command(flatten)]
    input: TextInput,
    /// Override the lexer's default case handling
    #[arg(long, conflicts_with = "case_insensitive")]
    case_sensitive: bool,
    #[arg(long)]
    case_insensitive: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Debug, Args)]
struct GradeArgs {
    /// Question file (JSON)
    #[arg(long)]
    question: PathBuf,
    /// Response text
    #[arg(
        long,
        required_unless_present = "response_file",
        conflicts_with = "response_file"
    )]
    response: Option<String>,
    /// Read the response from a file
    #[arg(long)]
    response_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
}

#[derive(Debug, Args)]
struct BatchArgs {
    #[arg(long)]
    question: PathBuf,
    /// One response per line
    #[arg(long)]
    responses: PathBuf,
    /// Treat each line as a JSON object `{"response": "..."}`
    #[arg(long)]
    json_lines: bool,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    /// Question files or bank directories
    #[arg(required = true)]
    paths: Vec<PathBuf>,
}

#[derive(Debug, Args)]
struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    port: u16,
    /// Directory of question files
    #[arg(long)]
    bank: PathBuf,
    /// Append graded attempts to this NDJSON file
    #[arg(long)]
    log: Option<PathBuf>,
    /// Serve built UI assets from this directory at `/`
    #[arg(long)]
    ui_dir: Option<PathBuf>,
    /// Allow cross-origin API calls from this origin
    #[arg(long)]
    cors_origin: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(commands::EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Command::Tokenize(args) => commands::tokenize(args),
        Command::Grade(args) => commands::grade(args),
        Command::Batch(args) => commands::batch(args),
        Command::Validate(args) => commands::validate(args),
        Command::Serve(args) => commands::serve(args),
    }
}

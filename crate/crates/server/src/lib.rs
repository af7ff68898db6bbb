//! HTTP API over a question bank.
//!
//! | route                               | result                               |
//! |-------------------------------------|--------------------------------------|
//! | `GET /api/health`                   | `{status, questions}`                |
//! | `GET /api/questions`                | `[{id, prompt, lexer}]`              |
//! | `POST /api/questions/{id}/attempts` | `{grade, messages, mistakes, chosen_answer_index}` |
//!
//! Reference answers never leave the server except through the rendered
//! messages and the values of missing tokens, which say no more than the
//! messages do.

mod api;
mod log;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::http::HeaderValue;
use axum::Router;
use seqgrade_core::{Bank, BankError};
use thiserror::Error;
use tower_http::cors::CorsLayer;
use tower_http::services::ServeDir;

pub use api::{AttemptRequest, AttemptResponse, ErrorBody, Health, MistakeView, QuestionSummary};
pub use log::AttemptLog;

#[derive(Clone)]
pub struct AppState {
    pub bank: Arc<Bank>,
    pub log: Option<Arc<AttemptLog>>,
}

impl AppState {
    pub fn new(bank: Bank) -> Self {
        AppState {
            bank: Arc::new(bank),
            log: None,
        }
    }

    pub fn with_log(mut self, log: AttemptLog) -> Self {
        self.log = Some(Arc::new(log));
        self
    }
}

#[derive(Debug, Clone, Default)]
pub struct RouterOptions {
    /// Directory of built UI assets served at `/`.
    pub ui_dir: Option<PathBuf>,
    /// Origin allowed to call the API cross-origin.
    pub cors_origin: Option<String>,
}

pub fn router(state: AppState, opts: &RouterOptions) -> Result<Router, ServeError> {
    let mut app = api::routes().with_state(state);
    if let Some(dir) = &opts.ui_dir {
        app = app.fallback_service(ServeDir::new(dir));
    }
    if let Some(origin) = &opts.cors_origin {
        let origin = HeaderValue::from_str(origin)
            .map_err(|_| ServeError::Config(format!("invalid CORS origin {origin:?}")))?;
        app = app.layer(
            CorsLayer::new()
                .allow_origin(origin)
                .allow_methods([axum::http::Method::GET, axum::http::Method::POST])
                .allow_headers([axum::http::header::CONTENT_TYPE]),
        );
    }
    Ok(app)
}

#[derive(Debug, Clone)]
pub struct ServeConfig {
    pub port: u16,
    pub bank_dir: PathBuf,
    pub log: Option<PathBuf>,
    pub router: RouterOptions,
}

#[derive(Debug, Error)]
pub enum ServeError {
    #[error(transparent)]
    Bank(#[from] BankError),
    #[error("opening attempt log {path}: {source}")]
    Log {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A loaded bank with its listener already bound.
pub struct Server {
    listener: tokio::net::TcpListener,
    app: Router,
    questions: usize,
}

impl Server {
    /// Loads and validates the bank, opens the log, then binds the port.
    /// Nothing listens until every question has loaded.
    pub async fn bind(cfg: &ServeConfig) -> Result<Self, ServeError> {
        let bank = Bank::load_dir(&cfg.bank_dir)?;
        let mut state = AppState::new(bank);
        if let Some(path) = &cfg.log {
            let log = AttemptLog::open(path).map_err(|source| ServeError::Log {
                path: path.clone(),
                source,
            })?;
            state = state.with_log(log);
        }
        let questions = state.bank.len();
        let app = router(state, &cfg.router)?;
        let addr = SocketAddr::from(([0, 0, 0, 0], cfg.port));
        let listener = tokio::net::TcpListener::bind(addr).await?;
        Ok(Server {
            listener,
            app,
            questions,
        })
    }

    pub fn local_addr(&self) -> std::io::Result<SocketAddr> {
        self.listener.local_addr()
    }

    pub fn question_count(&self) -> usize {
        self.questions
    }

    pub async fn run(self) -> Result<(), ServeError> {
        axum::serve(self.listener, self.app).await?;
        Ok(())
    }
}

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};

use seqgrade_core::{evaluate, GradeError, GradedAttempt, MistakeKind, Question, Span};

use crate::AppState;

pub(crate) fn routes() -> Router<AppState> {
    Router::new()
        .route("/api/health", get(health))
        .route("/api/questions", get(list_questions))
        .route("/api/questions/{id}/attempts", post(submit_attempt))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Health {
    pub status: String,
    pub questions: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionSummary {
    pub id: String,
    pub prompt: String,
    pub lexer: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AttemptRequest {
    pub response: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MistakeView {
    pub kind: MistakeKind,
    /// The student's token for misplaced and extra mistakes. For a missing
    /// token, whatever its message shows: the description or the token.
    pub value: String,
    /// Byte offsets into the submitted response; absent for missing tokens.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span: Option<Span>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttemptResponse {
    pub grade: f64,
    pub messages: Vec<String>,
    pub mistakes: Vec<MistakeView>,
    pub chosen_answer_index: usize,
}

impl AttemptResponse {
    fn new(question: &Question, attempt: GradedAttempt) -> Self {
        let chosen = &question.answers()[attempt.chosen_answer_index];
        let mistakes = attempt
            .report
            .mistakes
            .iter()
            .map(|m| MistakeView {
                kind: m.kind,
                value: match m.kind {
                    MistakeKind::Missing => m
                        .answer_index
                        .and_then(|i| chosen.description(i))
                        .unwrap_or(&m.text)
                        .to_owned(),
                    _ => m.value.clone(),
                },
                span: m.span,
            })
            .collect();
        AttemptResponse {
            grade: attempt.report.grade,
            messages: attempt.messages,
            mistakes,
            chosen_answer_index: attempt.chosen_answer_index,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
}

fn error(status: StatusCode, message: impl Into<String>, position: Option<usize>) -> Response {
    (
        status,
        Json(ErrorBody {
            error: message.into(),
            position,
        }),
    )
        .into_response()
}

async fn health(State(state): State<AppState>) -> Json<Health> {
    Json(Health {
        status: "ok".into(),
        questions: state.bank.len(),
    })
}

async fn list_questions(State(state): State<AppState>) -> Json<Vec<QuestionSummary>> {
    Json(
        state
            .bank
            .iter()
            .map(|q| QuestionSummary {
                id: q.id().to_owned(),
                prompt: q.prompt().to_owned(),
                lexer: q.lexer().to_string(),
            })
            .collect(),
    )
}

async fn submit_attempt(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> Response {
    let Some(question) = state.bank.get(&id) else {
        return error(
            StatusCode::NOT_FOUND,
            format!("unknown question \"{id}\""),
            None,
        );
    };
    let request: AttemptRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => {
            return error(
                StatusCode::BAD_REQUEST,
                format!("malformed body: {e}"),
                None,
            )
        }
    };
    let attempt = match evaluate(question, &request.response) {
        Ok(a) => a,
        Err(GradeError::Lex(e)) => {
            return error(
                StatusCode::UNPROCESSABLE_ENTITY,
                e.message,
                Some(e.position),
            )
        }
        Err(e @ GradeError::TooLong(_)) => {
            return error(StatusCode::BAD_REQUEST, e.to_string(), None)
        }
    };
    if let Some(log) = &state.log {
        if let Err(e) = log.append(&attempt) {
            return error(
                StatusCode::INTERNAL_SERVER_ERROR,
                format!("writing attempt log: {e}"),
                None,
            );
        }
    }
    Json(AttemptResponse::new(question, attempt)).into_response()
}

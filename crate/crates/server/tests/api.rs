use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use seqgrade_core::{Bank, ComparisonPolicy, GradedAttempt, LexerId, Question, ReferenceAnswer};
use seqgrade_server::{router, AppState, AttemptLog, AttemptResponse, RouterOptions};

const HEADER_ANSWER: &str = "void function(int abc, int def)";
const HEADER_RESPONSE: &str = "function int abc, int def, void";
const DESCRIPTIONS: [&str; 9] = [
    "return value type",
    "function name",
    "opening bracket for arguments list",
    "first argument type",
    "first argument name",
    "argument list separator",
    "second argument type",
    "second argument name",
    "closing bracket for arguments list",
];

fn header_question(with_descriptions: bool) -> Question {
    let mut answer = ReferenceAnswer::new(HEADER_ANSWER);
    if with_descriptions {
        answer = answer.with_descriptions(DESCRIPTIONS);
    }
    Question::new(
        if with_descriptions {
            "header-described"
        } else {
            "header"
        },
        "Write the function header",
        LexerId::C_FAMILY,
        ComparisonPolicy::CASE_SENSITIVE,
        vec![answer],
    )
    .unwrap()
}

fn app_with(bank: Bank) -> Router {
    router(AppState::new(bank), &RouterOptions::default()).unwrap()
}

fn app() -> Router {
    app_with(Bank::from_questions([header_question(false), header_question(true)]).unwrap())
}

async fn call(app: Router, req: Request<Body>) -> (StatusCode, String) {
    let resp = app.oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}

async fn get(app: Router, uri: &str) -> (StatusCode, String) {
    call(app, Request::get(uri).body(Body::empty()).unwrap()).await
}

async fn post(app: Router, uri: &str, body: impl Into<String>) -> (StatusCode, String) {
    let req = Request::post(uri)
        .header("content-type", "application/json")
        .body(Body::from(body.into()))
        .unwrap();
    call(app, req).await
}

#[tokio::test]
async fn health_reports_question_count() {
    let (status, body) = get(app(), "/api/health").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(
        serde_json::from_str::<Value>(&body).unwrap(),
        json!({"status": "ok", "questions": 2})
    );

    let (_, body) = get(app_with(Bank::default()), "/api/health").await;
    assert_eq!(
        serde_json::from_str::<Value>(&body).unwrap(),
        json!({"status": "ok", "questions": 0})
    );
}

#[tokio::test]
async fn listing_has_only_public_fields() {
    let (status, body) = get(app(), "/api/questions").await;
    assert_eq!(status, StatusCode::OK);
    let list: Vec<Value> = serde_json::from_str(&body).unwrap();
    assert_eq!(list.len(), 2);
    for q in &list {
        let keys: Vec<_> = q.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["id", "lexer", "prompt"]);
        assert!(q.get("answers").is_none());
    }
    assert!(!body.contains(HEADER_ANSWER));

    let (_, body) = get(app_with(Bank::default()), "/api/questions").await;
    assert_eq!(body, "[]");
}

#[tokio::test]
async fn worked_example_attempt() {
    let (status, body) = post(
        app(),
        "/api/questions/header/attempts",
        json!({"response": HEADER_RESPONSE}).to_string(),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    let resp: AttemptResponse = serde_json::from_str(&body).unwrap();
    assert_eq!(
        resp.messages,
        [
            "\"void\" is misplaced",
            "there is extra \",\"",
            "\"(\" is missing",
            "\")\" is missing",
        ]
    );
    assert!((resp.grade - 6.0 / 9.0).abs() < 1e-9);
    assert_eq!(resp.chosen_answer_index, 0);

    let v: Value = serde_json::from_str(&body).unwrap();
    let mistakes = v["mistakes"].as_array().unwrap();
    assert_eq!(
        mistakes[0],
        json!({"kind": "misplaced", "value": "void", "span": {"start": 27, "end": 31}})
    );
    assert_eq!(
        mistakes[1],
        json!({"kind": "extra", "value": ",", "span": {"start": 25, "end": 26}})
    );
    assert_eq!(mistakes[2], json!({"kind": "missing", "value": "("}));
    assert_eq!(mistakes[3], json!({"kind": "missing", "value": ")"}));
    assert_eq!(&HEADER_RESPONSE[27..31], "void");
}

#[tokio::test]
async fn exact_answer_is_perfect() {
    let (status, body) = post(
        app(),
        "/api/questions/header/attempts",
        json!({"response": HEADER_ANSWER}).to_string(),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    let v: Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["grade"], json!(1.0));
    assert_eq!(v["messages"], json!([]));
    assert_eq!(v["mistakes"], json!([]));
}

#[tokio::test]
async fn error_statuses() {
    let (status, body) = post(app(), "/api/questions/nope/attempts", r#"{"response":"x"}"#).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert!(body.contains("nope"));

    let (status, _) = post(app(), "/api/questions/header/attempts", "{}").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = post(app(), "/api/questions/header/attempts", "not json").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = post(
        app(),
        "/api/questions/header/attempts",
        r#"{"response": 3}"#,
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    let (status, body) = post(
        app(),
        "/api/questions/header/attempts",
        json!({"response": "void f(\"oops"}).to_string(),
    )
    .await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let v: Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["position"], json!(7));
    assert!(v["error"].as_str().unwrap().contains("unterminated"));
}

#[tokio::test]
async fn descriptions_hide_answer_tokens() {
    let (status, body) = post(
        app(),
        "/api/questions/header-described/attempts",
        json!({"response": HEADER_RESPONSE}).to_string(),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    let resp: AttemptResponse = serde_json::from_str(&body).unwrap();
    assert_eq!(resp.messages[0], "return value type is misplaced");
    assert_eq!(
        resp.messages[2],
        "opening bracket for arguments list is missing"
    );
    assert_eq!(resp.mistakes[2].value, "opening bracket for arguments list");
    assert!(!body.contains("\"(\""));
}

#[tokio::test]
async fn sentinel_answer_never_leaks() {
    let sentinel = "zanzibar_marker ( quokka_token , 42 )";
    let q = Question::new(
        "sentinel",
        "Call the marker",
        LexerId::C_FAMILY,
        ComparisonPolicy::CASE_SENSITIVE,
        vec![ReferenceAnswer::new(sentinel).with_descriptions([
            "callee",
            "open",
            "first arg",
            "comma",
            "second arg",
            "close",
        ])],
    )
    .unwrap();
    let app = app_with(Bank::from_questions([q]).unwrap());

    let mut payloads = vec![get(app.clone(), "/api/questions").await.1];
    for response in [
        "",
        "42",
        "( , )",
        "zanzibar_marker",
        "x y z",
        "42 ( zanzibar_marker",
    ] {
        let (status, body) = post(
            app.clone(),
            "/api/questions/sentinel/attempts",
            json!({ "response": response }).to_string(),
        )
        .await;
        assert_eq!(status, StatusCode::OK);
        payloads.push(body);
    }
    for p in &payloads {
        assert!(!p.contains(sentinel), "{p}");
        assert!(!p.contains("quokka_token"), "{p}");
    }
    // Only typed by the student in one attempt; never echoed otherwise.
    assert!(!payloads[1].contains("zanzibar_marker"));
}

#[tokio::test]
async fn grading_is_referentially_transparent() {
    let body = json!({"response": HEADER_RESPONSE}).to_string();
    let (_, first) = post(app(), "/api/questions/header/attempts", body.clone()).await;
    let (_, second) = post(app(), "/api/questions/header/attempts", body).await;
    assert_eq!(first, second);
}

#[tokio::test]
async fn attempts_are_appended_to_log() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("attempts.ndjson");
    let state = AppState::new(Bank::from_questions([header_question(false)]).unwrap())
        .with_log(AttemptLog::open(&path).unwrap());
    let app = router(state, &RouterOptions::default()).unwrap();
    for r in [HEADER_RESPONSE, HEADER_ANSWER] {
        post(
            app.clone(),
            "/api/questions/header/attempts",
            json!({"response": r}).to_string(),
        )
        .await;
    }
    // a rejected attempt is not logged
    post(app.clone(), "/api/questions/header/attempts", "{}").await;

    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<GradedAttempt> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0].response_text, HEADER_RESPONSE);
    assert_eq!(lines[0].report.mistakes.len(), 4);
    assert_eq!(lines[1].report.grade, 1.0);
    assert!(text.contains("\"timestamp\":\""));
}

#[tokio::test]
async fn ui_dir_is_served_and_cors_applies() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("index.html"), "<h1>practice</h1>").unwrap();
    let opts = RouterOptions {
        ui_dir: Some(dir.path().to_owned()),
        cors_origin: Some("http://localhost:5173".into()),
    };
    let app = router(AppState::new(Bank::default()), &opts).unwrap();

    let (status, body) = get(app.clone(), "/index.html").await;
    assert_eq!(status, StatusCode::OK);
    assert!(body.contains("practice"));

    let resp = app
        .oneshot(
            Request::get("/api/health")
                .header("origin", "http://localhost:5173")
                .body(Body::empty())
                .unwrap(),
        )
        .await
        .unwrap();
    assert_eq!(
        resp.headers()["access-control-allow-origin"],
        "http://localhost:5173"
    );
}

//! Local HTTP service: one environment session per handle, requests on a
//! handle answered strictly in arrival order.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;
use tokio::sync::{Mutex, RwLock};

use compenv_core::syntax::{parse_procedure, Configuration, Instruction};
use compenv_core::transcript::UNDEFINED;
use compenv_core::verification::ConsistencyCertificate;
use compenv_core::{open_session, EnvironmentKind, Session, SessionError, DEFAULT_MAX_STEPS};

#[derive(Debug)]
pub enum ApiError {
    NotFound(String),
    Gone,
    Malformed(String),
    BadRequest(String),
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, message) = match self {
            ApiError::NotFound(id) => (StatusCode::NOT_FOUND, format!("no session {id}")),
            ApiError::Gone => (StatusCode::GONE, "session is closed".to_string()),
            ApiError::Malformed(m) => (StatusCode::CONFLICT, m),
            ApiError::BadRequest(m) => (StatusCode::BAD_REQUEST, m),
        };
        (status, Json(json!({ "error": message }))).into_response()
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        match e {
            SessionError::Closed => ApiError::Gone,
            SessionError::Syntax(_) | SessionError::Transcript(_) => {
                ApiError::Malformed(e.to_string())
            }
            other => ApiError::BadRequest(other.to_string()),
        }
    }
}

struct Handle {
    session: Session,
    created_at: u64,
}

#[derive(Clone)]
pub struct AppState {
    sessions: Arc<RwLock<HashMap<String, Arc<Mutex<Handle>>>>>,
    next_id: Arc<AtomicU64>,
    default_seed: u64,
}

impl AppState {
    pub fn new(default_seed: u64) -> Self {
        AppState {
            sessions: Arc::default(),
            next_id: Arc::new(AtomicU64::new(1)),
            default_seed,
        }
    }

    async fn handle(&self, id: &str) -> Result<Arc<Mutex<Handle>>, ApiError> {
        self.sessions
            .read()
            .await
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::NotFound(id.to_string()))
    }
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}/tbox", post(tbox))
        .route("/sessions/{id}/sbox", post(sbox))
        .route("/sessions/{id}/run", post(run))
        .route("/sessions/{id}/transcript", get(transcript))
        .route("/sessions/{id}/reveal", post(reveal))
        .with_state(state)
}

#[derive(Debug, Deserialize)]
pub struct CreateRequest {
    pub kind: EnvironmentKind,
    pub seed: Option<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CreateResponse {
    pub id: String,
    /// As visible to the client: blinded sessions say `blinded`.
    pub kind: EnvironmentKind,
    pub created_at: u64,
}

async fn create_session(
    State(state): State<AppState>,
    Json(req): Json<CreateRequest>,
) -> (StatusCode, Json<CreateResponse>) {
    let id = state.next_id.fetch_add(1, Ordering::SeqCst).to_string();
    let session = open_session(req.kind, req.seed.unwrap_or(state.default_seed));
    let created_at = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs());
    state.sessions.write().await.insert(
        id.clone(),
        Arc::new(Mutex::new(Handle {
            session,
            created_at,
        })),
    );
    (
        StatusCode::CREATED,
        Json(CreateResponse {
            id,
            kind: req.kind,
            created_at,
        }),
    )
}

fn parse_config(s: &str) -> Result<Configuration, ApiError> {
    s.parse()
        .map_err(|e| ApiError::Malformed(format!("configuration {s:?}: {e}")))
}

#[derive(Debug, Deserialize)]
pub struct TboxRequest {
    pub config: String,
    pub instruction: String,
}

async fn tbox(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Json(req): Json<TboxRequest>,
) -> Result<Json<serde_json::Value>, ApiError> {
    let config = parse_config(&req.config)?;
    let instruction: Instruction = req
        .instruction
        .parse()
        .map_err(|e| ApiError::Malformed(format!("instruction {:?}: {e}", req.instruction)))?;
    let handle = state.handle(&id).await?;
    let mut h = handle.lock().await;
    let answer = h.session.query_tbox(&config, &instruction)?;
    Ok(Json(json!({
        "seq": h.session.clock(),
        "answer": answer.map_or_else(|| UNDEFINED.to_string(), |c| c.to_string()),
    })))
}

#[derive(Debug, Deserialize)]
pub struct SboxRequest {
    pub config: String,
}

async fn sbox(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Json(req): Json<SboxRequest>,
) -> Result<Json<serde_json::Value>, ApiError> {
    let config = parse_config(&req.config)?;
    let handle = state.handle(&id).await?;
    let mut h = handle.lock().await;
    let verdict = h.session.query_sbox(&config)?;
    Ok(Json(
        json!({ "seq": h.session.clock(), "verdict": verdict }),
    ))
}

#[derive(Debug, Deserialize)]
pub struct RunRequest {
    pub procedure: String,
    pub input: String,
    pub max_steps: Option<usize>,
}

async fn run(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Json(req): Json<RunRequest>,
) -> Result<Json<serde_json::Value>, ApiError> {
    let m = parse_procedure(&req.procedure)
        .map_err(|e| ApiError::Malformed(format!("procedure: {e}")))?;
    let handle = state.handle(&id).await?;
    let mut h = handle.lock().await;
    let outcome =
        h.session
            .run_procedure(&m, &req.input, req.max_steps.unwrap_or(DEFAULT_MAX_STEPS))?;
    let path: Vec<String> = outcome
        .path()
        .configs()
        .iter()
        .map(|c| c.to_string())
        .collect();
    Ok(Json(json!({
        "seq": h.session.clock(),
        "status": outcome.status().to_string(),
        "time": outcome.time(),
        "path": path,
    })))
}

async fn transcript(
    State(state): State<AppState>,
    Path(id): Path<String>,
) -> Result<Response, ApiError> {
    let handle = state.handle(&id).await?;
    let body = handle.lock().await.session.export_transcript().to_jsonl();
    Ok(([(header::CONTENT_TYPE, "application/x-ndjson")], body).into_response())
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RevealResponse {
    pub kind: EnvironmentKind,
    pub created_at: u64,
    pub certificate: ConsistencyCertificate,
}

async fn reveal(
    State(state): State<AppState>,
    Path(id): Path<String>,
) -> Result<Json<RevealResponse>, ApiError> {
    let handle = state.handle(&id).await?;
    let mut h = handle.lock().await;
    if h.session.is_closed() {
        return Err(ApiError::Gone);
    }
    let pairs = h
        .session
        .export_transcript()
        .observed_pairs()
        .map_err(SessionError::from)?;
    let certificate = ConsistencyCertificate::new(&pairs)
        .map_err(|e| ApiError::BadRequest(format!("transcript has no static explanation: {e}")))?;
    let kind = h.session.reveal()?;
    Ok(Json(RevealResponse {
        kind,
        created_at: h.created_at,
        certificate,
    }))
}

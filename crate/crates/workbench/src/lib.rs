//! HTTP/JSON session service for interactive polymorphic K-map
//! simplification: load a function, try 1–3 cube groupings against the rule
//! matcher, accept candidates, undo, and ask for hints.

pub mod session;

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::{Arc, Mutex, OnceLock, RwLock};
use std::time::{Duration, Instant};

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use polykmap_core::io::{gen_benchmark, kmap_layout, KmapLayout, PplaDocument};
use polykmap_core::{PolyValue, TermCandidate};
use serde::{Deserialize, Serialize};
use serde_json::json;
use tower_http::cors::CorsLayer;

pub use session::{Offer, Session, SessionError, StateView};

/// Version stamped on every JSON payload.
pub const SCHEMA: u32 = 1;
pub const DEFAULT_TTL: Duration = Duration::from_secs(3600);
/// Largest arity a session accepts.
pub const MAX_SESSION_ARITY: usize = 10;
const HINT_COUNT: usize = 3;

struct Entry {
    state: RwLock<Session>,
    offers: Mutex<HashMap<String, TermCandidate>>,
    pool: OnceLock<Vec<TermCandidate>>,
    last_access: Mutex<Instant>,
}

/// In-memory sessions with idle-time eviction.
pub struct SessionStore {
    sessions: RwLock<HashMap<String, Arc<Entry>>>,
    ttl: Duration,
}

impl SessionStore {
    pub fn new(ttl: Duration) -> Self {
        SessionStore {
            sessions: RwLock::new(HashMap::new()),
            ttl,
        }
    }

    fn sweep(&self) {
        let now = Instant::now();
        self.sessions
            .write()
            .unwrap()
            .retain(|_, e| now.duration_since(*e.last_access.lock().unwrap()) < self.ttl);
    }

    fn insert(&self, session: Session) -> Arc<Entry> {
        self.sweep();
        let entry = Arc::new(Entry {
            state: RwLock::new(session),
            offers: Mutex::new(HashMap::new()),
            pool: OnceLock::new(),
            last_access: Mutex::new(Instant::now()),
        });
        let id = entry.state.read().unwrap().id.clone();
        self.sessions.write().unwrap().insert(id, entry.clone());
        entry
    }

    fn get(&self, id: &str) -> Result<Arc<Entry>, ApiError> {
        self.sweep();
        let entry = self
            .sessions
            .read()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::NotFound(id.to_string()))?;
        *entry.last_access.lock().unwrap() = Instant::now();
        Ok(entry)
    }

    pub fn len(&self) -> usize {
        self.sessions.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug)]
pub enum ApiError {
    BadRequest(String),
    NotFound(String),
    Conflict(String),
    Internal(String),
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        match e {
            SessionError::BadRequest(m) => ApiError::BadRequest(m),
            e @ (SessionError::StaleCandidate(_) | SessionError::NothingToUndo) => {
                ApiError::Conflict(e.to_string())
            }
            SessionError::Internal(m) => ApiError::Internal(m),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, kind, message) = match self {
            ApiError::BadRequest(m) => (StatusCode::BAD_REQUEST, "bad_request", m),
            ApiError::NotFound(id) => (
                StatusCode::NOT_FOUND,
                "not_found",
                format!("unknown session {id}"),
            ),
            ApiError::Conflict(m) => (StatusCode::CONFLICT, "conflict", m),
            ApiError::Internal(m) => (StatusCode::INTERNAL_SERVER_ERROR, "internal", m),
        };
        if status == StatusCode::INTERNAL_SERVER_ERROR {
            tracing::error!("{message}");
        }
        let body = json!({ "schema": SCHEMA, "error": { "kind": kind, "message": message } });
        (status, Json(body)).into_response()
    }
}

#[derive(Debug, Deserialize)]
pub struct CreateSession {
    pub ppla: Option<String>,
    pub benchmark: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SessionCreated {
    pub schema: u32,
    pub id: String,
    pub n: usize,
    pub mode_names: Option<(String, String)>,
    pub cells: Vec<PolyValue>,
    pub kmap: Option<KmapLayout>,
    #[serde(flatten)]
    pub state: StateBody,
}

#[derive(Debug, Serialize)]
pub struct StateBody {
    pub demand_remaining: Vec<session::DemandCell>,
    pub expr: String,
    pub complete: bool,
}

#[derive(Debug, Serialize)]
pub struct OffersView {
    pub schema: u32,
    pub candidates: Vec<Offer>,
}

#[derive(Debug, Deserialize)]
pub struct TryGroup {
    pub cubes: Vec<String>,
}

#[derive(Debug, Deserialize)]
pub struct Accept {
    pub candidate_id: String,
}

type AppState = Arc<SessionStore>;

async fn create_session(
    State(store): State<AppState>,
    Json(req): Json<CreateSession>,
) -> Result<(StatusCode, Json<SessionCreated>), ApiError> {
    let (function, names) = match (req.ppla, req.benchmark) {
        (Some(text), None) => {
            let doc =
                PplaDocument::parse(&text).map_err(|e| ApiError::BadRequest(e.to_string()))?;
            (doc.to_function(), doc.mode_names)
        }
        (None, Some(spec)) => {
            let f = gen_benchmark(&spec).map_err(|e| ApiError::BadRequest(e.to_string()))?;
            let names = spec
                .split_once('/')
                .map(|(a, b)| (a.to_string(), b.to_string()));
            (f, names)
        }
        _ => {
            return Err(ApiError::BadRequest(
                "provide exactly one of `ppla` or `benchmark`".into(),
            ))
        }
    };
    if function.n() > MAX_SESSION_ARITY {
        return Err(ApiError::BadRequest(format!(
            "arity {} exceeds session limit {MAX_SESSION_ARITY}",
            function.n()
        )));
    }
    let id = uuid::Uuid::new_v4().simple().to_string();
    let session = Session::new(id.clone(), function, names);
    let view = session.view()?;
    let created = SessionCreated {
        schema: SCHEMA,
        id,
        n: session.function.n(),
        mode_names: session.mode_names.clone(),
        cells: session.function.cells().to_vec(),
        kmap: kmap_layout(session.function.n()).ok(),
        state: StateBody {
            demand_remaining: view.demand_remaining,
            expr: view.expr,
            complete: view.complete,
        },
    };
    store.insert(session);
    Ok((StatusCode::CREATED, Json(created)))
}

async fn get_session(
    State(store): State<AppState>,
    Path(id): Path<String>,
) -> Result<Json<StateView>, ApiError> {
    let entry = store.get(&id)?;
    let view = entry.state.read().unwrap().view()?;
    Ok(Json(view))
}

async fn try_group(
    State(store): State<AppState>,
    Path(id): Path<String>,
    Json(req): Json<TryGroup>,
) -> Result<Json<OffersView>, ApiError> {
    let entry = store.get(&id)?;
    let state = entry.state.read().unwrap();
    let found = state.try_group(&req.cubes)?;
    let (candidates, table) = state.offers(found);
    *entry.offers.lock().unwrap() = table;
    Ok(Json(OffersView {
        schema: SCHEMA,
        candidates,
    }))
}

async fn hint(
    State(store): State<AppState>,
    Path(id): Path<String>,
) -> Result<Json<OffersView>, ApiError> {
    let entry = store.get(&id)?;
    let state = entry.state.read().unwrap();
    let pool = entry.pool.get_or_init(|| state.hint_pool());
    let (candidates, table) = state.offers(state.hint(pool, HINT_COUNT));
    *entry.offers.lock().unwrap() = table;
    Ok(Json(OffersView {
        schema: SCHEMA,
        candidates,
    }))
}

async fn accept(
    State(store): State<AppState>,
    Path(id): Path<String>,
    Json(req): Json<Accept>,
) -> Result<Json<StateView>, ApiError> {
    let entry = store.get(&id)?;
    let mut state = entry.state.write().unwrap();
    let mut offers = entry.offers.lock().unwrap();
    let term = offers
        .remove(&req.candidate_id)
        .ok_or_else(|| SessionError::StaleCandidate(req.candidate_id.clone()))?;
    offers.clear();
    state.accept(term);
    Ok(Json(state.view()?))
}

async fn undo(
    State(store): State<AppState>,
    Path(id): Path<String>,
) -> Result<Json<StateView>, ApiError> {
    let entry = store.get(&id)?;
    let mut state = entry.state.write().unwrap();
    entry.offers.lock().unwrap().clear();
    state.undo()?;
    Ok(Json(state.view()?))
}

pub fn router(store: Arc<SessionStore>) -> Router {
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/try-group", post(try_group))
        .route("/sessions/{id}/accept", post(accept))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/hint", get(hint))
        .layer(CorsLayer::permissive())
        .with_state(store)
}

/// Session TTL from `SESSION_TTL_SECS`, defaulting to one hour.
pub fn ttl_from_env() -> Duration {
    std::env::var("SESSION_TTL_SECS")
        .ok()
        .and_then(|s| s.parse().ok())
        .map(Duration::from_secs)
        .unwrap_or(DEFAULT_TTL)
}

pub async fn serve(port: u16, ttl: Duration) -> std::io::Result<()> {
    let addr = SocketAddr::from(([0, 0, 0, 0], port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!("workbench listening on {addr}");
    axum::serve(listener, router(Arc::new(SessionStore::new(ttl)))).await
}

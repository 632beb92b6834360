//! HTTP reward service.
//!
//! | method | path               | body                                              |
//! |--------|--------------------|---------------------------------------------------|
//! | GET    | `/healthz`         |                                                   |
//! | POST   | `/v1/score`        | `{candidate, reference, weights?, verbose?}`      |
//! | POST   | `/v1/batch`        | `{pairs: [{candidate, reference}], weights?, group_size?, verbose?}` |
//! | POST   | `/v1/render-score` | `{candidate_html, reference, weights?, verbose?}` |
//!
//! Schema and validation problems answer 400 with
//! `{"error": {"kind", "path", "message"}}`; an empty reference page answers
//! 422. Inside a batch, a bad slot is reported in place and the rest of the
//! batch is still scored.

use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use layoutsim_core::score::score_pair_with;
use layoutsim_core::{Error as CoreError, PageSnapshot, RewardWeights, ScoreOptions};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::batch::{BatchItem, BatchScorer};
use crate::bridge::{self, BridgeConfig};
use crate::error::{ErrorBody, ErrorResponse};
use crate::json::parse_snapshot_value;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub addr: SocketAddr,
    pub workers: usize,
    pub weights: RewardWeights,
    pub alignment_tolerance: f64,
    pub bridge: Option<BridgeConfig>,
    pub max_body_bytes: usize,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self {
            addr: SocketAddr::from(([127, 0, 0, 1], 8080)),
            workers: 64,
            weights: RewardWeights::default(),
            alignment_tolerance: 0.0,
            bridge: None,
            max_body_bytes: 256 * 1024 * 1024,
        }
    }
}

pub struct AppState {
    scorer: BatchScorer,
    config: ServiceConfig,
}

impl AppState {
    pub fn new(config: ServiceConfig) -> anyhow::Result<Self> {
        config.weights.validate()?;
        Ok(Self { scorer: BatchScorer::new(config.workers)?, config })
    }

    fn options(&self, weights: Option<RewardWeights>, verbose: bool) -> ScoreOptions {
        ScoreOptions {
            weights: weights.unwrap_or(self.config.weights),
            alignment_tolerance: self.config.alignment_tolerance,
            verbose,
            ..ScoreOptions::default()
        }
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    let limit = state.config.max_body_bytes;
    Router::new()
        .route("/healthz", get(healthz))
        .route("/v1/score", post(score))
        .route("/v1/batch", post(batch))
        .route("/v1/render-score", post(render_score))
        .layer(DefaultBodyLimit::max(limit))
        .with_state(state)
}

/// Binds `config.addr` and serves until ctrl-c.
pub async fn serve(config: ServiceConfig) -> anyhow::Result<()> {
    let addr = config.addr;
    let state = Arc::new(AppState::new(config)?);
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!(addr = %listener.local_addr()?, workers = state.scorer.workers(), "listening");
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}

struct ApiError {
    status: StatusCode,
    body: ErrorBody,
}

impl ApiError {
    fn bad_request(body: ErrorBody) -> Self {
        Self { status: StatusCode::BAD_REQUEST, body }
    }

    fn core(err: &CoreError) -> Self {
        let status = match err {
            CoreError::EmptyReference => StatusCode::UNPROCESSABLE_ENTITY,
            CoreError::Domain(_) => StatusCode::INTERNAL_SERVER_ERROR,
            _ => StatusCode::BAD_REQUEST,
        };
        Self { status, body: ErrorBody::from(err) }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(ErrorResponse { error: self.body })).into_response()
    }
}

type ApiResult = Result<Response, ApiError>;

fn decode<T: DeserializeOwned>(body: &[u8]) -> Result<T, ApiError> {
    let de = &mut serde_json::Deserializer::from_slice(body);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        ApiError::bad_request(ErrorBody::new(
            "schema",
            Some(if path == "." { String::new() } else { path }),
            e.into_inner().to_string(),
        ))
    })
}

fn snapshot_at(value: Value, path: &str) -> Result<PageSnapshot, ErrorBody> {
    parse_snapshot_value(value).map_err(|e| e.nested(path).to_body())
}

async fn blocking<R: Send + 'static>(f: impl FnOnce() -> R + Send + 'static) -> Result<R, ApiError> {
    tokio::task::spawn_blocking(f).await.map_err(|e| ApiError {
        status: StatusCode::INTERNAL_SERVER_ERROR,
        body: ErrorBody::new("internal", None, e.to_string()),
    })
}

async fn healthz() -> Json<Value> {
    Json(json!({"status": "ok"}))
}

#[derive(Deserialize)]
struct ScoreRequest {
    candidate: Value,
    reference: Value,
    #[serde(default)]
    weights: Option<RewardWeights>,
    #[serde(default)]
    verbose: bool,
}

async fn score(State(state): State<Arc<AppState>>, body: Bytes) -> ApiResult {
    let req: ScoreRequest = decode(&body)?;
    let options = state.options(req.weights, req.verbose);
    let candidate = snapshot_at(req.candidate, "candidate").map_err(ApiError::bad_request)?;
    let reference = snapshot_at(req.reference, "reference").map_err(ApiError::bad_request)?;
    score_response(state, candidate, reference, options).await
}

async fn score_response(
    state: Arc<AppState>,
    candidate: PageSnapshot,
    reference: PageSnapshot,
    options: ScoreOptions,
) -> ApiResult {
    let result = blocking(move || state.scorer.install(|| score_pair_with(&candidate, &reference, &options))).await?;
    match result {
        Ok(report) => Ok(Json(report).into_response()),
        Err(e) => Err(ApiError::core(&e)),
    }
}

#[derive(Deserialize)]
struct BatchRequest {
    pairs: Vec<Value>,
    #[serde(default)]
    weights: Option<RewardWeights>,
    #[serde(default)]
    group_size: Option<usize>,
    #[serde(default)]
    verbose: bool,
}

#[derive(Deserialize)]
struct PairRequest {
    candidate: Value,
    reference: Value,
}

fn batch_item(index: usize, value: Value) -> BatchItem {
    let at = format!("pairs[{index}]");
    let pair: PairRequest = serde_path_to_error::deserialize(value).map_err(|e| {
        let inner = e.path().to_string();
        let path = if inner == "." { at.clone() } else { format!("{at}.{inner}") };
        ErrorBody::new("schema", Some(path), e.into_inner().to_string())
    })?;
    let candidate = snapshot_at(pair.candidate, &format!("{at}.candidate"))?;
    let reference = snapshot_at(pair.reference, &format!("{at}.reference"))?;
    Ok((candidate, reference))
}

async fn batch(State(state): State<Arc<AppState>>, body: Bytes) -> ApiResult {
    let req: BatchRequest = decode(&body)?;
    let options = state.options(req.weights, req.verbose);
    options.weights.validate().map_err(|e| ApiError::core(&e))?;
    let group_size = req.group_size;
    let outcome = blocking(move || {
        let items: Vec<BatchItem> =
            state.scorer.install(|| req.pairs.into_iter().enumerate().map(|(i, v)| batch_item(i, v)).collect());
        state.scorer.score_batch(&items, &options, group_size)
    })
    .await?;
    match outcome {
        Ok(outcome) => Ok(Json(outcome).into_response()),
        Err(e) => Err(ApiError::core(&e)),
    }
}

#[derive(Deserialize)]
struct RenderScoreRequest {
    candidate_html: String,
    reference: Value,
    #[serde(default)]
    weights: Option<RewardWeights>,
    #[serde(default)]
    verbose: bool,
}

async fn render_score(State(state): State<Arc<AppState>>, body: Bytes) -> ApiResult {
    let Some(bridge_config) = state.config.bridge.clone() else {
        return Err(ApiError {
            status: StatusCode::NOT_IMPLEMENTED,
            body: ErrorBody::new("not_implemented", None, "no renderer bridge configured"),
        });
    };
    let req: RenderScoreRequest = decode(&body)?;
    let options = state.options(req.weights, req.verbose);
    let reference = snapshot_at(req.reference, "reference").map_err(ApiError::bad_request)?;
    let candidate = bridge::render(&req.candidate_html, &bridge_config).await.map_err(|e| ApiError {
        status: StatusCode::BAD_GATEWAY,
        body: ErrorBody::new("bridge", Some("candidate_html".into()), e.to_string()),
    })?;
    score_response(state, candidate, reference, options).await
}

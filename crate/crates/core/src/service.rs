//! HTTP front end over a [`SessionStore`].
//!
//! All numbers come from the recommendation module via [`crate::report`];
//! handlers only decode requests, call session operations and encode
//! results.

use std::collections::BTreeMap;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderMap, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post, put};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::aggregation::{parse_survey_csv, CellMap, SurveyResponse};
use crate::error::{Error, ErrorKind};
use crate::grid::{catalog_default_constructs, catalog_default_elements, Construct, Element, Rating};
use crate::recommendation::Distribution;
use crate::report::{parse_levels, parse_weights, recommendation_report, report_csv, ReportOptions};
use crate::session::{Phase, Session};
use crate::store::SessionStore;

pub const DEFAULT_PORT: u16 = 8080;
const DEFAULT_ACTOR: &str = "api";

/// Service configuration, also read from `REPGRID_PORT` / `REPGRID_DATA_DIR`
/// by the command-line front end.
#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub port: u16,
    pub data_dir: PathBuf,
}

pub struct ApiError(Error);

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        ApiError(e)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = match self.0.kind() {
            ErrorKind::Validation | ErrorKind::Document => StatusCode::UNPROCESSABLE_ENTITY,
            ErrorKind::Conflict => StatusCode::CONFLICT,
            ErrorKind::NotFound => StatusCode::NOT_FOUND,
            ErrorKind::Io => StatusCode::INTERNAL_SERVER_ERROR,
        };
        let body = json!({ "error": self.0.to_string(), "messages": self.0.messages() });
        (status, Json(body)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;
type Shared = Arc<SessionStore>;

pub fn router(store: Shared) -> Router {
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/surveys", post(submit_survey))
        .route("/sessions/{id}/agreement", get(get_agreement))
        .route("/sessions/{id}/consensus/{construct}/{element}", put(put_consensus))
        .route("/sessions/{id}/priorities", put(put_priorities))
        .route("/sessions/{id}/recommendation", get(get_recommendation))
        .route("/sessions/{id}/current-distribution", put(put_current_distribution))
        .route("/sessions/{id}/report.csv", get(get_report_csv))
        .route("/sessions/{id}/phase", post(post_phase))
        .with_state(store)
}

pub async fn serve(config: ServiceConfig) -> crate::error::Result<()> {
    let store = Arc::new(SessionStore::open(&config.data_dir)?);
    let addr = SocketAddr::from(([0, 0, 0, 0], config.port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(store)).await?;
    Ok(())
}

fn actor(headers: &HeaderMap) -> String {
    headers
        .get("x-actor")
        .and_then(|v| v.to_str().ok())
        .filter(|v| !v.trim().is_empty())
        .unwrap_or(DEFAULT_ACTOR)
        .to_owned()
}

fn decode<T: DeserializeOwned>(body: &[u8]) -> Result<T, Error> {
    serde_json::from_slice(body).map_err(|e| Error::from_json(&e))
}

/// Runs blocking store work off the async executor.
async fn blocking<T, F>(f: F) -> ApiResult<T>
where
    F: FnOnce() -> Result<T, Error> + Send + 'static,
    T: Send + 'static,
{
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| Error::Io(std::io::Error::other(e)))?
        .map_err(ApiError)
}

fn document(session: &Session) -> Value {
    serde_json::from_str(&session.to_json()).expect("session documents are valid JSON")
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct CreateRequest {
    id: Option<String>,
    elements: Option<Vec<Element>>,
    constructs: Option<Vec<Construct>>,
}

async fn create_session(State(store): State<Shared>, headers: HeaderMap, body: Bytes) -> ApiResult<Response> {
    let req: CreateRequest = if body.iter().all(u8::is_ascii_whitespace) {
        CreateRequest::default()
    } else {
        decode(&body)?
    };
    let actor = actor(&headers);
    let (id, session) = blocking(move || {
        let session = Session::create(
            req.elements.unwrap_or_else(catalog_default_elements),
            req.constructs.unwrap_or_else(catalog_default_constructs),
            &actor,
        )?;
        let id = store.create(req.id.as_deref(), &session)?;
        Ok((id, session))
    })
    .await?;
    let body = json!({ "id": id, "session": document(&session) });
    Ok((StatusCode::CREATED, Json(body)).into_response())
}

async fn get_session(State(store): State<Shared>, Path(id): Path<String>) -> ApiResult<Json<Value>> {
    let session = blocking(move || store.load(&id)).await?;
    Ok(Json(document(&session)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SurveyBody {
    respondent_id: String,
    grid_cells: CellMap,
    #[serde(default)]
    submitted_at: Option<chrono::DateTime<chrono::Utc>>,
}

#[derive(Deserialize)]
struct SurveyQuery {
    respondent: Option<String>,
}

async fn submit_survey(
    State(store): State<Shared>,
    Path(id): Path<String>,
    Query(query): Query<SurveyQuery>,
    headers: HeaderMap,
    body: Bytes,
) -> ApiResult<Response> {
    let is_csv = headers
        .get(header::CONTENT_TYPE)
        .and_then(|v| v.to_str().ok())
        .is_some_and(|ct| ct.starts_with("text/csv"));
    let actor = actor(&headers);
    let count = blocking(move || {
        store.update(&id, |session| {
            let response = if is_csv {
                let respondent = query
                    .respondent
                    .ok_or_else(|| Error::invalid("CSV surveys need a ?respondent= query parameter"))?;
                let text = std::str::from_utf8(&body).map_err(|_| Error::invalid("survey CSV is not UTF-8"))?;
                let cells = parse_survey_csv(text, session.elements(), session.constructs())?;
                SurveyResponse::new(respondent, cells)
            } else {
                let b: SurveyBody = decode(&body)?;
                let mut r = SurveyResponse::new(b.respondent_id, b.grid_cells);
                if let Some(at) = b.submitted_at {
                    r.submitted_at = at;
                }
                r
            };
            session.submit_survey(response, &actor)?;
            Ok(session.responses().len())
        })
    })
    .await?;
    Ok((StatusCode::CREATED, Json(json!({ "respondents": count }))).into_response())
}

async fn get_agreement(State(store): State<Shared>, Path(id): Path<String>) -> ApiResult<Json<Value>> {
    let matrix = blocking(move || store.load(&id)?.agreement()).await?;
    Ok(Json(serde_json::to_value(matrix).expect("serializable")))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConsensusBody {
    rating: i64,
    #[serde(default)]
    rationale: String,
}

async fn put_consensus(
    State(store): State<Shared>,
    Path((id, construct, element)): Path<(String, String, String)>,
    headers: HeaderMap,
    body: Bytes,
) -> ApiResult<Json<Value>> {
    let req: ConsensusBody = decode(&body)?;
    let rating = Rating::new(req.rating)?;
    let actor = actor(&headers);
    let cell = blocking(move || {
        store.update(&id, |s| {
            s.record_consensus(&construct, &element, rating, &req.rationale, &actor)?;
            Ok(s.consensus_cell(&construct, &element).cloned())
        })
    })
    .await?;
    Ok(Json(serde_json::to_value(cell).expect("serializable")))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PrioritiesBody {
    dollars: BTreeMap<String, i64>,
}

async fn put_priorities(
    State(store): State<Shared>,
    Path(id): Path<String>,
    headers: HeaderMap,
    body: Bytes,
) -> ApiResult<Json<Value>> {
    let req: PrioritiesBody = decode(&body)?;
    let actor = actor(&headers);
    let allocation = blocking(move || store.update(&id, |s| s.set_priorities(req.dollars, &actor).cloned())).await?;
    Ok(Json(serde_json::to_value(allocation).expect("serializable")))
}

#[derive(Deserialize)]
struct RecommendationQuery {
    priorities: Option<String>,
    exploratory_levels: Option<String>,
    bins: Option<usize>,
}

async fn get_recommendation(
    State(store): State<Shared>,
    Path(id): Path<String>,
    Query(query): Query<RecommendationQuery>,
) -> ApiResult<Json<Value>> {
    let mut options = ReportOptions::default();
    if let Some(p) = &query.priorities {
        options.priorities = Some(parse_weights(&[p])?);
    }
    if let Some(levels) = &query.exploratory_levels {
        options.exploratory_levels = parse_levels(levels);
    }
    if let Some(bins) = query.bins {
        options.n_bins = bins;
    }
    let report = blocking(move || recommendation_report(&store.load(&id)?, &options)).await?;
    Ok(Json(serde_json::to_value(report).expect("serializable")))
}

async fn put_current_distribution(
    State(store): State<Shared>,
    Path(id): Path<String>,
    headers: HeaderMap,
    body: Bytes,
) -> ApiResult<Json<Value>> {
    let dist: Distribution = decode(&body)?;
    let actor = actor(&headers);
    let stored = blocking(move || {
        store.update(&id, |s| {
            s.set_current_distribution(dist, &actor)?;
            Ok(s.current_distribution().cloned())
        })
    })
    .await?;
    Ok(Json(serde_json::to_value(stored).expect("serializable")))
}

async fn get_report_csv(State(store): State<Shared>, Path(id): Path<String>) -> ApiResult<Response> {
    let csv = blocking(move || report_csv(&store.load(&id)?)).await?;
    Ok(([(header::CONTENT_TYPE, "text/csv")], csv).into_response())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PhaseBody {
    phase: Phase,
}

async fn post_phase(
    State(store): State<Shared>,
    Path(id): Path<String>,
    headers: HeaderMap,
    body: Bytes,
) -> ApiResult<Json<Value>> {
    let req: PhaseBody = decode(&body)?;
    let actor = actor(&headers);
    let phase = blocking(move || {
        store.update(&id, |s| {
            s.advance_phase(req.phase, &actor)?;
            Ok(s.phase())
        })
    })
    .await?;
    Ok(Json(json!({ "phase": phase })))
}

//! Stateless HTTP facade over design evaluation and synthesis.
//!
//! Every handler is a pure function of its request body; the router holds
//! no state. Bodies are parsed by hand so that malformed JSON maps to 400
//! and a well-formed but rejected design maps to 422.

use std::net::SocketAddr;

use axum::body::Bytes;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Serialize;
use tower_http::cors::CorsLayer;

use slideocam_core::config::{DesignConfig, SynthesisRequestConfig};
use slideocam_core::report;

pub const API_PREFIX: &str = "/api/v1";

#[derive(Debug, Serialize)]
struct Malformed {
    error: &'static str,
    message: String,
}

fn json<T: Serialize>(status: StatusCode, body: &T) -> Response {
    let mut text = report::to_json_fixed(body, false);
    text.push('\n');
    (status, [(header::CONTENT_TYPE, "application/json")], text).into_response()
}

fn malformed(err: serde_json::Error) -> Response {
    json(
        StatusCode::BAD_REQUEST,
        &Malformed { error: "malformed_request", message: err.to_string() },
    )
}

async fn health() -> Json<serde_json::Value> {
    Json(serde_json::json!({ "status": "ok" }))
}

/// Evaluates one design. 200 with the full response, 422 with the
/// constraint ledger, 400 when the body is not a design document.
pub fn evaluate_body(body: &[u8]) -> Response {
    let config: DesignConfig = match serde_json::from_slice(body) {
        Ok(c) => c,
        Err(e) => return malformed(e),
    };
    match report::evaluate(&config) {
        Ok(resp) => json(StatusCode::OK, &resp),
        Err(rejection) => json(StatusCode::UNPROCESSABLE_ENTITY, &rejection),
    }
}

/// Runs synthesis. 200 with the outcome, 409 with the trace when no design
/// satisfies the limits, 422 for out-of-range request values, 400 when the
/// body is not a request document.
pub fn synthesize_body(body: &[u8]) -> Response {
    let request: SynthesisRequestConfig = match serde_json::from_slice(body) {
        Ok(r) => r,
        Err(e) => return malformed(e),
    };
    match report::synthesize(&request) {
        Ok(resp) => json(StatusCode::OK, &resp),
        Err(failure) if failure.error == "infeasible" => json(StatusCode::CONFLICT, &failure),
        Err(failure) => json(StatusCode::UNPROCESSABLE_ENTITY, &failure),
    }
}

async fn blocking(f: fn(&[u8]) -> Response, body: Bytes) -> Response {
    tokio::task::spawn_blocking(move || f(&body))
        .await
        .unwrap_or_else(|_| StatusCode::INTERNAL_SERVER_ERROR.into_response())
}

async fn evaluate(body: Bytes) -> Response {
    blocking(evaluate_body, body).await
}

async fn synthesize(body: Bytes) -> Response {
    blocking(synthesize_body, body).await
}

pub fn router() -> Router {
    let api = Router::new()
        .route("/health", get(health))
        .route("/evaluate", post(evaluate))
        .route("/synthesize", post(synthesize));
    Router::new().nest(API_PREFIX, api).layer(CorsLayer::permissive())
}

pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router()).await
}

/// Blocks on a fresh runtime serving the API on `0.0.0.0:port`.
pub fn run(port: u16) -> std::io::Result<()> {
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async {
        let addr = SocketAddr::from(([0, 0, 0, 0], port));
        eprintln!("listening on http://{addr}{API_PREFIX}");
        serve(addr).await
    })
}

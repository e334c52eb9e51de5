//! Browser bindings: the evaluation and synthesis entry points compiled to
//! WebAssembly for the static demo page in `www/`.
//!
//! Every export takes and returns JSON text. Results are wrapped as
//! `{"status": code, "body": ...}` with the same codes and bodies as the
//! HTTP API, so the page can treat both back ends alike.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use slideocam_core::config::{self, DesignConfig, SynthesisRequestConfig};
use slideocam_core::{export, geometry, report};

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    status: u16,
    body: &'a T,
}

#[derive(Serialize)]
struct Malformed {
    error: &'static str,
    message: String,
}

fn envelope<T: Serialize>(status: u16, body: &T) -> String {
    report::to_json_fixed(&Envelope { status, body }, false)
}

fn malformed(err: impl ToString) -> String {
    envelope(400, &Malformed { error: "malformed_request", message: err.to_string() })
}

/// Evaluates a design configuration: 200 with the full evaluation, 422
/// with the constraint ledger, 400 on malformed input.
#[wasm_bindgen]
pub fn evaluate(config_json: &str) -> String {
    let config: DesignConfig = match serde_json::from_str(config_json) {
        Ok(c) => c,
        Err(e) => return malformed(e),
    };
    match report::evaluate(&config) {
        Ok(response) => envelope(200, &response),
        Err(rejection) => envelope(422, &rejection),
    }
}

/// SVG drawing of the cam profile, pitch curve and rollers, or an empty
/// string when the design cannot be drawn.
#[wasm_bindgen]
pub fn profile_svg(config_json: &str) -> String {
    let Ok(config) = serde_json::from_str::<DesignConfig>(config_json) else {
        return String::new();
    };
    let params = config.to_params();
    geometry::generate_profile(&params, config.analysis.n_samples)
        .map(|p| export::profile_svg(&p))
        .unwrap_or_default()
}

/// Runs the design loop: 200 with the outcome, 409 with the trace when no
/// design satisfies the limits, 422 on out-of-range values, 400 on
/// malformed input.
#[wasm_bindgen]
pub fn synthesize(request_json: &str) -> String {
    let request: SynthesisRequestConfig = match serde_json::from_str(request_json) {
        Ok(r) => r,
        Err(e) => return malformed(e),
    };
    match report::synthesize(&request) {
        Ok(outcome) => envelope(200, &outcome),
        Err(failure) if failure.error == "infeasible" => envelope(409, &failure),
        Err(failure) => envelope(422, &failure),
    }
}

/// Named example designs as a JSON object keyed by preset name.
#[wasm_bindgen]
pub fn presets() -> String {
    let map: serde_json::Map<String, serde_json::Value> = config::presets()
        .into_iter()
        .map(|(name, c)| (name.to_string(), serde_json::to_value(c).expect("config serializes")))
        .collect();
    report::to_json_fixed(&map, false)
}

/// The default synthesis request.
#[wasm_bindgen]
pub fn default_request() -> String {
    report::to_json_fixed(&SynthesisRequestConfig::orthoglide(), false)
}

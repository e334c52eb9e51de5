use std::path::PathBuf;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use slideocam_core::config::{preset, DesignConfig, SynthesisRequestConfig};
use slideocam_service::router;

fn schema(name: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(name: &str, body: &Value) {
    let validator = schema(name);
    let errors: Vec<String> = validator.iter_errors(body).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{name}: {errors:#?}");
}

async fn call(method: &str, path: &str, body: Option<String>) -> (StatusCode, String) {
    let builder = Request::builder().method(method).uri(path).header("content-type", "application/json");
    let request = builder.body(body.map(Body::from).unwrap_or_else(Body::empty)).unwrap();
    let response = router().oneshot(request).await.unwrap();
    let status = response.status();
    let bytes = response.into_body().collect().await.unwrap().to_bytes();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}

async fn post(path: &str, body: &impl serde::Serialize) -> (StatusCode, Value) {
    let (status, text) = call("POST", path, Some(serde_json::to_string(body).unwrap())).await;
    (status, serde_json::from_str(&text).unwrap())
}

fn impossible_request() -> SynthesisRequestConfig {
    let mut r = SynthesisRequestConfig::orthoglide();
    r.mu_limit_deg = 1.0;
    r.max_cams = 1;
    r.max_pitch_steps = 1;
    r
}

#[tokio::test]
async fn health_reports_ok() {
    let (status, text) = call("GET", "/api/v1/health", None).await;
    assert_eq!(status, StatusCode::OK);
    let body: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(body, json!({"status": "ok"}));
    assert_valid("health.schema.json", &body);
}

#[tokio::test]
async fn evaluate_strategy_a() {
    let config = preset("orthoglide-a").unwrap();
    assert_valid("design_config.schema.json", &serde_json::to_value(config).unwrap());
    let (status, body) = post("/api/v1/evaluate", &config).await;
    assert_eq!(status, StatusCode::OK);
    assert_valid("evaluate_response.schema.json", &body);
    let mu_max = body["scalars"]["mu_max"].as_f64().unwrap();
    assert!((mu_max - 8.0).abs() <= 0.3, "mu_max {mu_max}");
    let sweep_max = |key: &str| {
        body[key].as_array().unwrap().iter().map(|p| p[1].as_f64().unwrap()).fold(f64::MIN, f64::max)
    };
    assert!((sweep_max("mu_sweep") - mu_max).abs() <= 1e-9);
    let p_peak = body["scalars"]["P_peak_MPa"].as_f64().unwrap();
    assert!((sweep_max("hertz_sweep") - p_peak).abs() <= 1e-9 * p_peak);
    assert_eq!(body["profile"].as_array().unwrap().len(), 721);
}

#[tokio::test]
async fn evaluate_rejects_eta_at_lower_bound() {
    let mut config = preset("orthoglide-a").unwrap();
    config.eta = 1.0 / std::f64::consts::TAU;
    let (status, body) = post("/api/v1/evaluate", &config).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_valid("rejection.schema.json", &body);
    assert_eq!(body["error"], "invalid_design");
    let eta = body["constraints"].as_array().unwrap().iter().find(|c| c["id"] == "EtaLowerBound").unwrap();
    assert_eq!(eta["satisfied"], false, "{body:#}");
    assert!(body["message"].as_str().unwrap().contains("EtaLowerBound"));
}

#[tokio::test]
async fn evaluate_rejects_bad_options_with_422() {
    let mut config = preset("orthoglide-a").unwrap();
    config.analysis.n_samples = 2;
    let (status, body) = post("/api/v1/evaluate", &config).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_valid("rejection.schema.json", &body);
    assert_eq!(body["error"], "invalid_input");
}

#[tokio::test]
async fn malformed_bodies_get_400() {
    for body in ["{not json", "{\"pitch_mm\": 20}", "[]"] {
        for path in ["/api/v1/evaluate", "/api/v1/synthesize"] {
            let (status, text) = call("POST", path, Some(body.to_string())).await;
            assert_eq!(status, StatusCode::BAD_REQUEST, "{path} {body}");
            assert_valid("malformed_request.schema.json", &serde_json::from_str(&text).unwrap());
        }
    }
    let mut doc = serde_json::to_value(preset("orthoglide-a").unwrap()).unwrap();
    doc["unknown_key"] = json!(1);
    let (status, _) = call("POST", "/api/v1/evaluate", Some(doc.to_string())).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn synthesize_orthoglide() {
    let request = SynthesisRequestConfig::orthoglide();
    assert_valid("synthesis_request.schema.json", &serde_json::to_value(request).unwrap());
    let (status, body) = post("/api/v1/synthesize", &request).await;
    assert_eq!(status, StatusCode::OK);
    assert_valid("synthesis_response.schema.json", &body);
    let first = &body["trace"][0];
    assert!((first["phi_bear_min_mm"].as_f64().unwrap() - 1.8).abs() <= 0.05);
    assert!((first["phi_cam_min_mm"].as_f64().unwrap() - 3.75).abs() <= 0.05);
    let design: DesignConfig = serde_json::from_value(body["design"].clone()).unwrap();
    let (status, _) = post("/api/v1/evaluate", &design).await;
    assert_eq!(status, StatusCode::OK);
}

#[tokio::test]
async fn synthesize_impossible_gets_409_with_trace() {
    let (status, body) = post("/api/v1/synthesize", &impossible_request()).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_valid("synthesis_failure.schema.json", &body);
    assert_eq!(body["error"], "infeasible");
    assert!(!body["trace"].as_array().unwrap().is_empty());
}

#[tokio::test]
async fn synthesize_invalid_values_get_422() {
    let mut request = SynthesisRequestConfig::orthoglide();
    request.torque_nm = -1.0;
    let (status, body) = post("/api/v1/synthesize", &request).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_valid("synthesis_failure.schema.json", &body);
}

#[tokio::test]
async fn identical_bodies_identical_responses() {
    let body = serde_json::to_string(&SynthesisRequestConfig::orthoglide()).unwrap();
    let a = call("POST", "/api/v1/synthesize", Some(body.clone())).await;
    let b = call("POST", "/api/v1/synthesize", Some(body)).await;
    assert_eq!(a, b);
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn concurrent_requests_match_serial() {
    let names = ["orthoglide-a", "orthoglide-b", "orthoglide-c", "orthoglide-d"];
    let bodies: Vec<String> = names.iter().map(|n| serde_json::to_string(&preset(n).unwrap()).unwrap()).collect();
    let mut serial = Vec::new();
    for b in &bodies {
        serial.push(call("POST", "/api/v1/evaluate", Some(b.clone())).await);
    }
    let handles: Vec<_> = bodies
        .iter()
        .cycle()
        .take(12)
        .map(|b| tokio::spawn(call("POST", "/api/v1/evaluate", Some(b.clone()))))
        .collect();
    for (i, h) in handles.into_iter().enumerate() {
        assert_eq!(h.await.unwrap(), serial[i % 4]);
    }
}

#[tokio::test]
async fn cors_preflight_allowed() {
    let request = Request::builder()
        .method("OPTIONS")
        .uri("/api/v1/evaluate")
        .header("origin", "http://localhost:5173")
        .header("access-control-request-method", "POST")
        .body(Body::empty())
        .unwrap();
    let response = router().oneshot(request).await.unwrap();
    assert!(response.status().is_success());
    assert!(response.headers().contains_key("access-control-allow-origin"));
}

#[tokio::test]
async fn numbers_are_fixed_with_nine_significant_digits() {
    let body = serde_json::to_string(&preset("orthoglide-c").unwrap()).unwrap();
    let (_, text) = call("POST", "/api/v1/evaluate", Some(body)).await;
    let bytes = text.as_bytes();
    for w in bytes.windows(2) {
        assert!(!(w[0].is_ascii_digit() && (w[1] == b'e' || w[1] == b'E')), "exponent in output");
    }
    let mut numbers = 0;
    for tok in text.split(|c: char| !(c.is_ascii_digit() || c == '.' || c == '-')) {
        if !tok.contains('.') {
            continue;
        }
        numbers += 1;
        let digits: String = tok.chars().filter(|c| c.is_ascii_digit()).collect();
        let significant = digits.trim_start_matches('0').len();
        assert!(significant == 9 || significant == 0, "{tok}");
    }
    assert!(numbers > 1000);
}

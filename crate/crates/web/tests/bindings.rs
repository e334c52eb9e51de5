use serde_json::Value;

use slideocam_web::{default_request, evaluate, presets, profile_svg, synthesize};

fn preset(name: &str) -> Value {
    let all: Value = serde_json::from_str(&presets()).unwrap();
    all[name].clone()
}

fn parse(text: &str) -> (u64, Value) {
    let v: Value = serde_json::from_str(text).unwrap();
    (v["status"].as_u64().unwrap(), v["body"].clone())
}

#[test]
fn presets_cover_strategies_and_cam_pair() {
    let all: Value = serde_json::from_str(&presets()).unwrap();
    for name in ["orthoglide-a", "orthoglide-b", "orthoglide-c", "orthoglide-d", "assembled-cam", "inserted-cam"] {
        assert!(all[name].is_object(), "{name}");
    }
}

#[test]
fn every_preset_evaluates() {
    let all: Value = serde_json::from_str(&presets()).unwrap();
    for (name, config) in all.as_object().unwrap() {
        let (status, body) = parse(&evaluate(&config.to_string()));
        assert_eq!(status, 200, "{name}: {body}");
        assert_eq!(body["closed"], true);
    }
}

#[test]
fn evaluate_matches_core_report() {
    let config = preset("orthoglide-a");
    let (status, body) = parse(&evaluate(&config.to_string()));
    assert_eq!(status, 200);
    let mu_max = body["scalars"]["mu_max"].as_f64().unwrap();
    assert!((mu_max - 8.0).abs() <= 0.3);
}

#[test]
fn evaluate_rejections() {
    let mut config = preset("orthoglide-a");
    config["eta"] = Value::from(1.0 / std::f64::consts::TAU);
    let (status, body) = parse(&evaluate(&config.to_string()));
    assert_eq!(status, 422);
    assert!(body["message"].as_str().unwrap().contains("EtaLowerBound"));
    let (status, _) = parse(&evaluate("{"));
    assert_eq!(status, 400);
}

#[test]
fn svg_drawing() {
    let svg = profile_svg(&preset("inserted-cam").to_string());
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<circle").count(), 3);
    assert!(profile_svg("not json").is_empty());
}

#[test]
fn synthesis_statuses() {
    let (status, body) = parse(&synthesize(&default_request()));
    assert_eq!(status, 200);
    assert!(!body["trace"].as_array().unwrap().is_empty());
    let mut request: Value = serde_json::from_str(&default_request()).unwrap();
    request["mu_limit_deg"] = Value::from(1.0);
    request["max_cams"] = Value::from(1);
    request["max_pitch_steps"] = Value::from(1);
    let (status, body) = parse(&synthesize(&request.to_string()));
    assert_eq!(status, 409);
    assert_eq!(body["error"], "infeasible");
}

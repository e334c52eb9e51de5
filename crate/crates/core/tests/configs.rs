use std::path::PathBuf;

use slideocam_core::config::{parse_design_config, parse_synthesis_request, presets, SynthesisRequestConfig};

fn configs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

#[test]
fn shipped_presets_match_builtin() {
    for (name, builtin) in presets() {
        let text = std::fs::read_to_string(configs_dir().join(format!("{name}.json"))).unwrap();
        assert_eq!(parse_design_config(&text).unwrap(), builtin, "{name}");
    }
}

#[test]
fn shipped_request_matches_builtin() {
    let text = std::fs::read_to_string(configs_dir().join("orthoglide-request.json")).unwrap();
    assert_eq!(parse_synthesis_request(&text).unwrap(), SynthesisRequestConfig::orthoglide());
}

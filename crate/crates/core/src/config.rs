//! JSON configuration documents in user-facing units (mm, degrees, MPa,
//! N·m) and their conversion to the SI types used by the math modules.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{DesignParameters, DEFAULT_SAMPLES};
use crate::strength::{Material, ReqVariant};
use crate::synthesis::{AnalysisOptions, SynthesisRequest};

const MM: f64 = 1e-3;
const MPA: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialConfig {
    pub young_modulus_mpa: f64,
    pub tau_cam_max_mpa: f64,
    pub tau_bear_max_mpa: f64,
    pub p_max_mpa: f64,
}

impl MaterialConfig {
    pub fn to_material(&self) -> Material {
        Material {
            young_modulus: self.young_modulus_mpa * MPA,
            tau_cam_max: self.tau_cam_max_mpa * MPA,
            tau_bear_max: self.tau_bear_max_mpa * MPA,
            p_max: self.p_max_mpa * MPA,
        }
    }

    pub fn from_material(m: &Material) -> Self {
        MaterialConfig {
            young_modulus_mpa: m.young_modulus / MPA,
            tau_cam_max_mpa: m.tau_cam_max / MPA,
            tau_bear_max_mpa: m.tau_bear_max / MPA,
            p_max_mpa: m.p_max / MPA,
        }
    }

    /// Steel with the 150 MPa shaft limit used for the Orthoglide sizing.
    pub fn orthoglide_steel() -> Self {
        MaterialConfig {
            young_modulus_mpa: 210_000.0,
            tau_cam_max_mpa: 150.0,
            tau_bear_max_mpa: 150.0,
            p_max_mpa: 800.0,
        }
    }

    /// High-strength steel used by the strategy presets.
    pub fn hardened_steel() -> Self {
        MaterialConfig {
            young_modulus_mpa: 210_000.0,
            tau_cam_max_mpa: 500.0,
            tau_bear_max_mpa: 500.0,
            p_max_mpa: 1000.0,
        }
    }
}

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}

fn default_mu_limit() -> f64 {
    30.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    #[serde(default = "default_samples")]
    pub n_samples: usize,
    #[serde(default)]
    pub r_eq_variant: ReqVariant,
    #[serde(default = "default_mu_limit")]
    pub mu_limit_deg: f64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            n_samples: DEFAULT_SAMPLES,
            r_eq_variant: ReqVariant::Paper,
            mu_limit_deg: 30.0,
        }
    }
}

/// One design as written by a user: the inputs of the design worksheet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignConfig {
    pub pitch_mm: f64,
    pub eta: f64,
    pub roller_radius_mm: f64,
    pub camshaft_radius_mm: f64,
    pub n_cams: u32,
    pub torque_nm: f64,
    pub width_mm: f64,
    pub material: MaterialConfig,
    #[serde(default)]
    pub analysis: AnalysisConfig,
}

impl DesignConfig {
    pub fn to_params(&self) -> DesignParameters {
        DesignParameters {
            pitch: self.pitch_mm * MM,
            eta: self.eta,
            roller_radius: self.roller_radius_mm * MM,
            camshaft_radius: self.camshaft_radius_mm * MM,
            n_cams: self.n_cams,
            torque: self.torque_nm,
            width: self.width_mm * MM,
            material: self.material.to_material(),
        }
    }

    pub fn options(&self) -> AnalysisOptions {
        AnalysisOptions {
            mu_limit: self.analysis.mu_limit_deg.to_radians(),
            r_eq_variant: self.analysis.r_eq_variant,
            n_samples: self.analysis.n_samples,
        }
    }

    pub fn from_params(params: &DesignParameters, options: &AnalysisOptions) -> Self {
        DesignConfig {
            pitch_mm: params.pitch / MM,
            eta: params.eta,
            roller_radius_mm: params.roller_radius / MM,
            camshaft_radius_mm: params.camshaft_radius / MM,
            n_cams: params.n_cams,
            torque_nm: params.torque,
            width_mm: params.width / MM,
            material: MaterialConfig::from_material(&params.material),
            analysis: AnalysisConfig {
                n_samples: options.n_samples,
                r_eq_variant: options.r_eq_variant,
                mu_limit_deg: options.mu_limit.to_degrees(),
            },
        }
    }

    /// A design laid out from its two shaft diameters: a₄ = φ_bear/2,
    /// e = a₄ + φ_cam/2 and a camshaft radius of φ_cam/2.
    pub fn from_diameters(pitch_mm: f64, phi_cam_mm: f64, phi_bear_mm: f64, material: MaterialConfig) -> Self {
        let a4 = phi_bear_mm / 2.0;
        let e = a4 + phi_cam_mm / 2.0;
        DesignConfig {
            pitch_mm,
            eta: e / pitch_mm,
            roller_radius_mm: a4,
            camshaft_radius_mm: phi_cam_mm / 2.0,
            n_cams: 1,
            torque_nm: 1.2,
            width_mm: 20.0,
            material,
            analysis: AnalysisConfig::default(),
        }
    }

    /// Checks the analysis options; the design itself is checked by the
    /// constraint ledger.
    pub fn validate_options(&self) -> Result<()> {
        if self.analysis.n_samples < 5 {
            return Err(Error::InvalidInput(format!(
                "analysis.n_samples must be at least 5, got {}",
                self.analysis.n_samples
            )));
        }
        if !(self.analysis.mu_limit_deg > 0.0 && self.analysis.mu_limit_deg <= 90.0) {
            return Err(Error::InvalidInput(format!(
                "analysis.mu_limit_deg must lie in (0, 90], got {}",
                self.analysis.mu_limit_deg
            )));
        }
        Ok(())
    }
}

/// Parses a design configuration. A profile document written by the JSON
/// exporter is accepted too; its embedded `config` is used.
pub fn parse_design_config(text: &str) -> Result<DesignConfig> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed JSON: {e}")))?;
    let value = match value {
        serde_json::Value::Object(mut map) if map.contains_key("config") && map.contains_key("samples") => {
            map.remove("config").unwrap_or_default()
        }
        other => other,
    };
    serde_json::from_value(value).map_err(|e| Error::InvalidInput(format!("invalid design config: {e}")))
}

fn default_initial_cams() -> u32 {
    1
}
fn default_max_cams() -> u32 {
    4
}
fn default_pitch_steps() -> u32 {
    5
}
fn default_eta_margin() -> f64 {
    0.02
}
fn default_size_step() -> f64 {
    0.01
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthesisRequestConfig {
    pub torque_nm: f64,
    pub base_pitch_mm: f64,
    pub material: MaterialConfig,
    #[serde(default = "default_mu_limit")]
    pub mu_limit_deg: f64,
    #[serde(default = "default_initial_cams")]
    pub initial_cams: u32,
    #[serde(default = "default_max_cams")]
    pub max_cams: u32,
    #[serde(default = "default_pitch_steps")]
    pub max_pitch_steps: u32,
    #[serde(default = "default_eta_margin")]
    pub eta_margin: f64,
    #[serde(default = "default_size_step")]
    pub size_step_mm: f64,
    #[serde(default)]
    pub r_eq_variant: ReqVariant,
    #[serde(default = "default_samples")]
    pub n_samples: usize,
}

impl SynthesisRequestConfig {
    pub fn orthoglide() -> Self {
        SynthesisRequestConfig {
            torque_nm: 1.2,
            base_pitch_mm: 20.0,
            material: MaterialConfig::orthoglide_steel(),
            mu_limit_deg: 30.0,
            initial_cams: 1,
            max_cams: 4,
            max_pitch_steps: 5,
            eta_margin: 0.02,
            size_step_mm: 0.01,
            r_eq_variant: ReqVariant::Paper,
            n_samples: DEFAULT_SAMPLES,
        }
    }

    pub fn to_request(&self) -> SynthesisRequest {
        SynthesisRequest {
            torque: self.torque_nm,
            base_pitch: self.base_pitch_mm * MM,
            material: self.material.to_material(),
            mu_limit: self.mu_limit_deg.to_radians(),
            initial_cams: self.initial_cams,
            max_cams: self.max_cams,
            max_pitch_steps: self.max_pitch_steps,
            eta_margin: self.eta_margin,
            size_step: self.size_step_mm * MM,
            r_eq_variant: self.r_eq_variant,
            n_samples: self.n_samples,
        }
    }
}

pub fn parse_synthesis_request(text: &str) -> Result<SynthesisRequestConfig> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("invalid synthesis request: {e}")))
}

/// Named example designs: the four Orthoglide strategies (a)–(d) and the
/// assembled/inserted cam pair at p = 40 mm.
pub fn presets() -> Vec<(&'static str, DesignConfig)> {
    let hard = MaterialConfig::hardened_steel();
    let mut fig10_assembled = DesignConfig::from_diameters(40.0, 16.0, 14.0, hard);
    let mut fig10_inserted = DesignConfig::from_diameters(40.0, 3.0, 14.0, hard);
    fig10_assembled.analysis.mu_limit_deg = 60.0;
    fig10_inserted.analysis.mu_limit_deg = 30.0;
    vec![
        ("orthoglide-a", DesignConfig::from_diameters(20.0, 2.5, 5.0, hard)),
        ("orthoglide-b", DesignConfig::from_diameters(20.0, 0.5, 8.0, hard)),
        ("orthoglide-c", DesignConfig::from_diameters(20.0, 2.0, 8.0, hard)),
        ("orthoglide-d", DesignConfig::from_diameters(20.0, 3.8, 6.7, hard)),
        ("assembled-cam", fig10_assembled),
        ("inserted-cam", fig10_inserted),
    ]
}

pub fn preset(name: &str) -> Option<DesignConfig> {
    presets().into_iter().find(|(n, _)| *n == name).map(|(_, c)| c)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CASE_A: &str = r#"{
        "pitch_mm": 20, "eta": 0.1875, "roller_radius_mm": 2.5, "camshaft_radius_mm": 1.25,
        "n_cams": 1, "torque_nm": 1.2, "width_mm": 20,
        "material": {"young_modulus_mpa": 210000, "tau_cam_max_mpa": 500,
                     "tau_bear_max_mpa": 500, "p_max_mpa": 1000}
    }"#;

    #[test]
    fn parses_with_defaults() {
        let c = parse_design_config(CASE_A).unwrap();
        assert_eq!(c.analysis, AnalysisConfig::default());
        let p = c.to_params();
        assert!((p.pitch - 0.02).abs() < 1e-15);
        assert!((p.material.young_modulus - 210e9).abs() < 1.0);
        assert_eq!(c, preset("orthoglide-a").unwrap());
    }

    #[test]
    fn rejects_unknown_keys() {
        let text = CASE_A.replace("\"n_cams\"", "\"colour\": 1, \"n_cams\"");
        let err = parse_design_config(&text).unwrap_err();
        assert!(err.to_string().contains("colour"), "{err}");
    }

    #[test]
    fn rejects_malformed_json() {
        assert!(parse_design_config("{").is_err());
    }

    #[test]
    fn accepts_profile_documents() {
        let doc = format!(r#"{{"config": {CASE_A}, "samples": [], "closed": true}}"#);
        assert_eq!(parse_design_config(&doc).unwrap(), parse_design_config(CASE_A).unwrap());
    }

    #[test]
    fn params_round_trip() {
        let c = parse_design_config(CASE_A).unwrap();
        let back = DesignConfig::from_params(&c.to_params(), &c.options());
        let (a, b) = (c.to_params(), back.to_params());
        assert!((a.pitch - b.pitch).abs() < 1e-15 && (a.width - b.width).abs() < 1e-15);
        assert_eq!(back.analysis.r_eq_variant, ReqVariant::Paper);
    }

    #[test]
    fn request_defaults() {
        let r = parse_synthesis_request(
            r#"{"torque_nm": 1.2, "base_pitch_mm": 20,
                "material": {"young_modulus_mpa": 210000, "tau_cam_max_mpa": 150,
                             "tau_bear_max_mpa": 150, "p_max_mpa": 800}}"#,
        )
        .unwrap();
        assert_eq!(r, SynthesisRequestConfig::orthoglide());
        assert!(parse_synthesis_request(r#"{"torque_nm": 1}"#).is_err());
    }

    #[test]
    fn option_validation() {
        let mut c = parse_design_config(CASE_A).unwrap();
        assert!(c.validate_options().is_ok());
        c.analysis.n_samples = 2;
        assert!(c.validate_options().is_err());
    }
}

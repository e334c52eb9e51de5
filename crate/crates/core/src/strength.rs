//! Shaft sizing from the shear/bending limits, equivalent contact radius,
//! Hertz line-contact pressure and cam-width sizing.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::DesignParameters;
use crate::kinetostatics::{self, ActiveInterval};
use crate::roots;

/// Coefficient of the line-contact Hertz formula for equal elastic constants.
pub const HERTZ_COEFFICIENT: f64 = 0.418;

const DIAMETER_TOL: f64 = 1e-12;
const DIAMETER_BRACKET: (f64, f64) = (1e-6, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Material {
    /// Young modulus shared by cam and roller (Pa).
    pub young_modulus: f64,
    /// Allowable stress in the camshaft (Pa).
    pub tau_cam_max: f64,
    /// Allowable stress in the bearing shaft (Pa).
    pub tau_bear_max: f64,
    /// Allowable Hertz pressure (Pa).
    pub p_max: f64,
}

impl Material {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("young_modulus", self.young_modulus),
            ("tau_cam_max", self.tau_cam_max),
            ("tau_bear_max", self.tau_bear_max),
            ("p_max", self.p_max),
        ];
        for (name, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidInput(format!("material.{name} must be positive, got {value}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShaftDiameters {
    pub phi_cam: f64,
    pub phi_bear: f64,
}

/// Convention for the equivalent contact radius in the Hertz formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReqVariant {
    /// 1/(2/φ_cam + 2/φ_bear), constant over the sweep.
    #[default]
    #[serde(alias = "paper_constant")]
    Paper,
    /// 1/(1/r_cam(ψ) + 1/a₄) with the local cam radius of curvature.
    #[serde(alias = "local_curvature")]
    Local,
}

impl ReqVariant {
    pub fn as_str(&self) -> &'static str {
        match self {
            ReqVariant::Paper => "paper",
            ReqVariant::Local => "local",
        }
    }
}

impl std::str::FromStr for ReqVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "paper" => Ok(ReqVariant::Paper),
            "local" => Ok(ReqVariant::Local),
            other => Err(format!("unknown r_eq variant `{other}` (expected paper or local)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HertzReport {
    pub variant: ReqVariant,
    /// (ψ, P_Hertz) over the active interval.
    pub sweep: Vec<(f64, f64)>,
    /// (ψ, r_eq) matching `sweep`.
    pub r_eq_sweep: Vec<(f64, f64)>,
    pub p_peak: f64,
    pub p_low: f64,
    /// The constant radius (paper) or the smallest local radius (local).
    pub r_eq_used: f64,
}

/// Smallest bearing-shaft diameter with 8M_t/(pφ²) ≤ τb_max.
pub fn min_bearing_shaft_diameter(torque: f64, pitch: f64, tau_bear_max: f64) -> f64 {
    (8.0 * torque / (pitch * tau_bear_max)).sqrt()
}

/// Combined shear and bending stress in a camshaft of diameter `phi`.
pub fn camshaft_stress(torque: f64, pitch: f64, phi: f64) -> f64 {
    8.0 * torque * (2.0 / (PI * phi.powi(3)) + 1.0 / (pitch * phi * phi))
}

/// Shear stress in a bearing shaft of diameter `phi`.
pub fn bearing_shaft_stress(torque: f64, pitch: f64, phi: f64) -> f64 {
    8.0 * torque / (pitch * phi * phi)
}

/// Smallest camshaft diameter with [`camshaft_stress`] ≤ τc_max.
///
/// The stress is strictly decreasing in the diameter, so the root in the
/// bracket [1 µm, 1 m] is unique.
pub fn min_camshaft_diameter(torque: f64, pitch: f64, tau_cam_max: f64) -> f64 {
    let excess = |phi: f64| camshaft_stress(torque, pitch, phi) - tau_cam_max;
    roots::bisect(excess, DIAMETER_BRACKET.0, DIAMETER_BRACKET.1, DIAMETER_TOL)
}

pub fn min_shaft_diameters(torque: f64, pitch: f64, material: &Material) -> ShaftDiameters {
    ShaftDiameters {
        phi_cam: min_camshaft_diameter(torque, pitch, material.tau_cam_max),
        phi_bear: min_bearing_shaft_diameter(torque, pitch, material.tau_bear_max),
    }
}

pub fn equivalent_radius(phi_cam: f64, phi_bear: f64) -> f64 {
    1.0 / (2.0 / phi_cam + 2.0 / phi_bear)
}

pub fn equivalent_radius_local(r_cam: f64, roller_radius: f64) -> f64 {
    1.0 / (1.0 / r_cam + 1.0 / roller_radius)
}

/// P_Hertz = 0.418·√(F·E/(a·r_eq)).
pub fn hertz_pressure(force: f64, young_modulus: f64, width: f64, r_eq: f64) -> f64 {
    HERTZ_COEFFICIENT * (force * young_modulus / (width * r_eq)).sqrt()
}

/// Smallest width keeping the Hertz pressure at or below `p_max`.
pub fn min_width(force_max: f64, young_modulus: f64, r_eq: f64, p_max: f64) -> f64 {
    HERTZ_COEFFICIENT.powi(2) * force_max * young_modulus / (r_eq * p_max.powi(2))
}

fn r_eq_at(params: &DesignParameters, psi: f64, variant: ReqVariant) -> Result<f64> {
    match variant {
        ReqVariant::Paper => Ok(equivalent_radius(params.phi_cam(), params.phi_bear())),
        ReqVariant::Local => {
            let r_cam = kinetostatics::cam_radius(params, psi)?;
            Ok(equivalent_radius_local(r_cam, params.roller_radius))
        }
    }
}

/// Evaluates force, equivalent radius and Hertz pressure on `n_samples`
/// uniform angles of the active interval.
pub fn hertz_sweep(
    params: &DesignParameters,
    interval: &ActiveInterval,
    variant: ReqVariant,
    n_samples: usize,
) -> Result<HertzReport> {
    if interval.touches_singularity() {
        return Err(Error::SingularOrientation { psi: PI });
    }
    let mut sweep = Vec::with_capacity(n_samples);
    let mut r_eq_sweep = Vec::with_capacity(n_samples);
    for psi in interval.grid(n_samples) {
        let force = kinetostatics::transmitted_force(params, psi)?;
        let r_eq = r_eq_at(params, psi, variant)?;
        let p = hertz_pressure(force, params.material.young_modulus, params.width, r_eq);
        sweep.push((psi, p));
        r_eq_sweep.push((psi, r_eq));
    }
    let p_peak = sweep.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
    let p_low = sweep.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
    let r_eq_used = r_eq_sweep.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
    Ok(HertzReport {
        variant,
        sweep,
        r_eq_sweep,
        p_peak,
        p_low,
        r_eq_used,
    })
}

/// Width at which the peak Hertz pressure over the interval equals P_max.
///
/// With a local radius the peak is the maximum of F(ψ)/r_eq(ψ), which need
/// not coincide with the force peak.
pub fn min_width_over_interval(
    params: &DesignParameters,
    interval: &ActiveInterval,
    variant: ReqVariant,
    n_samples: usize,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for psi in interval.grid(n_samples) {
        let force = kinetostatics::transmitted_force(params, psi)?;
        let r_eq = r_eq_at(params, psi, variant)?;
        worst = worst.max(force / r_eq);
    }
    Ok(min_width(worst, params.material.young_modulus, 1.0, params.material.p_max))
}

//! Constraint checking and the iterative sizing loop that turns a torque,
//! a base pitch and a material into a complete design.
//!
//! Search order: for each pitch p = k·p₀ (k = 1..=max_pitch_steps) the cam
//! count runs from `initial_cams` to `max_cams`. The first iteration whose
//! geometry is valid and whose maximum pressure angle is within the limit
//! is accepted, and the cam width is then sized from the Hertz limit.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{self, DesignParameters, ETA_MIN};
use crate::kinetostatics::{self, KinetostaticReport};
use crate::strength::{self, HertzReport, Material, ReqVariant, ShaftDiameters};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConstraintId {
    EtaLowerBound,
    RollerSpacing,
    ShaftClearance,
    PressureAngleLimit,
    CamShear,
    BearingShear,
    HertzLimit,
}

impl ConstraintId {
    pub const ALL: [ConstraintId; 7] = [
        ConstraintId::EtaLowerBound,
        ConstraintId::RollerSpacing,
        ConstraintId::ShaftClearance,
        ConstraintId::PressureAngleLimit,
        ConstraintId::CamShear,
        ConstraintId::BearingShear,
        ConstraintId::HertzLimit,
    ];

    /// Constraints without which the profile cannot be built at all.
    pub fn is_geometric(&self) -> bool {
        matches!(
            self,
            ConstraintId::EtaLowerBound | ConstraintId::RollerSpacing | ConstraintId::ShaftClearance
        )
    }

    pub fn description(&self) -> &'static str {
        match self {
            ConstraintId::EtaLowerBound => "offset ratio must satisfy η > 1/(2π)",
            ConstraintId::RollerSpacing => "consecutive rollers must not collide: 2a₄ < p",
            ConstraintId::ShaftClearance => "roller must clear the camshaft: a₄/p ≤ η − b/p",
            ConstraintId::PressureAngleLimit => "maximum pressure angle must not exceed the limit",
            ConstraintId::CamShear => "camshaft shear and bending stress within τc_max",
            ConstraintId::BearingShear => "bearing-shaft shear stress within τb_max",
            ConstraintId::HertzLimit => "peak Hertz pressure within P_max",
        }
    }
}

/// One ledger line. `margin` is dimensionless and positive when satisfied;
/// it is `None` when the quantity could not be evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstraintCheck {
    pub id: ConstraintId,
    pub satisfied: bool,
    pub margin: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintReport {
    pub checks: Vec<ConstraintCheck>,
}

impl ConstraintReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.satisfied)
    }

    pub fn geometry_passed(&self) -> bool {
        self.checks.iter().filter(|c| c.id.is_geometric()).all(|c| c.satisfied)
    }

    pub fn get(&self, id: ConstraintId) -> &ConstraintCheck {
        self.checks.iter().find(|c| c.id == id).expect("every id is checked")
    }

    pub fn violations(&self) -> impl Iterator<Item = &ConstraintCheck> {
        self.checks.iter().filter(|c| !c.satisfied)
    }
}

/// Options for evaluating a design beyond its own parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalysisOptions {
    pub mu_limit: f64,
    pub r_eq_variant: ReqVariant,
    pub n_samples: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            mu_limit: 30f64.to_radians(),
            r_eq_variant: ReqVariant::Paper,
            n_samples: geometry::DEFAULT_SAMPLES,
        }
    }
}

fn strict(id: ConstraintId, margin: f64) -> ConstraintCheck {
    ConstraintCheck { id, satisfied: margin > 0.0, margin: Some(margin) }
}

fn inclusive(id: ConstraintId, margin: f64) -> ConstraintCheck {
    ConstraintCheck { id, satisfied: margin >= 0.0, margin: Some(margin) }
}

/// Dimensionless margins closer to zero than this are rounding residue of a
/// layout that touches the bound, and are reported as exactly zero.
const MARGIN_SNAP: f64 = 1e-12;

fn snap(margin: f64) -> f64 {
    if margin.abs() < MARGIN_SNAP {
        0.0
    } else {
        margin
    }
}

fn unevaluated(id: ConstraintId) -> ConstraintCheck {
    ConstraintCheck { id, satisfied: false, margin: None }
}

/// Maximum pressure angle over the active interval, π/2 when the interval
/// reaches the singular orientation.
pub fn governing_pressure_angle(params: &DesignParameters) -> Result<f64> {
    let delta = geometry::extended_angle(params)?;
    let interval = kinetostatics::active_interval(params, delta);
    if interval.touches_singularity() {
        return Ok(FRAC_PI_2);
    }
    kinetostatics::pressure_angle_extremes(params, &interval).map(|(max, _)| max)
}

/// Evaluates every constraint with a signed margin. Never fails.
pub fn check_constraints(params: &DesignParameters, options: &AnalysisOptions) -> ConstraintReport {
    let p = params.pitch;
    let a4 = params.roller_radius;
    let mut checks = vec![
        strict(ConstraintId::EtaLowerBound, params.eta - ETA_MIN),
        strict(ConstraintId::RollerSpacing, (p - 2.0 * a4) / p),
        inclusive(ConstraintId::ShaftClearance, snap(params.eta - params.camshaft_radius / p - a4 / p)),
    ];
    let geometry_ok = checks.iter().all(|c| c.satisfied);

    let mu = if geometry_ok { governing_pressure_angle(params).ok() } else { None };
    checks.push(match mu {
        Some(mu) => inclusive(ConstraintId::PressureAngleLimit, (options.mu_limit - mu) / options.mu_limit),
        None => unevaluated(ConstraintId::PressureAngleLimit),
    });

    let m = &params.material;
    let phi_cam = params.phi_cam();
    checks.push(if phi_cam > 0.0 {
        let stress = strength::camshaft_stress(params.torque, p, phi_cam);
        inclusive(ConstraintId::CamShear, (m.tau_cam_max - stress) / m.tau_cam_max)
    } else {
        unevaluated(ConstraintId::CamShear)
    });
    let stress = strength::bearing_shaft_stress(params.torque, p, params.phi_bear());
    checks.push(inclusive(ConstraintId::BearingShear, (m.tau_bear_max - stress) / m.tau_bear_max));

    let hertz = match mu {
        Some(mu) if mu < FRAC_PI_2 && phi_cam > 0.0 => geometry::extended_angle(params).ok().and_then(|d| {
            let interval = kinetostatics::active_interval(params, d);
            strength::hertz_sweep(params, &interval, options.r_eq_variant, options.n_samples).ok()
        }),
        _ => None,
    };
    checks.push(match hertz {
        Some(h) => inclusive(ConstraintId::HertzLimit, (m.p_max - h.p_peak) / m.p_max),
        None => unevaluated(ConstraintId::HertzLimit),
    });

    ConstraintReport { checks }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthesisRequest {
    pub torque: f64,
    /// Base pitch p₀ and pitch increment.
    pub base_pitch: f64,
    pub material: Material,
    pub mu_limit: f64,
    pub initial_cams: u32,
    pub max_cams: u32,
    /// Number of pitches tried: p₀, 2p₀, …
    pub max_pitch_steps: u32,
    /// Required clearance of η above 1/(2π) when enlarging the roller.
    pub eta_margin: f64,
    /// Sized diameters and width are rounded up to this step.
    pub size_step: f64,
    pub r_eq_variant: ReqVariant,
    pub n_samples: usize,
}

impl SynthesisRequest {
    pub fn new(torque: f64, base_pitch: f64, material: Material) -> Self {
        SynthesisRequest {
            torque,
            base_pitch,
            material,
            mu_limit: 30f64.to_radians(),
            initial_cams: 1,
            max_cams: 4,
            max_pitch_steps: 5,
            eta_margin: 0.02,
            size_step: 1e-5,
            r_eq_variant: ReqVariant::Paper,
            n_samples: geometry::DEFAULT_SAMPLES,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("torque", self.torque),
            ("base_pitch", self.base_pitch),
            ("eta_margin", self.eta_margin),
            ("size_step", self.size_step),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidInput(format!("{name} must be positive, got {value}")));
            }
        }
        if !(self.mu_limit > 0.0 && self.mu_limit <= FRAC_PI_2) {
            return Err(Error::InvalidInput(format!(
                "mu_limit must lie in (0°, 90°], got {}°",
                self.mu_limit.to_degrees()
            )));
        }
        if self.initial_cams == 0 || self.max_cams < self.initial_cams {
            return Err(Error::InvalidInput(format!(
                "cam counts must satisfy 1 ≤ initial_cams ≤ max_cams, got {}..{}",
                self.initial_cams, self.max_cams
            )));
        }
        if self.max_pitch_steps == 0 {
            return Err(Error::InvalidInput("max_pitch_steps must be at least 1".into()));
        }
        if self.n_samples < 3 {
            return Err(Error::InvalidInput("n_samples must be at least 3".into()));
        }
        self.material.validate()
    }

    fn analysis_options(&self) -> AnalysisOptions {
        AnalysisOptions {
            mu_limit: self.mu_limit,
            r_eq_variant: self.r_eq_variant,
            n_samples: self.n_samples,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Accepted,
    PressureAngleTooHigh,
    /// ψ = π lies in the active interval.
    SingularInterval,
    InvalidGeometry,
    /// Profile evaluation failed (undercut or unclosable).
    ProfileFailure,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub pitch: f64,
    pub n_cams: u32,
    /// Follower lines; always 1, carried for completeness.
    pub n_lines: u32,
    pub phi_bear_min: f64,
    pub phi_cam_min: f64,
    pub roller_radius: f64,
    pub eta: f64,
    /// `None` when the profile could not be evaluated.
    pub mu_max: Option<f64>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisOutcome {
    pub design: DesignParameters,
    pub diameters: ShaftDiameters,
    pub kinetostatics: KinetostaticReport,
    pub hertz: HertzReport,
    pub constraints: ConstraintReport,
    pub trace: Vec<IterationRecord>,
}

/// Rounds `x` up to the next multiple of `step`, strictly above `x`
/// whenever `x` already sits on a multiple.
fn round_up(x: f64, step: f64) -> f64 {
    let k = (x / step).floor() + 1.0;
    k * step
}

fn candidate(request: &SynthesisRequest, pitch: f64, n_cams: u32) -> (DesignParameters, ShaftDiameters) {
    let step = request.size_step;
    let minima = strength::min_shaft_diameters(request.torque, pitch, &request.material);
    let phi_cam = round_up(minima.phi_cam, step);
    let eta_floor = ETA_MIN + request.eta_margin;
    let roller_radius = round_up(minima.phi_bear, step)
        .max(round_up(2.0 * (eta_floor * pitch - phi_cam / 2.0), step))
        / 2.0;
    // one size step of running clearance between roller and camshaft
    let offset = roller_radius + phi_cam / 2.0 + step;
    let design = DesignParameters {
        pitch,
        eta: offset / pitch,
        roller_radius,
        camshaft_radius: phi_cam / 2.0,
        n_cams,
        torque: request.torque,
        width: step,
        material: request.material,
    };
    (design, minima)
}

/// Runs the sizing loop. Fails with [`Error::Infeasible`] carrying the full
/// trace when every (pitch, cam count) pair is rejected.
pub fn synthesize(request: &SynthesisRequest) -> Result<SynthesisOutcome> {
    request.validate()?;
    let options = request.analysis_options();
    let mut trace = Vec::new();

    for step in 1..=request.max_pitch_steps {
        let pitch = request.base_pitch * f64::from(step);
        for n_cams in request.initial_cams..=request.max_cams {
            let (mut design, minima) = candidate(request, pitch, n_cams);
            let mut record = IterationRecord {
                pitch,
                n_cams,
                n_lines: 1,
                phi_bear_min: minima.phi_bear,
                phi_cam_min: minima.phi_cam,
                roller_radius: design.roller_radius,
                eta: design.eta,
                mu_max: None,
                verdict: Verdict::InvalidGeometry,
            };
            let gate = check_constraints(&design, &options);
            if !gate.geometry_passed() {
                trace.push(record);
                continue;
            }
            let mu = match governing_pressure_angle(&design) {
                Ok(mu) => mu,
                Err(_) => {
                    record.verdict = Verdict::ProfileFailure;
                    trace.push(record);
                    continue;
                }
            };
            record.mu_max = Some(mu);
            record.verdict = if mu >= FRAC_PI_2 {
                Verdict::SingularInterval
            } else if mu > request.mu_limit {
                Verdict::PressureAngleTooHigh
            } else {
                Verdict::Accepted
            };
            if record.verdict != Verdict::Accepted {
                trace.push(record);
                continue;
            }

            let sized = kinetostatics::analyze(&design, request.n_samples).and_then(|kin| {
                let width = strength::min_width_over_interval(
                    &design,
                    &kin.interval,
                    request.r_eq_variant,
                    request.n_samples,
                )?;
                Ok((kin, width))
            });
            let (kin, width) = match sized {
                Ok(v) => v,
                Err(_) => {
                    record.verdict = Verdict::ProfileFailure;
                    trace.push(record);
                    continue;
                }
            };
            design.width = round_up(width, request.size_step);
            trace.push(record);
            let hertz = strength::hertz_sweep(&design, &kin.interval, request.r_eq_variant, request.n_samples)?;
            let constraints = check_constraints(&design, &options);
            return Ok(SynthesisOutcome {
                diameters: ShaftDiameters {
                    phi_cam: design.phi_cam(),
                    phi_bear: design.phi_bear(),
                },
                design,
                kinetostatics: kin,
                hertz,
                constraints,
                trace,
            });
        }
    }
    Err(Error::Infeasible { trace })
}

/// Distance |ψ − π| of the interval endpoint nearest π; used by
/// callers reasoning about how the cam count moves the governing endpoint.
pub fn governing_distance(params: &DesignParameters, delta_ext: f64) -> f64 {
    let iv = kinetostatics::active_interval(params, delta_ext);
    (iv.psi_start - PI).abs().min((iv.psi_end - PI).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::fixtures::*;

    const MM: f64 = 1e-3;

    fn orthoglide() -> SynthesisRequest {
        let material = Material {
            young_modulus: 210e9,
            tau_cam_max: 150e6,
            tau_bear_max: 150e6,
            p_max: 800e6,
        };
        SynthesisRequest::new(1.2, 0.02, material)
    }

    #[test]
    fn eta_bound_boundary() {
        let mut p = case_a();
        p.eta = ETA_MIN;
        let r = check_constraints(&p, &AnalysisOptions::default());
        let c = r.get(ConstraintId::EtaLowerBound);
        assert!(!c.satisfied);
        assert_eq!(c.margin, Some(0.0));
        assert!(r.get(ConstraintId::PressureAngleLimit).margin.is_none());
        assert!(!r.passed());
    }

    #[test]
    fn touching_clearance_is_satisfied_for_every_strategy() {
        for (name, c) in crate::config::presets() {
            let r = check_constraints(&c.to_params(), &c.options());
            let clearance = r.get(ConstraintId::ShaftClearance);
            assert!(clearance.satisfied, "{name}");
            assert_eq!(clearance.margin, Some(0.0), "{name}");
        }
    }

    #[test]
    fn roller_spacing_boundary() {
        let mut p = with(20.0, 0.9, 10.0);
        p.camshaft_radius = 1e-3;
        let r = check_constraints(&p, &AnalysisOptions::default());
        let c = r.get(ConstraintId::RollerSpacing);
        assert!(!c.satisfied);
        assert_eq!(c.margin, Some(0.0));
    }

    #[test]
    fn shaft_clearance_boundary_is_satisfied() {
        let mut p = case_a();
        p.camshaft_radius = p.offset() - p.roller_radius;
        let r = check_constraints(&p, &AnalysisOptions::default());
        let c = r.get(ConstraintId::ShaftClearance);
        assert!(c.satisfied);
        assert!(c.margin.unwrap().abs() < 1e-15);
        p.camshaft_radius += 1e-6;
        assert!(!check_constraints(&p, &AnalysisOptions::default()).get(ConstraintId::ShaftClearance).satisfied);
    }

    #[test]
    fn case_a_passes_everything() {
        let r = check_constraints(&case_a(), &AnalysisOptions::default());
        assert!(r.passed(), "{r:?}");
        assert!(r.checks.iter().all(|c| c.margin.unwrap() >= 0.0));
    }

    #[test]
    fn case_a_fails_with_weak_camshaft() {
        let mut p = case_a();
        p.material.tau_cam_max = 150e6;
        let r = check_constraints(&p, &AnalysisOptions::default());
        assert!(!r.get(ConstraintId::CamShear).satisfied);
        assert!(r.geometry_passed());
    }

    #[test]
    fn singular_interval_maps_to_right_angle() {
        let mut p = case_a();
        p.n_cams = 2;
        assert_eq!(governing_pressure_angle(&p).unwrap(), FRAC_PI_2);
        let r = check_constraints(&p, &AnalysisOptions::default());
        assert!(!r.get(ConstraintId::PressureAngleLimit).satisfied);
        assert!(r.get(ConstraintId::HertzLimit).margin.is_none());
    }

    #[test]
    fn orthoglide_first_iteration_diameters() {
        let out = synthesize(&orthoglide()).unwrap();
        let first = out.trace[0];
        assert!((first.phi_bear_min / MM - 1.8).abs() < 0.05);
        assert!((first.phi_cam_min / MM - 3.75).abs() < 0.05);
        assert!(out.constraints.passed());
        assert!(out.constraints.checks.iter().all(|c| c.margin.unwrap() > 0.0));
        assert_eq!(out.trace.last().unwrap().verdict, Verdict::Accepted);
    }

    #[test]
    fn right_angle_limit_accepts_first_iteration() {
        let mut req = orthoglide();
        req.mu_limit = FRAC_PI_2;
        let out = synthesize(&req).unwrap();
        assert_eq!(out.trace.len(), 1);
    }

    #[test]
    fn tiny_limit_is_infeasible() {
        let mut req = orthoglide();
        req.mu_limit = 0.1f64.to_radians();
        req.max_cams = 2;
        req.max_pitch_steps = 2;
        match synthesize(&req) {
            Err(Error::Infeasible { trace }) => {
                assert_eq!(trace.len(), 4);
                assert!(trace.iter().all(|t| t.verdict != Verdict::Accepted));
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn request_validation() {
        let mut req = orthoglide();
        req.max_cams = 0;
        assert!(matches!(synthesize(&req), Err(Error::InvalidInput(_))));
        let mut req = orthoglide();
        req.mu_limit = 0.0;
        assert!(req.validate().is_err());
    }

    #[test]
    fn rounding_is_strict() {
        assert!((round_up(1.0, 0.5) - 1.5).abs() < 1e-15);
        assert!((round_up(1.2, 0.5) - 1.5).abs() < 1e-15);
    }
}

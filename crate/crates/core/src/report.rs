//! Evaluation and synthesis results in user-facing units, shared by the
//! CLI, the HTTP service and the browser demo.
//!
//! Every number is rounded to nine significant digits so that serialized
//! output is byte-stable.

use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::{CompactFormatter, Formatter, PrettyFormatter, Serializer};

use crate::config::{DesignConfig, SynthesisRequestConfig};
use crate::error::Error;
use crate::geometry::{self, DesignParameters};
use crate::kinetostatics::{self, KinetostaticReport};
use crate::strength::{self, HertzReport, ReqVariant};
use crate::synthesis::{self, ConstraintId, ConstraintReport, IterationRecord, SynthesisOutcome, Verdict};

const MM: f64 = 1e-3;
const MPA: f64 = 1e6;

/// Rounds to nine significant digits; normalizes −0 to 0.
pub fn sig9(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.8e}").parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Fixed-point decimal with nine significant digits.
pub fn fmt_sig9(x: f64) -> String {
    let r = sig9(x);
    if r == 0.0 {
        return "0.00000000".to_string();
    }
    let exp = r.abs().log10().floor() as i32;
    let decimals = (8 - exp).max(0) as usize;
    format!("{r:.decimals$}")
}

/// Wraps a JSON formatter so that every float is written by [`fmt_sig9`].
struct FixedFormatter<F>(F);

macro_rules! forward {
    ($($name:ident),*) => {$(
        fn $name<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
            self.0.$name(w)
        }
    )*};
}

macro_rules! forward_first {
    ($($name:ident),*) => {$(
        fn $name<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
            self.0.$name(w, first)
        }
    )*};
}

impl<F: Formatter> Formatter for FixedFormatter<F> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(fmt_sig9(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }

    forward!(begin_array, end_array, end_array_value, begin_object, end_object, end_object_key, begin_object_value, end_object_value);
    forward_first!(begin_array_value, begin_object_key);
}

/// Serializes with every float in fixed notation, nine significant digits.
pub fn to_json_fixed<T: Serialize>(value: &T, pretty: bool) -> String {
    let mut buf = Vec::new();
    let result = if pretty {
        let mut ser = Serializer::with_formatter(&mut buf, FixedFormatter(PrettyFormatter::new()));
        value.serialize(&mut ser)
    } else {
        let mut ser = Serializer::with_formatter(&mut buf, FixedFormatter(CompactFormatter));
        value.serialize(&mut ser)
    };
    result.expect("report types serialize");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

fn deg(rad: f64) -> f64 {
    sig9(rad.to_degrees())
}

fn mm(m: f64) -> f64 {
    sig9(m / MM)
}

fn mpa(pa: f64) -> f64 {
    sig9(pa / MPA)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintEntry {
    pub id: ConstraintId,
    pub satisfied: bool,
    pub margin: Option<f64>,
    pub description: String,
}

pub fn constraint_entries(report: &ConstraintReport) -> Vec<ConstraintEntry> {
    report
        .checks
        .iter()
        .map(|c| ConstraintEntry {
            id: c.id,
            satisfied: c.satisfied,
            margin: c.margin.map(sig9),
            description: c.id.description().to_string(),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalDeg {
    pub start_deg: f64,
    pub end_deg: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct HertzSummary {
    pub P_peak_MPa: f64,
    pub P_low_MPa: f64,
    pub r_eq_mm: f64,
}

impl From<&HertzReport> for HertzSummary {
    fn from(h: &HertzReport) -> Self {
        HertzSummary {
            P_peak_MPa: mpa(h.p_peak),
            P_low_MPa: mpa(h.p_low),
            r_eq_mm: mm(h.r_eq_used),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HertzVariants {
    pub paper: Option<HertzSummary>,
    pub local: Option<HertzSummary>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct Scalars {
    pub mu_max: f64,
    pub mu_min: f64,
    pub delta_mu: f64,
    pub F_max_N: f64,
    pub r_cam_min_mm: f64,
    pub r_eq_mm: f64,
    pub P_peak_MPa: f64,
    pub P_low_MPa: f64,
    pub phi_cam_mm: f64,
    pub phi_bear_mm: f64,
    pub e_mm: f64,
    pub eta: f64,
}

/// Result of evaluating one design.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluateResponse {
    pub profile: Vec<[f64; 2]>,
    pub pitch: Vec<[f64; 2]>,
    pub closed: bool,
    pub delta_ext: f64,
    pub interval: IntervalDeg,
    pub mu_sweep: Vec<[f64; 2]>,
    pub hertz_sweep: Vec<[f64; 2]>,
    pub r_eq_variant: ReqVariant,
    pub hertz_variants: HertzVariants,
    pub constraints: Vec<ConstraintEntry>,
    pub passed: bool,
    pub scalars: Scalars,
}

/// Why a design could not be evaluated: maps to HTTP 422 and CLI exit 2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rejection {
    pub error: String,
    pub message: String,
    pub constraints: Option<Vec<ConstraintEntry>>,
}

impl Rejection {
    fn input(err: Error) -> Self {
        Rejection {
            error: "invalid_input".into(),
            message: err.to_string(),
            constraints: None,
        }
    }
}

/// The SI-level results behind an [`EvaluateResponse`].
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub params: DesignParameters,
    pub profile: geometry::CamProfile,
    pub kinetostatics: KinetostaticReport,
    pub hertz: HertzReport,
    pub hertz_paper: Option<HertzReport>,
    pub hertz_local: Option<HertzReport>,
    pub constraints: ConstraintReport,
}

/// Runs the full analysis of one configured design.
pub fn evaluate_design(config: &DesignConfig) -> Result<Evaluation, Rejection> {
    config.validate_options().map_err(Rejection::input)?;
    let params = config.to_params();
    params.validate_inputs().map_err(Rejection::input)?;
    let options = config.options();
    let constraints = synthesis::check_constraints(&params, &options);
    let reject = |error: &str, message: String| Rejection {
        error: error.into(),
        message,
        constraints: Some(constraint_entries(&constraints)),
    };
    if !constraints.geometry_passed() {
        let ids: Vec<String> = constraints
            .violations()
            .filter(|c| c.id.is_geometric())
            .map(|c| format!("{:?} ({})", c.id, c.id.description()))
            .collect();
        return Err(reject("invalid_design", format!("design violates {}", ids.join(", "))));
    }
    let n = options.n_samples;
    let analysis = geometry::generate_profile(&params, n)
        .and_then(|profile| Ok((profile, kinetostatics::analyze(&params, n)?)));
    let (profile, kin) = analysis.map_err(|e| reject("evaluation_failed", e.to_string()))?;
    let paper = strength::hertz_sweep(&params, &kin.interval, ReqVariant::Paper, n).ok();
    let local = strength::hertz_sweep(&params, &kin.interval, ReqVariant::Local, n).ok();
    let hertz = match options.r_eq_variant {
        ReqVariant::Paper => paper.clone(),
        ReqVariant::Local => local.clone(),
    }
    .ok_or_else(|| reject("evaluation_failed", "Hertz sweep failed on the active interval".into()))?;
    Ok(Evaluation {
        params,
        profile,
        kinetostatics: kin,
        hertz,
        hertz_paper: paper,
        hertz_local: local,
        constraints,
    })
}

impl Evaluation {
    pub fn to_response(&self) -> EvaluateResponse {
        let kin = &self.kinetostatics;
        let pitch = geometry::pitch_curve(&self.profile);
        let point = |p: &geometry::ProfilePoint| [mm(p.u), mm(p.v)];
        let angle_pairs =
            |v: &[(f64, f64)], f: &dyn Fn(f64) -> f64| v.iter().map(|&(psi, y)| [deg(psi), f(y)]).collect();
        EvaluateResponse {
            profile: self.profile.samples.iter().map(point).collect(),
            pitch: pitch.iter().map(point).collect(),
            closed: self.profile.closed,
            delta_ext: deg(self.profile.delta_ext),
            interval: IntervalDeg {
                start_deg: deg(kin.interval.psi_start),
                end_deg: deg(kin.interval.psi_end),
            },
            mu_sweep: angle_pairs(&kin.mu_sweep, &deg),
            hertz_sweep: angle_pairs(&self.hertz.sweep, &mpa),
            r_eq_variant: self.hertz.variant,
            hertz_variants: HertzVariants {
                paper: self.hertz_paper.as_ref().map(HertzSummary::from),
                local: self.hertz_local.as_ref().map(HertzSummary::from),
            },
            constraints: constraint_entries(&self.constraints),
            passed: self.constraints.passed(),
            scalars: Scalars {
                mu_max: deg(kin.mu_max),
                mu_min: deg(kin.mu_min),
                delta_mu: deg(kin.delta_mu),
                F_max_N: sig9(kin.force_max),
                r_cam_min_mm: mm(kin.r_cam_min),
                r_eq_mm: mm(self.hertz.r_eq_used),
                P_peak_MPa: mpa(self.hertz.p_peak),
                P_low_MPa: mpa(self.hertz.p_low),
                phi_cam_mm: mm(self.params.phi_cam()),
                phi_bear_mm: mm(self.params.phi_bear()),
                e_mm: mm(self.params.offset()),
                eta: sig9(self.params.eta),
            },
        }
    }
}

pub fn evaluate(config: &DesignConfig) -> Result<EvaluateResponse, Rejection> {
    evaluate_design(config).map(|e| e.to_response())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationEntry {
    pub pitch_mm: f64,
    pub n_cams: u32,
    pub n_lines: u32,
    pub phi_bear_min_mm: f64,
    pub phi_cam_min_mm: f64,
    pub roller_radius_mm: f64,
    pub eta: f64,
    pub mu_max_deg: Option<f64>,
    pub verdict: Verdict,
}

impl From<&IterationRecord> for IterationEntry {
    fn from(r: &IterationRecord) -> Self {
        IterationEntry {
            pitch_mm: mm(r.pitch),
            n_cams: r.n_cams,
            n_lines: r.n_lines,
            phi_bear_min_mm: mm(r.phi_bear_min),
            phi_cam_min_mm: mm(r.phi_cam_min),
            roller_radius_mm: mm(r.roller_radius),
            eta: sig9(r.eta),
            mu_max_deg: r.mu_max.map(deg),
            verdict: r.verdict,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiametersMm {
    pub phi_cam_mm: f64,
    pub phi_bear_mm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct KinetostaticSummary {
    pub delta_ext_deg: f64,
    pub interval: IntervalDeg,
    pub mu_max_deg: f64,
    pub mu_min_deg: f64,
    pub delta_mu_deg: f64,
    pub F_max_N: f64,
    pub r_cam_min_mm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthesisResponse {
    pub design: DesignConfig,
    pub width_mm: f64,
    pub diameters: DiametersMm,
    pub kinetostatics: KinetostaticSummary,
    pub hertz: HertzSummary,
    pub r_eq_variant: ReqVariant,
    pub constraints: Vec<ConstraintEntry>,
    pub trace: Vec<IterationEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthesisFailure {
    pub error: String,
    pub message: String,
    pub trace: Vec<IterationEntry>,
}

fn round_config(mut c: DesignConfig) -> DesignConfig {
    c.pitch_mm = sig9(c.pitch_mm);
    c.eta = sig9(c.eta);
    c.roller_radius_mm = sig9(c.roller_radius_mm);
    c.camshaft_radius_mm = sig9(c.camshaft_radius_mm);
    c.width_mm = sig9(c.width_mm);
    c.analysis.mu_limit_deg = sig9(c.analysis.mu_limit_deg);
    c
}

impl SynthesisResponse {
    pub fn new(outcome: &SynthesisOutcome, request: &SynthesisRequestConfig) -> Self {
        let kin = &outcome.kinetostatics;
        let req = request.to_request();
        let options = crate::synthesis::AnalysisOptions {
            mu_limit: req.mu_limit,
            r_eq_variant: req.r_eq_variant,
            n_samples: req.n_samples,
        };
        let mut design = round_config(DesignConfig::from_params(&outcome.design, &options));
        design.material = request.material;
        SynthesisResponse {
            design,
            width_mm: mm(outcome.design.width),
            diameters: DiametersMm {
                phi_cam_mm: mm(outcome.diameters.phi_cam),
                phi_bear_mm: mm(outcome.diameters.phi_bear),
            },
            kinetostatics: KinetostaticSummary {
                delta_ext_deg: deg(kin.delta_ext),
                interval: IntervalDeg {
                    start_deg: deg(kin.interval.psi_start),
                    end_deg: deg(kin.interval.psi_end),
                },
                mu_max_deg: deg(kin.mu_max),
                mu_min_deg: deg(kin.mu_min),
                delta_mu_deg: deg(kin.delta_mu),
                F_max_N: sig9(kin.force_max),
                r_cam_min_mm: mm(kin.r_cam_min),
            },
            hertz: HertzSummary::from(&outcome.hertz),
            r_eq_variant: outcome.hertz.variant,
            constraints: constraint_entries(&outcome.constraints),
            trace: outcome.trace.iter().map(IterationEntry::from).collect(),
        }
    }
}

/// Runs synthesis for a request document. `Err` carries either an input
/// error (empty trace) or the infeasible trace.
pub fn synthesize(request: &SynthesisRequestConfig) -> Result<SynthesisResponse, SynthesisFailure> {
    match synthesis::synthesize(&request.to_request()) {
        Ok(outcome) => Ok(SynthesisResponse::new(&outcome, request)),
        Err(Error::Infeasible { trace }) => Err(SynthesisFailure {
            error: "infeasible".into(),
            message: format!("no design satisfies the limits ({} candidates tried)", trace.len()),
            trace: trace.iter().map(IterationEntry::from).collect(),
        }),
        Err(e) => Err(SynthesisFailure {
            error: "invalid_input".into(),
            message: e.to_string(),
            trace: Vec::new(),
        }),
    }
}

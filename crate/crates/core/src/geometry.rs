//! Closed-form geometry of the cam: follower displacement, profile
//! coefficients, contact-point and pitch-curve coordinates, extended angle
//! and sampled closed profiles.
//!
//! Everything here is in SI units (m, rad). The cam axis is fixed at
//! α₁ = −π/2 relative to the follower translation, which reduces the
//! general coefficient expressions to the forms used below.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots;
use crate::strength::Material;

/// Directed angle between the cam axis and the follower translation.
pub const ALPHA1: f64 = -PI / 2.0;

/// Lower bound on η below which the profile cannot be closed.
pub const ETA_MIN: f64 = 1.0 / TAU;

const ETA_DEGENERACY_TOL: f64 = 1e-9;
const DELTA_PROBES: usize = 2048;
const DELTA_TOL: f64 = 1e-12;
const CLOSURE_TOL: f64 = 1e-9;

/// Default number of samples for profiles and sweeps.
pub const DEFAULT_SAMPLES: usize = 721;

/// Complete parameter set of one cam-roller transmission, in SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignParameters {
    /// Distance between the centres of consecutive rollers on one side.
    pub pitch: f64,
    /// Offset ratio e/p.
    pub eta: f64,
    /// Roller radius a₄.
    pub roller_radius: f64,
    /// Camshaft radius b.
    pub camshaft_radius: f64,
    /// Number of conjugate cams.
    pub n_cams: u32,
    /// Torque on the camshaft (N·m).
    pub torque: f64,
    /// Common width of cam and roller.
    pub width: f64,
    pub material: Material,
}

impl DesignParameters {
    /// Distance e between the cam axis and the line of roller centres.
    pub fn offset(&self) -> f64 {
        self.eta * self.pitch
    }

    /// Follower lead per radian, p/2π.
    pub fn lead(&self) -> f64 {
        self.pitch / TAU
    }

    /// 2πη − 1; zero on the degenerate design.
    pub fn eta_excess(&self) -> f64 {
        TAU * self.eta - 1.0
    }

    /// Camshaft diameter implied by the layout, 2(e − a₄).
    pub fn phi_cam(&self) -> f64 {
        2.0 * (self.offset() - self.roller_radius)
    }

    /// Bearing-shaft diameter, 2a₄.
    pub fn phi_bear(&self) -> f64 {
        2.0 * self.roller_radius
    }

    /// Checks that every quantity is finite and in its physical range.
    ///
    /// Feasibility constraints (η bound, roller spacing, shaft clearance)
    /// are reported by [`crate::synthesis::check_constraints`] instead.
    pub fn validate_inputs(&self) -> Result<()> {
        let positive = [
            ("pitch", self.pitch),
            ("eta", self.eta),
            ("roller_radius", self.roller_radius),
            ("width", self.width),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidInput(format!("{name} must be positive, got {value}")));
            }
        }
        let non_negative = [("camshaft_radius", self.camshaft_radius), ("torque", self.torque)];
        for (name, value) in non_negative {
            if !(value.is_finite() && value >= 0.0) {
                return Err(Error::InvalidInput(format!("{name} must be non-negative, got {value}")));
            }
        }
        if self.n_cams == 0 {
            return Err(Error::InvalidInput("n_cams must be at least 1".into()));
        }
        self.material.validate()
    }
}

/// A point of a curve in the cam frame, tagged with its cam angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfilePoint {
    pub psi: f64,
    pub u: f64,
    pub v: f64,
}

impl ProfilePoint {
    pub fn distance(&self, other: &ProfilePoint) -> f64 {
        (self.u - other.u).hypot(self.v - other.v)
    }
}

/// Profile coefficients b₂, b₃ and δ at one cam angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub b2: f64,
    pub b3: f64,
    pub delta: f64,
}

/// A sampled cam profile over its closing range [Δ, 2π − Δ].
#[derive(Debug, Clone, PartialEq)]
pub struct CamProfile {
    pub params: DesignParameters,
    pub delta_ext: f64,
    pub samples: Vec<ProfilePoint>,
    pub closed: bool,
}

/// Follower displacement s(ψ) = (p/2π)ψ − p/2. No wrapping of ψ.
pub fn displacement(params: &DesignParameters, psi: f64) -> f64 {
    params.lead() * psi - params.pitch / 2.0
}

/// First and second derivatives of the displacement, (p/2π, 0).
pub fn displacement_derivatives(params: &DesignParameters) -> (f64, f64) {
    (params.lead(), 0.0)
}

fn check_eta(params: &DesignParameters) -> Result<()> {
    if (params.eta - ETA_MIN).abs() < ETA_DEGENERACY_TOL {
        Err(Error::DegenerateEta)
    } else {
        Ok(())
    }
}

pub fn coefficients(params: &DesignParameters, psi: f64) -> Result<Coefficients> {
    check_eta(params)?;
    let k = params.eta_excess();
    let d = psi - PI;
    Ok(Coefficients {
        b2: params.lead(),
        b3: params.lead() * k.hypot(d),
        delta: (d / k).atan(),
    })
}

/// Contact point C on the cam profile at cam angle ψ.
pub fn contact_point(params: &DesignParameters, psi: f64) -> Result<ProfilePoint> {
    let Coefficients { b2, b3, delta } = coefficients(params, psi)?;
    let arm = b3 - params.roller_radius;
    Ok(ProfilePoint {
        psi,
        u: b2 * psi.cos() + arm * (delta - psi).cos(),
        v: -b2 * psi.sin() + arm * (delta - psi).sin(),
    })
}

/// Roller centre O₂ expressed in the cam frame (the pitch curve).
pub fn pitch_point(params: &DesignParameters, psi: f64) -> ProfilePoint {
    let e = params.offset();
    let s = displacement(params, psi);
    let (sin, cos) = psi.sin_cos();
    ProfilePoint {
        psi,
        u: e * cos + s * sin,
        v: -e * sin + s * cos,
    }
}

/// Extended angle Δ: the negative root of v_c(ψ) = 0 nearest zero.
pub fn extended_angle(params: &DesignParameters) -> Result<f64> {
    check_eta(params)?;
    // coefficients cannot fail past check_eta
    let v = |psi: f64| contact_point(params, psi).map(|c| c.v).unwrap_or(f64::NAN);
    let brackets = roots::sign_changes(v, -PI, 0.0, DELTA_PROBES);
    let (lo, hi) = brackets
        .into_iter()
        .rfind(|&(lo, _)| lo < 0.0)
        .ok_or(Error::NoRootFound)?;
    let delta = roots::bisect(v, lo, hi, DELTA_TOL);
    if delta >= 0.0 {
        return Err(Error::NoRootFound);
    }
    Ok(delta)
}

/// Uniform grid of `n` angles spanning `[start, end]` inclusive.
pub fn uniform_grid(start: f64, end: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = (end - start) / (n.max(2) - 1) as f64;
    (0..n).map(move |k| if k + 1 == n { end } else { start + step * k as f64 })
}

/// Samples the closed cam profile on a uniform ψ-grid over [Δ, 2π − Δ].
pub fn generate_profile(params: &DesignParameters, n_samples: usize) -> Result<CamProfile> {
    if n_samples < 3 {
        return Err(Error::InvalidInput(format!("need at least 3 samples, got {n_samples}")));
    }
    let delta_ext = extended_angle(params)?;
    let samples = uniform_grid(delta_ext, TAU - delta_ext, n_samples)
        .map(|psi| contact_point(params, psi))
        .collect::<Result<Vec<_>>>()?;
    let first = samples[0];
    let last = samples[samples.len() - 1];
    let closed = first.v.abs() < CLOSURE_TOL && last.v.abs() < CLOSURE_TOL;
    Ok(CamProfile {
        params: *params,
        delta_ext,
        samples,
        closed,
    })
}

/// Samples the pitch curve on the same grid as a cam profile.
pub fn pitch_curve(profile: &CamProfile) -> Vec<ProfilePoint> {
    profile
        .samples
        .iter()
        .map(|c| pitch_point(&profile.params, c.psi))
        .collect()
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    const MM: f64 = 1e-3;

    #[test]
    fn displacement_law() {
        let p = with(20.0, 0.25, 4.0);
        assert!((displacement(&p, 0.0) + 10.0 * MM).abs() < 1e-15);
        assert!(displacement(&p, PI).abs() < 1e-15);
        let ds = displacement(&p, TAU) - displacement(&p, 0.0);
        assert!((ds - 20.0 * MM).abs() < 1e-15);
    }

    #[test]
    fn displacement_derivative_values() {
        let (d1, d2) = displacement_derivatives(&with(20.0, 0.25, 4.0));
        assert!((d1 / MM - 3.183_098_861_837_907).abs() < 1e-12);
        assert_eq!(d2, 0.0);
        let (d1, _) = displacement_derivatives(&with(TAU, 0.25, 1.0));
        assert!((d1 / MM - 1.0).abs() < 1e-12);
        let (d1, _) = displacement_derivatives(&with(40.0, 0.25, 4.0));
        assert!((d1 / MM - 6.366_197_723_675_814).abs() < 1e-12);
    }

    #[test]
    fn coefficients_at_half_turn() {
        let c = coefficients(&with(20.0, 0.25, 4.0), PI).unwrap();
        assert!((c.b2 / MM - 3.1831).abs() < 1e-4);
        assert!((c.b3 / MM - 1.8169).abs() < 1e-4);
        assert_eq!(c.delta, 0.0);
    }

    #[test]
    fn coefficients_quarter_pi_delta() {
        let k = TAU * 0.25 - 1.0;
        let c = coefficients(&with(20.0, 0.25, 4.0), PI + k).unwrap();
        assert!((c.delta - PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn coefficients_far_from_half_turn() {
        // (p/2π)·√(0.178097² + 4.4416²) and atan(−4.4416 / 0.178097)
        let c = coefficients(&with(20.0, 0.1875, 2.5), PI - 4.4416).unwrap();
        assert!((c.b3 / MM - 14.15).abs() < 5e-3);
        assert!((c.delta + 1.5307).abs() < 1e-4);
    }

    #[test]
    fn degenerate_eta_is_rejected() {
        let p = with(20.0, ETA_MIN, 2.0);
        assert_eq!(coefficients(&p, 1.0), Err(Error::DegenerateEta));
        assert_eq!(contact_point(&p, 1.0), Err(Error::DegenerateEta));
        assert_eq!(extended_angle(&p), Err(Error::DegenerateEta));
        let near = with(20.0, ETA_MIN + 5e-10, 2.0);
        assert_eq!(coefficients(&near, 1.0), Err(Error::DegenerateEta));
    }

    #[test]
    fn contact_point_at_half_turn() {
        // δ = 0, so u = −b₂ − (b₃ − a₄) = −(e − a₄) and v = 0.
        let p = with(20.0, 0.1875, 2.5);
        let c = contact_point(&p, PI).unwrap();
        let b2 = 20.0 / TAU;
        let b3 = b2 * (TAU * 0.1875 - 1.0);
        assert!((c.u / MM - (-b2 - (b3 - 2.5))).abs() < 1e-12);
        assert!((c.u / MM + 1.25).abs() < 1e-12);
        assert!(c.v.abs() < 1e-15);
    }

    #[test]
    fn pitch_point_values() {
        let p = with(20.0, 0.25, 4.0);
        let q = pitch_point(&p, 0.0);
        assert!((q.u / MM - 5.0).abs() < 1e-12 && (q.v / MM + 10.0).abs() < 1e-12);
        let q = pitch_point(&p, PI);
        assert!((q.u / MM + 5.0).abs() < 1e-12 && q.v.abs() < 1e-15);
        for psi in [-1.0, 0.3, 2.0, 5.9] {
            let q = pitch_point(&p, psi);
            let expected = p.offset().hypot(displacement(&p, psi));
            assert!((q.u.hypot(q.v) - expected).abs() < 1e-15);
        }
    }

    /// Dense sign-change scan on v_c, refined with plain bisection.
    fn delta_oracle(p: &DesignParameters) -> f64 {
        let v = |x: f64| contact_point(p, x).unwrap().v;
        let n = 100_000;
        let mut root = f64::NAN;
        for k in 0..n {
            let a = -PI + PI * k as f64 / n as f64;
            let b = -PI + PI * (k + 1) as f64 / n as f64;
            if v(a).signum() != v(b).signum() {
                let (mut lo, mut hi) = (a, b);
                for _ in 0..80 {
                    let m = 0.5 * (lo + hi);
                    if v(m).signum() == v(lo).signum() {
                        lo = m
                    } else {
                        hi = m
                    }
                }
                root = lo;
            }
        }
        root
    }

    #[test]
    fn extended_angle_cases() {
        let a = case_a();
        let delta = extended_angle(&a).unwrap();
        assert!((delta - delta_oracle(&a)).abs() < 1e-10);
        assert!((delta + 1.266).abs() < 3e-3);
        assert!(contact_point(&a, delta).unwrap().v.abs() < 1e-12);

        let c = with(20.0, 0.25, 4.0);
        let delta = extended_angle(&c).unwrap();
        assert!((delta - delta_oracle(&c)).abs() < 1e-10);
        assert!((delta + 1.137).abs() < 3e-3);
        assert!(contact_point(&c, TAU - delta).unwrap().v.abs() < 1e-9);
    }

    #[test]
    fn profile_grid_and_closure() {
        let a = case_a();
        let prof = generate_profile(&a, DEFAULT_SAMPLES).unwrap();
        assert!(prof.closed);
        assert_eq!(prof.samples.len(), 721);
        assert!(prof.delta_ext < 0.0);
        assert!(prof.samples.windows(2).all(|w| w[0].psi < w[1].psi));
        let first = prof.samples[0];
        let last = prof.samples[720];
        assert!((first.u - last.u).abs() < 1e-9);

        let three = generate_profile(&a, 3).unwrap();
        let psis: Vec<f64> = three.samples.iter().map(|s| s.psi).collect();
        assert_eq!(psis[0], prof.delta_ext);
        assert!((psis[1] - PI).abs() < 1e-15);
        assert_eq!(psis[2], TAU - prof.delta_ext);

        for s in &prof.samples {
            let o2 = pitch_point(&a, s.psi);
            assert!((s.distance(&o2) - a.roller_radius).abs() < 1e-9);
        }
    }

    #[test]
    fn too_few_samples() {
        assert!(matches!(generate_profile(&case_a(), 2), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn input_validation() {
        let mut p = case_a();
        assert!(p.validate_inputs().is_ok());
        p.n_cams = 0;
        assert!(p.validate_inputs().is_err());
        let mut p = case_a();
        p.pitch = -1.0;
        assert!(p.validate_inputs().is_err());
        let mut p = case_a();
        p.torque = f64::NAN;
        assert!(p.validate_inputs().is_err());
    }
}

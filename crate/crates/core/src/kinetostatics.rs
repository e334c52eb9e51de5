//! Pressure angle, active interval, transmitted force and curvature of the
//! pitch curve and cam profile.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{self, DesignParameters, ProfilePoint};

const SINGULAR_TOL: f64 = 1e-12;
const UNDERCUT_TOL: f64 = 1e-9;
const TANGENT_TOL: f64 = 1e-18;

/// Range of cam angles over which one cam drives its roller.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ActiveInterval {
    pub psi_start: f64,
    pub psi_end: f64,
}

impl ActiveInterval {
    pub fn length(&self) -> f64 {
        self.psi_end - self.psi_start
    }

    /// True when the hand-over orientation ψ = π lies inside or on the
    /// boundary of the interval.
    pub fn touches_singularity(&self) -> bool {
        self.psi_start - SINGULAR_TOL <= PI && PI <= self.psi_end + SINGULAR_TOL
    }

    pub fn grid(&self, n: usize) -> impl Iterator<Item = f64> {
        geometry::uniform_grid(self.psi_start, self.psi_end, n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KinetostaticReport {
    pub delta_ext: f64,
    pub mu_max: f64,
    pub mu_min: f64,
    pub delta_mu: f64,
    pub interval: ActiveInterval,
    pub force_max: f64,
    pub force_min: f64,
    pub mu_sweep: Vec<(f64, f64)>,
    pub force_sweep: Vec<(f64, f64)>,
    pub kappa_p_sweep: Vec<(f64, f64)>,
    pub kappa_c_sweep: Vec<(f64, f64)>,
    pub r_cam_min: f64,
}

fn check_regular(psi: f64) -> Result<()> {
    if (psi - PI).abs() < SINGULAR_TOL {
        Err(Error::SingularOrientation { psi })
    } else {
        Ok(())
    }
}

/// Angle δ(ψ) between the contact normal and the cam-frame axis.
pub fn normal_angle(params: &DesignParameters, psi: f64) -> Result<f64> {
    geometry::coefficients(params, psi).map(|c| c.delta)
}

/// Pressure angle μ(ψ) = arctan(|2πη − 1| / |ψ − π|), the complement of |δ|.
pub fn pressure_angle(params: &DesignParameters, psi: f64) -> Result<f64> {
    check_regular(psi)?;
    let k = params.eta_excess();
    if k.abs() < 1e-9 * TAU {
        return Err(Error::DegenerateEta);
    }
    Ok((k.abs() / (psi - PI).abs()).atan())
}

/// Active interval [π/n − Δ, 2π/n − Δ]. Values are not wrapped to [0, 2π).
pub fn active_interval(params: &DesignParameters, delta_ext: f64) -> ActiveInterval {
    let n = f64::from(params.n_cams.max(1));
    ActiveInterval {
        psi_start: PI / n - delta_ext,
        psi_end: TAU / n - delta_ext,
    }
}

/// Largest and smallest pressure angle over the interval, `(mu_max, mu_min)`.
///
/// μ decreases with |ψ − π|, so the extremes sit at the interval endpoints.
pub fn pressure_angle_extremes(params: &DesignParameters, interval: &ActiveInterval) -> Result<(f64, f64)> {
    if interval.touches_singularity() {
        return Err(Error::SingularOrientation { psi: PI });
    }
    let (near, far) = if (interval.psi_start - PI).abs() <= (interval.psi_end - PI).abs() {
        (interval.psi_start, interval.psi_end)
    } else {
        (interval.psi_end, interval.psi_start)
    };
    Ok((pressure_angle(params, near)?, pressure_angle(params, far)?))
}

/// Magnitude of the contact force needed to deliver the camshaft torque.
pub fn transmitted_force(params: &DesignParameters, psi: f64) -> Result<f64> {
    check_regular(psi)?;
    let delta = normal_angle(params, psi)?;
    let axial = params.torque * TAU / params.pitch;
    let tan = delta.tan();
    if tan == 0.0 {
        return Err(Error::SingularOrientation { psi });
    }
    Ok(axial.hypot(axial / tan))
}

/// Finite-difference weights for the first and second derivative at
/// `offset` on five unit-spaced nodes 0..5 (Fornberg's recursion).
fn stencil_weights(offset: f64) -> [[f64; 5]; 2] {
    const NODES: usize = 5;
    let mut c = [[0.0f64; NODES]; 3];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = -offset;
    for i in 1..NODES {
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = i as f64 - offset;
        for j in 0..i {
            let c3 = i as f64 - j as f64;
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=2.min(i)).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=2.min(i)).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] *= c4 / c3;
        }
        c1 = c2;
    }
    [c[1], c[2]]
}

/// Finite-difference curvature of a curve sampled on a uniform ψ-grid.
///
/// Uses κ = (v′u″ − u′v″)/(u′² + v′²)^{3/2}. Derivatives come from
/// five-point stencils: central in the interior, shifted toward the inside
/// for the two samples nearest each end.
pub fn curvature_numeric(points: &[ProfilePoint]) -> Result<Vec<(f64, f64)>> {
    let n = points.len();
    if n < 5 {
        return Err(Error::InvalidInput(format!("curvature needs at least 5 points, got {n}")));
    }
    let h = (points[n - 1].psi - points[0].psi) / (n - 1) as f64;
    let edge: Vec<[[f64; 5]; 2]> = (0..5).map(|k| stencil_weights(k as f64)).collect();
    (0..n)
        .map(|i| {
            let start = i.saturating_sub(2).min(n - 5);
            let [w1, w2] = edge[i - start];
            let window = &points[start..start + 5];
            let dot = |w: &[f64; 5], f: fn(&ProfilePoint) -> f64| -> f64 {
                w.iter().zip(window).map(|(w, p)| w * f(p)).sum()
            };
            let du = dot(&w1, |p| p.u) / h;
            let dv = dot(&w1, |p| p.v) / h;
            let ddu = dot(&w2, |p| p.u) / (h * h);
            let ddv = dot(&w2, |p| p.v) / (h * h);
            let speed2 = du * du + dv * dv;
            if speed2 < TANGENT_TOL {
                return Err(Error::DegenerateCurve { psi: points[i].psi });
            }
            Ok((points[i].psi, (dv * ddu - du * ddv) / speed2.powf(1.5)))
        })
        .collect()
}

/// Closed-form curvature κ_p of the pitch curve.
pub fn curvature_pitch(params: &DesignParameters, psi: f64) -> Result<f64> {
    if (params.eta - geometry::ETA_MIN).abs() < 1e-9 {
        return Err(Error::DegenerateEta);
    }
    let k = params.eta_excess();
    let d2 = (psi - PI).powi(2);
    let num = d2 + 2.0 * k * (PI * params.eta - 1.0);
    let den = (d2 + k * k).powf(1.5);
    Ok(TAU / params.pitch * num / den)
}

/// Curvature of the cam profile, κ_c = κ_p / (1 − a₄κ_p).
pub fn curvature_profile(params: &DesignParameters, psi: f64) -> Result<f64> {
    let kp = curvature_pitch(params, psi)?;
    let den = 1.0 - params.roller_radius * kp;
    if den.abs() < UNDERCUT_TOL {
        return Err(Error::Undercut { psi });
    }
    Ok(kp / den)
}

/// Local radius of curvature of the cam surface, 1/|κ_c|.
pub fn cam_radius(params: &DesignParameters, psi: f64) -> Result<f64> {
    curvature_profile(params, psi).map(|k| 1.0 / k.abs())
}

/// Full kinetostatic evaluation over the active interval.
pub fn analyze(params: &DesignParameters, n_samples: usize) -> Result<KinetostaticReport> {
    if n_samples < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 samples, got {n_samples}")));
    }
    let delta_ext = geometry::extended_angle(params)?;
    let interval = active_interval(params, delta_ext);
    let (mu_max, mu_min) = pressure_angle_extremes(params, &interval)?;

    let mut mu_sweep = Vec::with_capacity(n_samples);
    let mut force_sweep = Vec::with_capacity(n_samples);
    let mut kappa_p_sweep = Vec::with_capacity(n_samples);
    let mut kappa_c_sweep = Vec::with_capacity(n_samples);
    for psi in interval.grid(n_samples) {
        mu_sweep.push((psi, pressure_angle(params, psi)?));
        force_sweep.push((psi, transmitted_force(params, psi)?));
        kappa_p_sweep.push((psi, curvature_pitch(params, psi)?));
        kappa_c_sweep.push((psi, curvature_profile(params, psi)?));
    }
    let force_max = force_sweep.iter().map(|f| f.1).fold(f64::NEG_INFINITY, f64::max);
    let force_min = force_sweep.iter().map(|f| f.1).fold(f64::INFINITY, f64::min);
    let r_cam_min = kappa_c_sweep
        .iter()
        .map(|&(_, k)| 1.0 / k.abs())
        .fold(f64::INFINITY, f64::min);

    Ok(KinetostaticReport {
        delta_ext,
        mu_max,
        mu_min,
        delta_mu: mu_max - mu_min,
        interval,
        force_max,
        force_min,
        mu_sweep,
        force_sweep,
        kappa_p_sweep,
        kappa_c_sweep,
        r_cam_min,
    })
}

/// μ + |δ| = π/2; exposed for diagnostics.
pub fn complementarity_residual(params: &DesignParameters, psi: f64) -> Result<f64> {
    Ok(pressure_angle(params, psi)? + normal_angle(params, psi)?.abs() - FRAC_PI_2)
}

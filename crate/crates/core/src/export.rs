//! Profile exporters: CSV table, SVG drawing and JSON document.
//!
//! Lengths are written in mm with nine significant digits in fixed
//! notation, so repeated exports of one configuration are byte-identical.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::config::DesignConfig;
use crate::geometry::{self, CamProfile};
use crate::report::{fmt_sig9, sig9, to_json_fixed};

const MM: f64 = 1e-3;

pub const CSV_HEADER: &str = "psi_rad,u_mm,v_mm,up_mm,vp_mm";

/// Cam angles at which rollers are drawn in the SVG.
pub const ROLLER_ANGLES: [f64; 3] = [0.0, FRAC_PI_2, PI];

pub fn profile_csv(profile: &CamProfile) -> String {
    let mut out = String::with_capacity(64 * (profile.samples.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for c in &profile.samples {
        let p = geometry::pitch_point(&profile.params, c.psi);
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_sig9(c.psi),
            fmt_sig9(c.u / MM),
            fmt_sig9(c.v / MM),
            fmt_sig9(p.u / MM),
            fmt_sig9(p.v / MM)
        );
    }
    out
}

fn polyline(points: impl Iterator<Item = (f64, f64)>, close: bool) -> String {
    let mut d = String::new();
    for (i, (u, v)) in points.enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        let _ = write!(d, "{cmd}{},{} ", fmt_sig9(u), fmt_sig9(v));
    }
    if close {
        d.push('Z');
    } else {
        d.pop();
    }
    d
}

/// SVG drawing in mm (one user unit per mm) with the v-axis pointing up.
pub fn profile_svg(profile: &CamProfile) -> String {
    let params = &profile.params;
    let a4 = params.roller_radius / MM;
    let cam: Vec<(f64, f64)> = profile.samples.iter().map(|c| (c.u / MM, c.v / MM)).collect();
    let pitch: Vec<(f64, f64)> = geometry::pitch_curve(profile)
        .iter()
        .map(|p| (p.u / MM, p.v / MM))
        .collect();
    let rollers: Vec<(f64, f64)> = ROLLER_ANGLES
        .iter()
        .map(|&psi| {
            let p = geometry::pitch_point(params, psi);
            (p.u / MM, p.v / MM)
        })
        .collect();

    let mut lo = (f64::INFINITY, f64::INFINITY);
    let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut grow = |u: f64, v: f64, r: f64| {
        lo = (lo.0.min(u - r), lo.1.min(v - r));
        hi = (hi.0.max(u + r), hi.1.max(v + r));
    };
    cam.iter().chain(&pitch).for_each(|&(u, v)| grow(u, v, 0.0));
    rollers.iter().for_each(|&(u, v)| grow(u, v, a4));
    let margin = 0.05 * (hi.0 - lo.0).max(hi.1 - lo.1);
    let (x0, y0) = (lo.0 - margin, -hi.1 - margin);
    let (w, h) = (hi.0 - lo.0 + 2.0 * margin, hi.1 - lo.1 + 2.0 * margin);
    let stroke = fmt_sig9(sig9(0.004 * w.max(h)));

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="{}mm" height="{}mm">"#,
        fmt_sig9(x0),
        fmt_sig9(y0),
        fmt_sig9(w),
        fmt_sig9(h),
        fmt_sig9(w),
        fmt_sig9(h)
    );
    let _ = writeln!(svg, r#"<g transform="scale(1,-1)" fill="none" stroke-width="{stroke}">"#);
    let _ = writeln!(svg, r#"<path id="cam-profile" stroke="black" d="{}"/>"#, polyline(cam.into_iter(), true));
    let _ = writeln!(
        svg,
        r#"<path id="pitch-curve" stroke="steelblue" stroke-dasharray="{} {}" d="{}"/>"#,
        stroke,
        stroke,
        polyline(pitch.into_iter(), false)
    );
    for ((u, v), psi) in rollers.iter().zip(ROLLER_ANGLES) {
        let _ = writeln!(
            svg,
            r#"<circle class="roller" data-psi="{}" cx="{}" cy="{}" r="{}" stroke="firebrick"/>"#,
            fmt_sig9(psi),
            fmt_sig9(*u),
            fmt_sig9(*v),
            fmt_sig9(a4)
        );
    }
    svg.push_str("</g>\n</svg>\n");
    svg
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub psi_rad: f64,
    pub u_mm: f64,
    pub v_mm: f64,
    pub up_mm: f64,
    pub vp_mm: f64,
}

/// Serialized cam profile. `config` makes the document re-ingestible as a
/// design configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileDocument {
    pub config: DesignConfig,
    pub delta_ext_rad: f64,
    pub delta_ext_deg: f64,
    pub closed: bool,
    pub samples: Vec<SampleRow>,
}

pub fn profile_document(config: &DesignConfig, profile: &CamProfile) -> ProfileDocument {
    ProfileDocument {
        config: *config,
        delta_ext_rad: sig9(profile.delta_ext),
        delta_ext_deg: sig9(profile.delta_ext.to_degrees()),
        closed: profile.closed,
        samples: profile
            .samples
            .iter()
            .map(|c| {
                let p = geometry::pitch_point(&profile.params, c.psi);
                SampleRow {
                    psi_rad: sig9(c.psi),
                    u_mm: sig9(c.u / MM),
                    v_mm: sig9(c.v / MM),
                    up_mm: sig9(p.u / MM),
                    vp_mm: sig9(p.v / MM),
                }
            })
            .collect(),
    }
}

pub fn profile_json(config: &DesignConfig, profile: &CamProfile) -> String {
    let mut s = to_json_fixed(&profile_document(config, profile), true);
    s.push('\n');
    s
}

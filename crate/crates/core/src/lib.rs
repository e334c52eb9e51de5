//! Synthesis and analysis of cam-roller prismatic transmissions.
//!
//! A camshaft carrying one or more conjugate cams drives a follower fitted
//! with equally spaced rollers; one cam revolution advances the follower by
//! one pitch. This crate builds the closed cam profile from the design
//! parameters, evaluates pressure angle, curvature and transmitted force,
//! sizes the shafts and the contact width, and runs the iterative sizing
//! loop.
//!
//! The math modules ([`geometry`], [`kinetostatics`], [`strength`],
//! [`synthesis`]) work in SI units. [`config`] and [`report`] are the
//! boundary layer in mm, degrees, MPa and N·m.

pub mod config;
pub mod error;
pub mod export;
pub mod geometry;
pub mod kinetostatics;
pub mod report;
pub mod roots;
pub mod strength;
pub mod synthesis;

pub use error::{Error, Result};
pub use geometry::{CamProfile, DesignParameters, ProfilePoint};
pub use kinetostatics::{ActiveInterval, KinetostaticReport};
pub use strength::{HertzReport, Material, ReqVariant, ShaftDiameters};
pub use synthesis::{AnalysisOptions, ConstraintReport, SynthesisOutcome, SynthesisRequest};

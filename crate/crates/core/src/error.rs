use crate::synthesis::IterationRecord;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("η = 1/(2π) makes the cam profile degenerate (require η > 1/(2π))")]
    DegenerateEta,

    #[error("no sign change of v_c on [-π, 0): the profile cannot be closed")]
    NoRootFound,

    #[error("singular orientation at ψ = {psi} rad: the contact normal is perpendicular to the follower")]
    SingularOrientation { psi: f64 },

    #[error("degenerate curve: vanishing tangent at ψ = {psi} rad")]
    DegenerateCurve { psi: f64 },

    #[error("cam profile undercut at ψ = {psi} rad: roller radius equals the pitch radius of curvature")]
    Undercut { psi: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("synthesis infeasible after {} iterations", trace.len())]
    Infeasible { trace: Vec<IterationRecord> },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Failure modes shared by every computation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CasimirError {
    #[error("naked singularity: |a| = {spin} exceeds M = {mass} (enable naked-singularity mode to allow)")]
    NakedSingularity { mass: f64, spin: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("radius r = {radius} is not outside the horizon (Delta = {delta})")]
    InsideHorizon { radius: f64, delta: f64 },

    #[error("forbidden orbit: Omega = {omega} is outside the open interval ({min}, {max})")]
    ForbiddenOrbit { omega: f64, min: f64, max: f64 },

    #[error("zero proper temperature has no finite beta-hat")]
    ZeroTemperature,

    #[error("series not converged after {terms} terms (partial sum {partial}, tail estimate {estimate})")]
    Truncation {
        partial: f64,
        estimate: f64,
        terms: usize,
    },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("finite-difference step underflow at Tp = {temperature} (step {step})")]
    FdStep { temperature: f64, step: f64 },
}

pub type Result<T> = std::result::Result<T, CasimirError>;

pub(crate) fn domain(msg: impl Into<String>) -> CasimirError {
    CasimirError::Domain(msg.into())
}

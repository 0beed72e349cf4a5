use thiserror::Error;

/// Errors produced by the director-field constructions and evaluators.
#[derive(Debug, Error)]
pub enum Error {
    #[error("director is not unit length (|n| = {norm})")]
    NonUnitDirector { norm: f64 },

    #[error("gradient is inconsistent with the director: |Gᵀn| = {residual}")]
    InconsistentGradient { residual: f64 },

    #[error("distortion frame is not orthonormal and right-handed (defect {defect})")]
    InvalidFrame { defect: f64 },

    #[error("radius must be positive (got {0})")]
    InvalidRadius(f64),

    #[error("elastic constant {name} must be nonnegative (got {value})")]
    NegativeElasticConstant { name: &'static str, value: f64 },

    #[error("distortion state inconsistent with the supplied gradient (residual {residual})")]
    InconsistentState { residual: f64 },

    #[error("the factor chart is singular here (denominator {denominator})")]
    SingularFactor { denominator: f64 },

    #[error("point ({x}, {y}) lies inside the unit circle and extension was not requested")]
    PointInsideCircle { x: f64, y: f64 },

    #[error("point lies outside the sampler domain")]
    OutsideDomain,

    #[error("reduction branch does not match the supplied constants: {0}")]
    BranchMismatch(String),

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

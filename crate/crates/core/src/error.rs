use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("drift is undefined at the origin")]
    OriginSingularity,

    #[error("step rejected: reflection did not land inside the domain")]
    StepRejected,

    #[error("integrator failed on trajectory {index} at t = {time}: {consecutive} consecutive rejected steps")]
    IntegratorFailure {
        index: u64,
        time: f64,
        consecutive: u32,
    },

    #[error("normalizer undefined: t = {t} must exceed {threshold}")]
    NormalizerUndefined { t: f64, threshold: f64 },

    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),

    #[error("no sign change of the cross product found on the scan grid")]
    BracketNotFound,

    #[error("empty input")]
    EmptyInput,
}

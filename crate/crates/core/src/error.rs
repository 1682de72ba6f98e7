use thiserror::Error;

/// Errors raised by the library. The CLI maps these onto exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("delay {delay} is not an integer multiple of the step {dt}")]
    MisalignedStep { dt: f64, delay: f64 },

    #[error("horizon {horizon} is shorter than the delay {delay}")]
    HorizonTooShort { horizon: f64, delay: f64 },

    #[error("non-finite value encountered at t = {time}")]
    NonFinite { time: f64 },

    #[error("delayed lookup at t = {query} is beyond the computed history (frontier t = {frontier})")]
    FutureLookup { query: f64, frontier: f64 },

    #[error("{what}: t = {time} is outside [{lo}, {hi}]")]
    DomainViolation {
        what: &'static str,
        time: f64,
        lo: f64,
        hi: f64,
    },

    #[error("time {time} is not a node of the grid with step {dt}")]
    OffGrid { time: f64, dt: f64 },

    #[error("trajectory too short for oscillation analysis: {0}")]
    TooShort(String),

    #[error("invalid bracket [{lo}, {hi}]: {detail}")]
    BracketInvalid { lo: f64, hi: f64, detail: String },

    #[error("invalid scenario: {0}")]
    ScenarioInvalid(String),
}

impl Error {
    /// True for failures of the numerics themselves, as opposed to bad inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonFinite { .. } | Error::FutureLookup { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonPositive { name, value })
    }
}

use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("argument {value} is outside the domain of {operation}: {reason}")]
    Domain {
        operation: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error(
        "kernel is degenerate: beta = alpha * gamma = {beta} leaves no continuous density; \
         the law is a point mass"
    )]
    DegenerateKernel { beta: f64 },

    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(&'static str),

    #[error(
        "{method} did not converge: estimate {value:e} with error {error_estimate:e} \
         after {evaluations} evaluations"
    )]
    NotConverged {
        method: &'static str,
        value: f64,
        error_estimate: f64,
        evaluations: usize,
    },

    #[error("integrand or summand returned NaN at {at}")]
    NanEncountered { at: f64 },

    #[error("series term {index} overflowed")]
    TermOverflow { index: usize },

    #[error(
        "catastrophic cancellation: largest term {max_term:e} leaves an error of {error_estimate:e}, \
         above the budget {budget:e}"
    )]
    CancellationLoss {
        max_term: f64,
        error_estimate: f64,
        budget: f64,
    },

    #[error("|x| = {abs_x} exceeds the series range {limit}; use the pollard or spectral method")]
    OutsideSeriesRange { abs_x: f64, limit: f64 },

    #[error("methods disagree at {at}: {first} = {first_value:e}, {second} = {second_value:e}")]
    MethodDisagreement {
        at: f64,
        first: &'static str,
        first_value: f64,
        second: &'static str,
        second_value: f64,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),

    #[error("evaluation failed at x = {at}: {source}")]
    EvaluationFailed {
        at: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::NotConverged { .. }
            | Error::NanEncountered { .. }
            | Error::TermOverflow { .. }
            | Error::CancellationLoss { .. }
            | Error::MethodDisagreement { .. } => true,
            Error::EvaluationFailed { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite",
        })
    }
}

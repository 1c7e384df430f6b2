use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("unknown statistic `{0}`")]
    UnknownStatistic(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("statistic {statistic} is undefined at x = {x} (domain requires x > {lower})")]
    DomainViolation { statistic: String, x: f64, lower: f64 },

    #[error("statistic {0} has no derivative")]
    MissingDerivative(String),

    #[error("spike {spike} is within the critical band of threshold {threshold}")]
    CriticalRegime { spike: f64, threshold: f64 },

    #[error("series support [{series_a}, {series_b}] does not match [{expected_a}, {expected_b}]")]
    SupportMismatch {
        series_a: f64,
        series_b: f64,
        expected_a: f64,
        expected_b: f64,
    },

    #[error("Chebyshev tail did not decay at order {order} (relative tail {tail:e})")]
    Analyticity { order: usize, tail: f64 },

    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    #[error("spike correction integral {integral} disagrees with series form {series}")]
    SeriesMismatch { integral: f64, series: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("{discarded} of {trials} Monte Carlo trials were discarded")]
    TooManyDiscarded { discarded: usize, trials: usize },
}

impl Error {
    /// Failures caused by the numerics rather than by the caller's input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Analyticity { .. }
                | Error::NonConvergence { .. }
                | Error::SeriesMismatch { .. }
                | Error::Numerical(_)
                | Error::TooManyDiscarded { .. }
        )
    }
}

pub(crate) fn ensure(cond: bool, name: &'static str, value: f64, reason: &'static str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, value, reason })
    }
}

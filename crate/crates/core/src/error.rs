use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Evaluation on a pole: of a gamma function, or of a spectral or matching
    /// expression built from one. Carries the offending argument.
    #[error("pole at {0}")]
    Pole(f64),

    #[error("argument out of domain: {0}")]
    Domain(String),

    /// Physical parameters outside the bound-state regime.
    #[error("physical regime violated: {0}")]
    Regime(String),

    /// |xi| is not strictly inside the singular sector (0, 1).
    #[error("|xi| = {abs_xi} is not inside the open interval (0, 1)")]
    Boundary { abs_xi: f64 },

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    /// Result too large for f64; the natural log of its magnitude is attached.
    #[error("overflow: |value| = exp({log_magnitude})")]
    Overflow { log_magnitude: f64 },

    #[error("no sign change in [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("no convergence: {0}")]
    Convergence(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

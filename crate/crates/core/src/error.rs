//! Error types shared across the crate.

use thiserror::Error;

/// Everything that can go wrong while building tilings, modes, or
/// distributions. Variants map onto CLI exit codes: configuration and
/// validation problems exit 2, numerical-domain refusals exit 3, cost
/// guards exit 4.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid configuration value or combination.
    #[error("config error: {0}")]
    Config(String),

    /// Tiles too close in space for their temporal extent: the supports
    /// are not pairwise spacelike.
    #[error("causal overlap: {0}")]
    CausalOverlap(String),

    /// The normalization constant E(f1, f2_raw) is numerically zero, so no
    /// rescaling can enforce E(f1, f2) = 1.
    #[error("degenerate mode: |E(f1, f2_raw)| = {0:e} is below 1e-12")]
    DegenerateMode(f64),

    /// Massless-limit 1+1D with a nonzero-mean spatial profile: the mode
    /// integral carries a logarithmic 1/omega divergence that this crate
    /// refuses to regulate silently.
    #[error("infrared divergence: {0}")]
    InfraredDivergence(String),

    /// A non-Gaussian state was passed to a Gaussian-only operation.
    #[error("not a Gaussian state: {0}")]
    NotGaussian(String),

    /// Covariance matrix too ill-conditioned to invert reliably.
    #[error("ill-conditioned covariance: condition number {0:e} exceeds 1e12")]
    IllConditioned(f64),

    /// Direct phase-space quadrature requested beyond the supported mode
    /// count.
    #[error("cost guard: {0}")]
    CostGuard(String),

    /// The characteristic function has not decayed below threshold at the
    /// requested integration cutoff.
    #[error("cutoff error: {0}")]
    Cutoff(String),

    /// Requested ordering parameter s lies outside the validity domain of
    /// the state.
    #[error("ordering domain error: {0}")]
    OrderingDomain(String),

    /// A distribution is too far from unit normalization for the requested
    /// quantity to be meaningful.
    #[error("normalization error: {0}")]
    Normalization(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serialization(String),
}

impl Error {
    /// Short machine-readable code for reports and the CLI error list.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Config(_) => "CONFIG",
            Error::CausalOverlap(_) => "CAUSAL_OVERLAP",
            Error::DegenerateMode(_) => "DEGENERATE_MODE",
            Error::InfraredDivergence(_) => "INFRARED_DIVERGENCE",
            Error::NotGaussian(_) => "NOT_GAUSSIAN",
            Error::IllConditioned(_) => "ILL_CONDITIONED",
            Error::CostGuard(_) => "COST_GUARD",
            Error::Cutoff(_) => "CUTOFF",
            Error::OrderingDomain(_) => "ORDERING_DOMAIN",
            Error::Normalization(_) => "NORMALIZATION",
            Error::Io(_) => "IO",
            Error::Serialization(_) => "SERIALIZATION",
        }
    }

    /// CLI exit code for this error class: 2 config/validation, 3 numerical
    /// domain, 4 cost guard.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::CausalOverlap(_) => 2,
            Error::CostGuard(_) => 4,
            Error::Io(_) | Error::Serialization(_) => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

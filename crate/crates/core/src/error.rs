use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is not Hermitian (max asymmetry {asymmetry:e}, tolerance {tolerance:e})")]
    NonHermitian { asymmetry: f64, tolerance: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("state vector is zero and cannot be normalized")]
    ZeroState,

    #[error("state is not normalized (norm² = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("time grid violates the sampling rule: spacing {spacing_s:e} s exceeds {limit_s:e} s")]
    UnderSampled { spacing_s: f64, limit_s: f64 },

    #[error("beat coefficient is undefined: c3²c4² + c1²c2² vanishes")]
    UndefinedBeta,

    #[error("least-squares fit is degenerate: {0}")]
    DegenerateFit(String),

    #[error("slow gap E4 - E3 is zero, timescale is infinite")]
    InfiniteTimescale,

    #[error("unknown {kind} '{name}' (valid: {valid})")]
    Lookup {
        kind: &'static str,
        name: String,
        valid: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::NonHermitian { .. } => "non_hermitian",
            Error::NoConvergence { .. } => "no_convergence",
            Error::ZeroState => "zero_state",
            Error::NotNormalized { .. } => "not_normalized",
            Error::UnderSampled { .. } => "under_sampled",
            Error::UndefinedBeta => "undefined_beta",
            Error::DegenerateFit(_) => "degenerate_fit",
            Error::InfiniteTimescale => "infinite_timescale",
            Error::Lookup { .. } => "lookup",
        }
    }

    /// True for errors caused by what the caller asked for rather than by the
    /// numerics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_) | Error::ZeroState | Error::NotNormalized { .. } | Error::Lookup { .. }
        )
    }
}

use thiserror::Error;

/// Error type shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An input violated a domain constraint (negative temperature, angle out
    /// of range, non-positive cutoff, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature did not reach the requested tolerance.
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    /// Finite differencing detected a non-smooth or noisy integrand.
    #[error("derivative estimate unreliable: {0}")]
    NoisyFunction(String),

    /// The ODE integrator ran out of steps or the step size underflowed.
    #[error("ODE integration failed: {0}")]
    Ode(String),

    /// The symmetric logarithmic derivative is ill-posed on a rank-deficient
    /// state (a null-space component of the derivative has no preimage).
    #[error("ill-posed SLD: {0}")]
    RankDeficientSld(String),

    /// A Fisher matrix was numerically singular (condition number too large).
    #[error("singular Fisher matrix: {0}")]
    SingularMatrix(String),

    /// A projective outcome has vanishing probability but a non-vanishing
    /// probability derivative, so its Fisher term diverges.
    #[error("degenerate measurement outcome: {0}")]
    DegenerateOutcome(String),

    /// Bloch-vector family inconsistent with a pure state: |w| = 1 but the
    /// derivative is not tangent to the sphere.
    #[error("inconsistent pure-state family: {0}")]
    SingularBranch(String),

    /// A time series does not span enough decades past the relaxation time.
    #[error("insufficient time span: {0}")]
    InsufficientSpan(String),

    /// Argmax refinement was handed a bracket without an interior maximum.
    #[error("invalid bracket: {0}")]
    InvalidBracket(String),

    /// Unknown figure preset id.
    #[error("unknown preset '{id}'; available: {available}")]
    UnknownPreset { id: String, available: String },

    /// Configuration or command-line parse failure.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// One or more parameters violate their invariants. Each entry names the
    /// offending field.
    #[error("invalid parameters: {}", .0.join("; "))]
    InvalidParameters(Vec<String>),

    #[error("propagation time must be nonnegative, got {0} s")]
    NegativeTime(f64),

    #[error("drift matrix is unstable (spectral abscissa {abscissa:e} rad/s)")]
    Unstable { abscissa: f64 },

    /// `f11 + f22 - 2` vanishes: the field carries no photons to subtract.
    #[error("photon subtraction from the vacuum field (f11 + f22 - 2 = {photon_term:e})")]
    VacuumField { photon_term: f64 },

    #[error("degenerate mechanical block (4 m11 m22 - (m12 + m21)^2 = {det:e})")]
    DegenerateMechanicalBlock { det: f64 },

    /// Closed-form and quadrature overlaps disagree; signals a coefficient bug.
    #[error("overlap self-check failed: closed form {closed_form}, quadrature {quadrature}")]
    QuadratureDisagreement { closed_form: f64, quadrature: f64 },

    #[error("{what} = {value} is outside [0, 1] beyond the clamping tolerance")]
    ProbabilityOutOfRange { what: &'static str, value: f64 },

    #[error("squeezing must be positive, got {0}")]
    NonPositiveSqueezing(f64),

    #[error("time grid is empty")]
    EmptyGrid,

    #[error("covariance matrix is not a physical Gaussian state: {0}")]
    Unphysical(String),
}

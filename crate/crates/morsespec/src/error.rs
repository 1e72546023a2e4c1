//! Error taxonomy shared by every module in the crate.
//!
//! All fallible public operations return [`Result`]. The variants are
//! deliberately coarse: callers branch on *kind* (pole vs. convergence vs.
//! domain), while the payload strings carry the diagnostic detail.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in evaluation, integration, or scanning.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Evaluation requested exactly at (or numerically indistinguishable
    /// from) a pole of the function, e.g. the gamma function at a
    /// non-positive integer, or an m-function evaluated on an eigenvalue.
    #[error("pole encountered: {0}")]
    Pole(String),

    /// An infinite series or iterative refinement failed to reach the
    /// requested tolerance within its term/iteration budget.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// Catastrophic cancellation consumed too many of the working digits
    /// for the result to be trustworthy at the configured precision.
    #[error("precision loss: {0}")]
    PrecisionLoss(String),

    /// Input outside the supported domain (non-positive `x`, non-finite
    /// parameters, malformed configuration, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The adaptive ODE integrator drove its step size below the minimum
    /// trusted value.
    #[error("stiffness: {0}")]
    Stiffness(String),

    /// Finite-difference eigenvalues moved by more than the advertised
    /// tolerance when the truncation radius was enlarged, so the reported
    /// values are not converged in the domain size.
    #[error("truncation not converged: {0}")]
    Truncation(String),

    /// A scan (zero search, eigenvalue search) exhausted its range or
    /// budget before finding the requested number of objects.
    #[error("scan exhausted: {0}")]
    ScanExhausted(String),

    /// A strict-monotonicity assertion over a parameter panel failed.
    #[error("monotonicity violation: {0}")]
    Monotonicity(String),

    /// Pole/zero positions of the m-function failed to match the
    /// independently computed eigenvalue lists.
    #[error("correspondence violation: {0}")]
    Correspondence(String),

    /// A Hermite–Biehler inequality |E(z̄)| < |E(z)| failed at a sample.
    #[error("Hermite-Biehler violation: {0}")]
    HermiteBiehler(String),

    /// Zeros of the A and B components failed to strictly interlace.
    #[error("interlacing violation: {0}")]
    Interlacing(String),
}

impl Error {
    /// Short machine-readable kind tag (used by the CLI for diagnostics).
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Pole(_) => "pole",
            Error::Convergence(_) => "convergence",
            Error::PrecisionLoss(_) => "precision-loss",
            Error::Domain(_) => "domain",
            Error::Stiffness(_) => "stiffness",
            Error::Truncation(_) => "truncation",
            Error::ScanExhausted(_) => "scan-exhausted",
            Error::Monotonicity(_) => "monotonicity",
            Error::Correspondence(_) => "correspondence",
            Error::HermiteBiehler(_) => "hermite-biehler",
            Error::Interlacing(_) => "interlacing",
        }
    }
}

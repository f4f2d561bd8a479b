use thiserror::Error;

/// Error type shared by all evaluation routines.
///
/// Every public function returns explicit errors instead of NaN or
/// infinity; a non-finite intermediate is always converted into one of
/// these variants before it can escape.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the function's real domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation at (or within 1e-12 of) a pole.
    #[error("pole error: {0}")]
    Pole(String),

    /// A series failed to meet its tolerance within the term cap.
    #[error("convergence error: {0}")]
    Convergence(String),

    /// Index combination the implementation rejects.
    #[error("unsupported index: {0}")]
    UnsupportedIndex(String),

    /// A recurrence step would divide by a vanishing constant.
    #[error("singular ladder step: {0}")]
    SingularLadder(String),

    /// Requested index shifts exceed the stability budget.
    #[error("stability budget exceeded: {0}")]
    Stability(String),

    /// Degree reflection with a vanishing solving coefficient.
    #[error("degenerate reflection: {0}")]
    DegenerateReflection(String),

    /// Identity parameter at which a constant multiplier or gamma
    /// factor is singular.
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),

    /// Curve without the requested data (no implicit polynomial).
    #[error("unsupported curve: {0}")]
    UnsupportedCurve(String),

    /// Internal self-check failed; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Internal(format!("{what} is not finite ({v})")))
    }
}

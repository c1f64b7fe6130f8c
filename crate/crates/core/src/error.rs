use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} out of domain: expected {expected}, got {value}")]
    Domain {
        name: &'static str,
        expected: &'static str,
        value: f64,
    },
    #[error("root bracket failure for {0}")]
    Bracket(&'static str),
    #[error("integrator step budget exhausted: {steps} steps, reached t = {t}")]
    StepBudget { steps: usize, t: f64 },
    #[error("quadrature panel budget exhausted: {0} panels")]
    PanelBudget(usize),
    #[error("cost guard: {0}")]
    CostGuard(String),
    #[error("non-finite integrand sample at x = {0}")]
    NonFinite(f64),
    #[error("tail integral did not converge after {0} doublings")]
    TailDivergent(usize),
    #[error("rate fit: {0}")]
    Fit(String),
    #[error("data selector: {0}")]
    Selector(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(name: &'static str, expected: &'static str, value: f64) -> Error {
    Error::Domain {
        name,
        expected,
        value,
    }
}

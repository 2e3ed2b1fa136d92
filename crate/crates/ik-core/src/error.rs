use thiserror::Error;

/// Errors produced by the solver layers.
#[derive(Error, Debug)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("degenerate sampling: {0}")]
    DegenerateSampling(String),

    #[error("model-order mismatch: fit residual {residual:e} exceeds tolerance {tol:e}")]
    ModelOrderMismatch { residual: f64, tol: f64 },

    #[error("size cap: chain length {n} exceeds dense-work cap {cap}")]
    SizeCap { n: usize, cap: usize },

    #[error("explicit form valid only at theta=0")]
    InhomogeneousHamiltonian,

    #[error("singular normalization: |t(0)| scalar below threshold")]
    SingularNormalization,

    #[error("pairing violation: {0}")]
    PairingViolation(String),

    #[error("pole at zero: z[{index}] sits on a pole of the energy kernel")]
    PoleAtZero { index: usize },

    #[error("Newton solve did not converge: residual {residual:e} after {iterations} iterations")]
    NonConvergence { residual: f64, iterations: usize },

    #[error("degenerate configuration: Jacobian singular at iteration {0}")]
    DegenerateConfiguration(usize),

    #[error("no boundary excitation in this channel: chi = {chi} >= 3 eta = {three_eta}")]
    NoBoundaryExcitation { chi: f64, three_eta: f64 },

    #[error("divergent series: {0}")]
    DivergentSeries(String),

    #[error("linear algebra backend error: {0}")]
    Linalg(String),
}

impl From<ndarray_linalg::error::LinalgError> for Error {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        Error::Linalg(e.to_string())
    }
}

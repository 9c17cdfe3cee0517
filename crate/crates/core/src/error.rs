use thiserror::Error;

/// Errors raised by the numerical kernels and the physics modules built on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(
        "adaptive quadrature did not converge after {subdivisions} subdivisions \
         (estimate {estimate:e}, achieved error {error_estimate:e})"
    )]
    QuadratureNonConvergence {
        estimate: f64,
        error_estimate: f64,
        subdivisions: usize,
    },

    #[error("no sign change in bracket [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("root finder exceeded {iterations} iterations (bracket width {width:e})")]
    RootMaxIterations { iterations: usize, width: f64 },

    #[error("symmetric eigensolver did not converge for eigenvalue {index}")]
    EigenNonConvergence { index: usize },

    #[error("requested {requested} eigenpairs from a {dimension}x{dimension} matrix")]
    TooManyEigenpairs { requested: usize, dimension: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("Hamiltonian assembly is not symmetric (residual {0:e}); raise the quadrature order")]
    QuadratureOrderInsufficient(f64),

    #[error("WKB estimate inapplicable: {0}")]
    WkbInapplicable(String),

    #[error("degenerate barrier: {0}")]
    DegenerateBarrier(String),

    #[error(
        "target width {target} outside the attainable range [{w_min}, {w_max}] \
         at deltaV/E_u = {delta_v}"
    )]
    WidthOutOfRange {
        target: f64,
        delta_v: f64,
        w_min: f64,
        w_max: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

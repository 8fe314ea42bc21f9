use thiserror::Error;

/// Errors raised by the entropy-diagram toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("bad dimension: {0}")]
    BadDimension(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not unitary (defect {0:.3e})")]
    NotUnitary(f64),

    #[error("eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),

    #[error("invalid Rényi order {0} (must be >= 1/2)")]
    BadOrder(f64),

    #[error("Rényi order {0} not supported here")]
    UnsupportedOrder(f64),

    #[error("orders ({0}, {1}) do not satisfy 1/alpha + 1/beta = 2")]
    NotDualPair(f64, f64),

    #[error("boundary order pair ({0}, {1}) is excluded; use the boundary deficit instead")]
    BoundaryOrder(f64, f64),

    #[error("distribution touches the simplex boundary (p[{index}] = {value:.3e})")]
    BoundaryDistribution { index: usize, value: f64 },

    #[error("invalid probability distribution: {0}")]
    BadDistribution(String),

    #[error("entry ({row}, {col}) has modulus below 1e-12")]
    ZeroEntry { row: usize, col: usize },

    #[error("unknown built-in matrix `{0}`")]
    UnknownName(String),

    #[error("invalid group element {0:?}")]
    BadElement(Vec<usize>),

    #[error("element set is not a subgroup")]
    NotSubgroup,

    #[error("problem too large: {0}")]
    TooLarge(String),

    #[error("empty input")]
    EmptyInput,

    #[error("curves have no overlapping h_x range")]
    NoOverlap,

    #[error("no restart met the entropy constraint (best violation {0:.3e})")]
    Infeasible(f64),

    #[error("search for a dominating pure state failed (best excess {0:.3e})")]
    SearchFailed(f64),

    #[error("invalid state: {0}")]
    BadState(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for failures of a numerical routine, as opposed to invalid input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence(_) | Error::Infeasible(_) | Error::SearchFailed(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

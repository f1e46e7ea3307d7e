use crate::model::BandSide;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectrumError {
    #[error("z = {z} is inside the band [0, 2] or closer than {guard:e} to an edge")]
    InsideBand { z: f64, guard: f64 },
    #[error("{what} must be finite, got {value}")]
    NonFinite { what: &'static str, value: f64 },
    #[error("{what} must be nonzero")]
    ZeroCoupling { what: &'static str },
    #[error("quadrature needs at least {min} nodes, got {nodes}")]
    TooFewNodes { nodes: usize, min: usize },
    #[error("tolerance {tol:e} outside [{min:e}, {max:e}]")]
    ToleranceOutOfRange { tol: f64, min: f64, max: f64 },
    #[error("truncation size {n} is below the minimum {min}")]
    TruncationTooSmall { n: usize, min: usize },
    #[error("z = {z} is not an eigenvalue: scaled determinant residual {residual:e}")]
    NotAnEigenvalue { z: f64, residual: f64 },
    #[error("outside-band eigenvalues not converged to {tol:e} up to n = {n_max}")]
    NotConverged { tol: f64, n_max: usize },
    #[error("zero lies closer than {floor:e} to the {side} band edge")]
    NearThreshold { side: BandSide, floor: f64 },
}

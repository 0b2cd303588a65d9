use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("support function is not convex near theta = {theta:.6} (h + h'' = {value:.3e})")]
    NotConvex { theta: f64, value: f64 },
    #[error("quadrature did not reach tolerance {tol:e} (estimated error {estimate:e})")]
    QuadratureFailure { tol: f64, estimate: f64 },
    #[error("exact piecewise integration requires polygonal or point curves")]
    IncompatibleMethod,
    #[error("consistency check failed: {0}")]
    ConsistencyFailure(String),
    #[error("completion did not converge: width deviation {deviation:e} after {iterations} iterations")]
    ConvergenceFailure { deviation: f64, iterations: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("euler count mismatch: {vertices} partition vertices, expected {expected}")]
    EulerMismatch { vertices: usize, expected: usize },
    #[error("partition extension failed: {0}")]
    ExtensionFailure(String),
    #[error("polygon vertex {index} lies outside the body")]
    VerticesOutsideBody { index: usize },
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("degenerate instance: {0}")]
    DegenerateInstance(String),
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;

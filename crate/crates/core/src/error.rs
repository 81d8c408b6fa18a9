use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input")]
    Empty,
    #[error("non-finite component at index {index}")]
    NonFinite { index: usize },
    #[error("component {index} is negative ({value:e})")]
    RejectNegative { index: usize, value: f64 },
    #[error("components sum to {sum}, expected 1")]
    RejectSum { sum: f64 },
    #[error("cannot shrink from dimension {from} to {to}")]
    ShrinkForbidden { from: usize, to: usize },
    #[error("shape {shape:?} has {product} cells but the input has dimension {dim}")]
    ShapeMismatch {
        shape: Vec<usize>,
        product: usize,
        dim: usize,
    },
    #[error("invalid table shape {0:?}")]
    BadShape(Vec<usize>),
    #[error("axis {axis} is not valid for a table with {factors} factors")]
    BadAxis { axis: usize, factors: usize },
    #[error("axis subset {0:?} is not a supported reduction")]
    BadAxes(Vec<usize>),
    #[error("Tsallis index must be positive, got {0}")]
    BadQ(f64),
    #[error("expected dimension {expected}, got {actual}")]
    DimMismatch { expected: usize, actual: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },
    #[error("matrix is not positive semidefinite (eigenvalue {min_eigenvalue:e})")]
    NotPSD { min_eigenvalue: f64 },
    #[error("trace is {trace}, expected 1")]
    BadTrace { trace: f64 },
    #[error("Hermitian eigensolver failed (residual {residual:e})")]
    EigenFailure { residual: f64 },
    #[error("matrix is not unitary (defect {defect:e})")]
    NotUnitary { defect: f64 },
    #[error("tomogram diagonal has imaginary part {imag:e}")]
    ComplexDiagonal { imag: f64 },
    #[error("angle out of range: theta={theta}, phi={phi}")]
    BadAngle { theta: f64, phi: f64 },
    #[error("unsupported dimension {0}")]
    BadDim(usize),
    #[error("chart for dimension {dim} needs {expected} parameters, got {actual}")]
    BadChart {
        dim: usize,
        expected: usize,
        actual: usize,
    },
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("form has vertical index {index}; the horizontal star accepts indices 0..=3 only")]
    NotHorizontal { index: usize },

    #[error("frame index {0} out of range")]
    IndexOutOfRange(usize),

    #[error("expected {expected} endomorphisms for a degree-{expected} form, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("expected a form of degree {expected}, got degree {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("frame change is not a rotation: {0}")]
    NotRotation(String),

    #[error("{tensor} component {indices:?} violates skew symmetry")]
    SymmetryViolation {
        tensor: &'static str,
        indices: Vec<usize>,
    },

    #[error("torsion is not of anti-Z type")]
    NotAntiZ,

    #[error("(dphi, d*phi) is not realizable as a gwistor derivative pair: {0}")]
    NotRealizable(String),

    #[error("singular linear system")]
    Singular,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("chart is degenerate at this point: {0}")]
    ChartDegenerate(String),

    #[error("finite-difference step {0} is too small")]
    StepUnderflow(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

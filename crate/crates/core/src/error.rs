use thiserror::Error;

use crate::linalg::UniPoly;
use crate::spectral::Cap;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("missing image for variable `{0}`")]
    MissingImage(String),
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("scalar `{0}` has a formal weight part; a rational value is required")]
    UnsupportedScalar(String),
    #[error("{0} cap exceeded before the iterates closed")]
    CapExceeded(Cap),
    #[error("not algebraic up to caps ({0} cap hit)")]
    NotAlgebraicUpToCaps(Cap),
    #[error("characteristic polynomial does not split over the rationals; residual factor {0}")]
    NonRationalSpectrum(UniPoly),
    #[error("operation requires a diagonal derivation")]
    NotDiagonal,
    #[error("the zero element lies in every eigenspace and has no decomposition")]
    ZeroElement,
    #[error("group closure exceeds {0} elements")]
    GroupTooLarge(usize),
    #[error("generator {0} is not invertible")]
    NonInvertibleGenerator(usize),
    #[error("polynomial is not invariant under group element {0}")]
    NotInvariant(usize),
}

impl Error {
    /// Stable kebab-case identifier, used as a machine-readable prefix.
    pub fn code(&self) -> &'static str {
        match self {
            Error::RingMismatch { .. } => "ring-mismatch",
            Error::UnknownVariable(_) => "unknown-variable",
            Error::MissingImage(_) => "missing-image",
            Error::NonSquare { .. } => "non-square",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::UnsupportedScalar(_) => "unsupported-scalar",
            Error::CapExceeded(_) => "cap-exceeded",
            Error::NotAlgebraicUpToCaps(_) => "not-algebraic-up-to-caps",
            Error::NonRationalSpectrum(_) => "non-rational-spectrum",
            Error::NotDiagonal => "not-diagonal",
            Error::ZeroElement => "zero-element",
            Error::GroupTooLarge(_) => "group-too-large",
            Error::NonInvertibleGenerator(_) => "non-invertible-generator",
            Error::NotInvariant(_) => "not-invariant",
        }
    }
}

use thiserror::Error;

use crate::quat::Sphere;

/// Errors raised by the algebra and analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("the zero quaternion has no inverse")]
    ZeroInverse,
    #[error("imaginary units are not orthogonal (inner product {0:.3e})")]
    NotOrthogonal(f64),
    #[error("quaternion is not an imaginary unit (deviation {0:.3e})")]
    NotImaginaryUnit(f64),
    #[error("point does not lie on the slice of the given unit (deviation {0:.3e})")]
    OffSlice(f64),
    #[error("negative powers cannot be evaluated at 0")]
    PoleAtZero,
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("not divisible (relative remainder {0:.3e})")]
    NotDivisible(f64),
    #[error("evaluation on the singular sphere {0}")]
    PoleEvaluation(Sphere),
    #[error("numerator is identically zero, no inverse exists")]
    NotInvertible,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("root finder failed to converge on a degree {0} polynomial")]
    RootFinder(usize),
    #[error("symmetrization has imaginary residue {0:.3e}")]
    ImaginaryResidue(f64),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Stable machine-readable identifier for the error.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroInverse => "zero_inverse",
            Error::NotOrthogonal(_) => "not_orthogonal",
            Error::NotImaginaryUnit(_) => "not_imaginary_unit",
            Error::OffSlice(_) => "off_slice",
            Error::PoleAtZero => "pole_at_zero",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::NotDivisible(_) => "not_divisible",
            Error::PoleEvaluation(_) => "pole_evaluation",
            Error::NotInvertible => "not_invertible",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::RootFinder(_) => "root_finder",
            Error::ImaginaryResidue(_) => "imaginary_residue",
            Error::Inconsistent(_) => "inconsistent",
        }
    }

    /// True for failures of an internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::ImaginaryResidue(_) | Error::Inconsistent(_) | Error::RootFinder(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

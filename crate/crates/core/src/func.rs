use crate::error::Result;
use crate::quat::Quaternion;
use crate::quotient::SemiRegular;
use crate::star::{QLaurentPoly, QPoly, RealPoly};

/// Anything that can be evaluated at a quaternion.
///
/// Sampling-based routines (Laurent extraction, the regularity check) take
/// their input through this trait, so closures work as well as the algebraic
/// types.
pub trait QFunction {
    fn evaluate(&self, q: Quaternion) -> Result<Quaternion>;
}

impl<F> QFunction for F
where
    F: Fn(Quaternion) -> Result<Quaternion>,
{
    fn evaluate(&self, q: Quaternion) -> Result<Quaternion> {
        self(q)
    }
}

impl QFunction for QPoly {
    fn evaluate(&self, q: Quaternion) -> Result<Quaternion> {
        Ok(self.eval(q))
    }
}

impl QFunction for RealPoly {
    fn evaluate(&self, q: Quaternion) -> Result<Quaternion> {
        Ok(self.eval_quat(q))
    }
}

impl QFunction for QLaurentPoly {
    fn evaluate(&self, q: Quaternion) -> Result<Quaternion> {
        self.eval(q)
    }
}

impl QFunction for SemiRegular {
    fn evaluate(&self, q: Quaternion) -> Result<Quaternion> {
        self.eval(q)
    }
}

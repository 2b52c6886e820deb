//! Quaternionic polynomials, their regular quotients and their singularities.
//!
//! Polynomials `f(q) = sum q^n a_n` carry their coefficients on the right and
//! multiply by the star product (convolution of coefficients). The crate
//! locates their zeros sphere by sphere, builds the skew field of regular
//! quotients over a real denominator, and analyses poles both algebraically
//! and from sampled slice Laurent coefficients.
//!
//! ```
//! use slicereg::{Quaternion, QPoly, zero_report};
//!
//! // (q - i) * (q - j) vanishes at i only
//! let f = QPoly::linear(Quaternion::I).star_mul(&QPoly::linear(Quaternion::J));
//! let report = zero_report(&f).unwrap();
//! assert_eq!(report.zeros.len(), 1);
//! assert_eq!(report.zeros[0].isolated(), 2);
//! ```

pub mod error;
pub mod func;
pub mod quat;
pub mod quotient;
pub mod sample;
pub mod singular;
pub mod star;
pub mod theorems;
pub mod zeros;

pub use error::{Error, Result};
pub use func::QFunction;
pub use quat::{perp_unit, sphere_of, split, unsplit, ImaginaryUnit, Quaternion, Sphere, Split};
pub use quotient::{
    eval_semiregular, eval_via_transform, from_pair, reciprocal, right_quotient, sr_inverse, sr_mul,
    transform_inverse_check, transform_t, SemiRegular,
};
pub use singular::{
    classify_singularity, default_radius, laurent_extract, pole_order_at, pole_report, regularity_residual,
    LaurentExpansion, PoleReport, Singularity, SingularityClass, SpherePoles,
};
pub use star::{QLaurentPoly, QPoly, RealPoly};
pub use theorems::{check_theorems, check_theorems_with, corrupted_star_mul, TheoremRow};
pub use zeros::{factor_at_sphere, sphere_zero_locate, zero_report, Located, SphereZero, ZeroReport};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/quaternions.md")]
    mod quaternions {}
    #[doc = include_str!("../../../book/src/star-product.md")]
    mod star_product {}
    #[doc = include_str!("../../../book/src/zeros.md")]
    mod zeros {}
    #[doc = include_str!("../../../book/src/quotients.md")]
    mod quotients {}
    #[doc = include_str!("../../../book/src/singularities.md")]
    mod singularities {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

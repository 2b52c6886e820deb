//! Coefficient-level algebra of quaternionic polynomials.
//!
//! Polynomials carry their coefficients on the right, `f(q) = sum q^n a_n`.
//! The star product is the convolution of coefficient sequences; it is
//! associative and distributive, and real polynomials are central in it.

mod laurent;
mod qpoly;
mod real;

pub use laurent::{laurent_radii, QLaurentPoly};
pub use qpoly::{
    classical_multiplicity, div_real_quadratic, product_eval_transform, regular_conj, star_div_linear, star_mul,
    star_pow, symmetrize, QPoly,
};
pub use real::RealPoly;

/// Relative tolerance for exact divisions on user-supplied data.
pub const DIV_TOL: f64 = 1e-9;

/// Bound on the imaginary residue of a symmetrization, relative to `|f|^2`.
pub const REALITY_TOL: f64 = 1e-12;

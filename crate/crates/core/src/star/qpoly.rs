use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::quat::{Quaternion, Sphere};

use super::{RealPoly, DIV_TOL, REALITY_TOL};

/// A polynomial `sum q^n a_n` with quaternionic coefficients on the right.
///
/// `*` on references is the star (regular) product, i.e. the convolution
/// `c_n = sum_k a_k b_{n-k}` of coefficient sequences.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct QPoly {
    coeffs: Vec<Quaternion>,
}

#[derive(Deserialize)]
struct RawQPoly {
    coeffs: Vec<Quaternion>,
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawQPoly::deserialize(d)?;
        if raw.coeffs.iter().any(|c| !c.is_finite()) {
            return Err(serde::de::Error::custom("coefficients must be finite"));
        }
        Ok(QPoly::new(raw.coeffs))
    }
}

impl QPoly {
    /// Builds a polynomial from ascending coefficients, dropping trailing zeros.
    pub fn new(mut coeffs: Vec<Quaternion>) -> Self {
        while coeffs.last().is_some_and(Quaternion::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Quaternion::ONE)
    }

    pub fn constant(c: Quaternion) -> Self {
        Self::new(vec![c])
    }

    /// `q - p`.
    pub fn linear(p: Quaternion) -> Self {
        Self::new(vec![Quaternion::ZERO - p, Quaternion::ONE])
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Quaternion {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sum of coefficient norms.
    pub fn norm1(&self) -> f64 {
        self.coeffs.iter().map(Quaternion::norm).sum()
    }

    /// `sum |a_n| r^n`, a bound for `|f(q)|` on `|q| = r`.
    pub fn eval_scale(&self, r: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    /// `f(q) = sum q^n a_n`, by Horner's rule with left multiplication by `q`.
    pub fn eval(&self, q: Quaternion) -> Quaternion {
        self.coeffs.iter().rev().fold(Quaternion::ZERO, |acc, &c| q * acc + c)
    }

    /// True when `|f(p)|` is below `tol` relative to [`QPoly::eval_scale`].
    pub fn vanishes_at(&self, p: Quaternion, tol: f64) -> bool {
        self.eval(p).norm() <= tol * self.eval_scale(p.norm().max(1.0))
    }

    pub fn star_mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Quaternion::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (k, &a) in self.coeffs.iter().enumerate() {
            for (m, &b) in other.coeffs.iter().enumerate() {
                out[k + m] += a * b;
            }
        }
        Self::new(out)
    }

    /// `f^{*n}`, with `f^{*0} = 1`.
    pub fn star_pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.star_mul(self))
    }

    /// Regular conjugate: conjugate every coefficient.
    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(Quaternion::conj).collect())
    }

    /// Symmetrization `f * f^c`, which has real coefficients.
    pub fn symmetrize(&self) -> Result<RealPoly> {
        let s = self.star_mul(&self.conj());
        let scale = self.norm1().powi(2).max(f64::MIN_POSITIVE);
        let residue = s.coeffs.iter().map(|c| c.im().norm()).fold(0.0, f64::max);
        if residue > REALITY_TOL * scale.max(1.0) {
            return Err(Error::ImaginaryResidue(residue));
        }
        Ok(RealPoly::new(s.coeffs.iter().map(|c| c.w).collect()))
    }

    /// Multiplication by a real polynomial (star and pointwise agree).
    pub fn mul_real(&self, r: &RealPoly) -> Self {
        self.star_mul(&r.to_qpoly())
    }

    pub fn scale(&self, r: f64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * r).collect())
    }

    /// Left multiplication of every coefficient by `c`.
    pub fn left_mul(&self, c: Quaternion) -> Self {
        Self::new(self.coeffs.iter().map(|&a| c * a).collect())
    }

    /// Solves `f = (q - p) * g` for `g`.
    ///
    /// The recurrence `b_{d-1} = c_d`, `b_{n-1} = c_n + p b_n` is run from the
    /// top degree down; what is left over in degree 0 equals `f(p)` and must
    /// vanish within `tol` relative to the evaluation scale.
    pub fn div_linear(&self, p: Quaternion, tol: f64) -> Result<Self> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        if d == 0 {
            return Err(Error::NotDivisible(1.0));
        }
        let mut b = vec![Quaternion::ZERO; d];
        b[d - 1] = self.coeffs[d];
        for n in (1..d).rev() {
            b[n - 1] = self.coeffs[n] + p * b[n];
        }
        let residual = (self.coeffs[0] + p * b[0]).norm();
        let scale = self.eval_scale(p.norm().max(1.0));
        let rel = if scale > 0.0 { residual / scale } else { 0.0 };
        if rel > tol {
            return Err(Error::NotDivisible(rel));
        }
        Ok(Self::new(b))
    }

    /// Ordinary division by a real polynomial, which is central.
    pub fn div_real(&self, div: &RealPoly, tol: f64) -> Result<Self> {
        let (quot, rem) = self.div_rem_real(div)?;
        let scale = self.norm1().max(quot.norm1() * div.norm1());
        let rel = if scale > 0.0 { rem.norm1() / scale } else { 0.0 };
        if rel > tol {
            return Err(Error::NotDivisible(rel));
        }
        Ok(quot)
    }

    pub fn div_rem_real(&self, div: &RealPoly) -> Result<(Self, Self)> {
        let d = div.degree().ok_or(Error::ZeroPolynomial)?;
        let lead = div.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Quaternion::ZERO; rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = rem[k + d] / lead;
            quot[k] = c;
            for (i, &dc) in div.coeffs().iter().enumerate() {
                rem[k + i] -= c * dc;
            }
            rem[k + d] = Quaternion::ZERO;
        }
        rem.truncate(d);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Division by the central factor of a sphere, `(q - x)^2 + y^2`.
    pub fn div_central(&self, sphere: Sphere, tol: f64) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        self.div_real(&RealPoly::central(sphere), tol)
    }

    /// Largest `n` with `f = (q - p)^{*n} * g`.
    pub fn classical_multiplicity(&self, p: Quaternion, tol: f64) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut g = self.clone();
        let mut n = 0;
        while g.degree().unwrap_or(0) >= 1 && g.vanishes_at(p, tol) {
            g = g.div_linear(p, f64::INFINITY)?;
            n += 1;
        }
        Ok(n)
    }

    /// Maximum coefficient distance to another polynomial.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }
}

impl From<Vec<Quaternion>> for QPoly {
    fn from(v: Vec<Quaternion>) -> Self {
        Self::new(v)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        self.star_mul(o)
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, o: QPoly) -> QPoly {
        self.star_mul(&o)
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

/// Star product of two polynomials.
pub fn star_mul(f: &QPoly, g: &QPoly) -> QPoly {
    f.star_mul(g)
}

/// Regular conjugate `f^c`.
pub fn regular_conj(f: &QPoly) -> QPoly {
    f.conj()
}

/// Symmetrization `f^s = f * f^c`.
pub fn symmetrize(f: &QPoly) -> Result<RealPoly> {
    f.symmetrize()
}

pub fn star_pow(f: &QPoly, n: u32) -> QPoly {
    f.star_pow(n)
}

/// `g` with `(q - p) * g = f`, requiring `f(p) = 0`.
pub fn star_div_linear(f: &QPoly, p: Quaternion) -> Result<QPoly> {
    f.div_linear(p, DIV_TOL)
}

/// Quotient of `f` by `(q - x)^2 + y^2`.
pub fn div_real_quadratic(f: &QPoly, sphere: Sphere) -> Result<QPoly> {
    f.div_central(sphere, DIV_TOL)
}

pub fn classical_multiplicity(f: &QPoly, p: Quaternion) -> Result<usize> {
    f.classical_multiplicity(p, DIV_TOL)
}

/// Evaluates `f * g` at `p` through the zero-of-product formula
/// `f(p) g(f(p)^{-1} p f(p))`, which is 0 when `f(p) = 0`.
pub fn product_eval_transform(f: &QPoly, g: &QPoly, p: Quaternion) -> Quaternion {
    let fp = f.eval(p);
    match p.conjugate_by(&fp) {
        Ok(t) => fp * g.eval(t),
        Err(_) => Quaternion::ZERO,
    }
}

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::{Quaternion, Sphere};

use super::QPoly;

/// A polynomial with real coefficients, ascending by exponent.
///
/// Real polynomials are central for the star product, and on them the star
/// product coincides with the ordinary pointwise one.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RealPoly {
    coeffs: Vec<f64>,
}

impl RealPoly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1.0] }
    }

    /// `q - x`.
    pub fn linear(x: f64) -> Self {
        Self::new(vec![-x, 1.0])
    }

    /// `(q - x)^2 + y^2`.
    pub fn central(sphere: Sphere) -> Self {
        Self::new(sphere.central_quadratic().to_vec())
    }

    /// The generator of the central ideal of a sphere: `q - x` for a real
    /// point, `(q - x)^2 + y^2` otherwise.
    pub fn sphere_factor(sphere: Sphere) -> Self {
        if sphere.is_real() {
            Self::linear(sphere.x)
        } else {
            Self::central(sphere)
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> f64 {
        self.coeffs.get(n).copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    pub fn norm1(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn eval_quat(&self, q: Quaternion) -> Quaternion {
        self.coeffs
            .iter()
            .rev()
            .fold(Quaternion::ZERO, |acc, &c| q * acc + Quaternion::real(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, &c)| n as f64 * c)
                .collect(),
        )
    }

    pub fn scale(&self, r: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * r).collect())
    }

    /// Rescales so that the leading coefficient is 1.
    pub fn monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.scale(1.0 / self.leading()))
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division `self = div * quot + rem` with `deg rem < deg div`.
    pub fn div_rem(&self, div: &Self) -> Result<(Self, Self)> {
        let d = div.degree().ok_or(Error::ZeroPolynomial)?;
        let lead = div.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![0.0; rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = rem[k + d] / lead;
            quot[k] = c;
            for (i, &dc) in div.coeffs.iter().enumerate() {
                rem[k + i] -= c * dc;
            }
            rem[k + d] = 0.0;
        }
        rem.truncate(d);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact division, failing when the relative remainder exceeds `tol`.
    pub fn div_exact(&self, div: &Self, tol: f64) -> Result<Self> {
        let (quot, rem) = self.div_rem(div)?;
        let scale = self.norm1().max(quot.norm1() * div.norm1());
        let rel = if scale > 0.0 { rem.norm1() / scale } else { 0.0 };
        if rel > tol {
            return Err(Error::NotDivisible(rel));
        }
        Ok(quot)
    }

    /// Number of times `factor` divides `self` within `tol`.
    pub fn multiplicity_of(&self, factor: &Self, tol: f64) -> usize {
        let mut cur = self.clone();
        let mut count = 0;
        while cur.degree().unwrap_or(0) >= factor.degree().unwrap_or(0).max(1) {
            match cur.div_exact(factor, tol) {
                Ok(q) => {
                    cur = q;
                    count += 1;
                }
                Err(_) => break,
            }
        }
        count
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|&c| Quaternion::real(c)).collect())
    }
}

impl From<Vec<f64>> for RealPoly {
    fn from(v: Vec<f64>) -> Self {
        Self::new(v)
    }
}

impl Mul for &RealPoly {
    type Output = RealPoly;
    fn mul(self, o: &RealPoly) -> RealPoly {
        if self.is_zero() || o.is_zero() {
            return RealPoly::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RealPoly::new(out)
    }
}

impl Add for &RealPoly {
    type Output = RealPoly;
    fn add(self, o: &RealPoly) -> RealPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RealPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &RealPoly {
    type Output = RealPoly;
    fn sub(self, o: &RealPoly) -> RealPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RealPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division() {
        // (q^2 + 1)(q - 3) + 2
        let f = RealPoly::new(vec![-1.0, 1.0, -3.0, 1.0]);
        let (quot, rem) = f.div_rem(&RealPoly::new(vec![1.0, 0.0, 1.0])).unwrap();
        assert_eq!(quot, RealPoly::new(vec![-3.0, 1.0]));
        assert_eq!(rem, RealPoly::new(vec![2.0]));
        assert!(f.div_exact(&RealPoly::central(Sphere::new(0.0, 1.0)), 1e-9).is_err());
    }

    #[test]
    fn multiplicity_counts_repeated_factors() {
        let d = RealPoly::central(Sphere::new(1.0, 2.0));
        let f = &d.pow(3) * &RealPoly::linear(0.5);
        assert_eq!(f.multiplicity_of(&d, 1e-9), 3);
        assert_eq!(f.multiplicity_of(&RealPoly::linear(0.5), 1e-9), 1);
    }

    #[test]
    fn quaternion_evaluation_stays_on_slice() {
        let f = RealPoly::new(vec![1.0, 0.0, 1.0]);
        let q = Quaternion::new(1.0, 0.0, 1.0, 0.0);
        assert_eq!(f.eval_quat(q), Quaternion::new(1.0, 0.0, 2.0, 0.0));
    }
}

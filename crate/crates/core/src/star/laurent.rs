use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::quat::Quaternion;

use super::QPoly;

/// A finite Laurent polynomial `sum_{n = min_deg}^{max_deg} q^n a_n`.
///
/// The star product extends to these by convolution over integer exponents.
/// That extension is forced by bilinearity for finite principal parts; it is
/// not defined here for series with infinitely many negative terms.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct QLaurentPoly {
    min_deg: i64,
    coeffs: Vec<Quaternion>,
}

#[derive(Deserialize)]
struct RawLaurent {
    #[serde(default)]
    min_deg: i64,
    coeffs: Vec<Quaternion>,
}

impl<'de> Deserialize<'de> for QLaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawLaurent::deserialize(d)?;
        if raw.coeffs.iter().any(|c| !c.is_finite()) {
            return Err(serde::de::Error::custom("coefficients must be finite"));
        }
        Ok(QLaurentPoly::new(raw.min_deg, raw.coeffs))
    }
}

impl QLaurentPoly {
    /// Builds the canonical form: no zero coefficient at either end.
    pub fn new(mut min_deg: i64, mut coeffs: Vec<Quaternion>) -> Self {
        while coeffs.last().is_some_and(Quaternion::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        coeffs.drain(..lead);
        min_deg += lead as i64;
        if coeffs.is_empty() {
            min_deg = 0;
        }
        Self { min_deg, coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The single term `q^n a`.
    pub fn monomial(n: i64, a: Quaternion) -> Self {
        Self::new(n, vec![a])
    }

    pub fn min_deg(&self) -> i64 {
        self.min_deg
    }

    /// `None` for the zero polynomial.
    pub fn max_deg(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.min_deg + self.coeffs.len() as i64 - 1)
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    pub fn coeff(&self, n: i64) -> Quaternion {
        let idx = n - self.min_deg;
        if idx < 0 {
            return Quaternion::ZERO;
        }
        self.coeffs.get(idx as usize).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The polynomial part, when there are no negative exponents.
    pub fn to_qpoly(&self) -> Option<QPoly> {
        if self.min_deg < 0 {
            return None;
        }
        let mut c = vec![Quaternion::ZERO; self.min_deg as usize];
        c.extend_from_slice(&self.coeffs);
        Some(QPoly::new(c))
    }

    /// `sum q^n a_n`; negative powers go through `q^{-1}`.
    pub fn eval(&self, q: Quaternion) -> Result<Quaternion> {
        let Some(max) = self.max_deg() else {
            return Ok(Quaternion::ZERO);
        };
        let mut total = Quaternion::ZERO;
        if max >= 0 {
            let start = self.min_deg.max(0);
            let pos = (start..=max)
                .rev()
                .fold(Quaternion::ZERO, |acc, n| q * acc + self.coeff(n));
            total += q.powi(start)? * pos;
        }
        if self.min_deg < 0 {
            let inv = q.inverse().map_err(|_| Error::PoleAtZero)?;
            let stop = max.min(-1);
            // sum_{m=-stop}^{-min} inv^m a_{-m}, by Horner in inv
            let neg = (-stop..=-self.min_deg)
                .rev()
                .fold(Quaternion::ZERO, |acc, m| inv * acc + self.coeff(-m));
            total += inv.powi(-stop)? * neg;
        }
        Ok(total)
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
        Self::new(self.min_deg + other.min_deg, out)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.min_deg, self.coeffs.iter().map(Quaternion::conj).collect())
    }
}

impl From<QPoly> for QLaurentPoly {
    fn from(p: QPoly) -> Self {
        Self::new(0, p.coeffs().to_vec())
    }
}

/// Root-test estimate of the convergence radii `(R1, R2)` of the Laurent
/// series with coefficients `coeff(n)`, using the tail `n in [N/2, N]`.
///
/// `R2` is `f64::INFINITY` when every tail coefficient of positive index
/// vanishes.
pub fn laurent_radii(coeff: impl Fn(i64) -> Quaternion, cutoff: usize) -> Result<(f64, f64)> {
    if cutoff < 8 {
        return Err(Error::InvalidArgument(format!(
            "cutoff {cutoff} is below the minimum of 8"
        )));
    }
    let n_max = cutoff as i64;
    let root = |n: i64, c: Quaternion| c.norm().powf(1.0 / n.unsigned_abs() as f64);
    let tail = n_max / 2..=n_max;
    let inner = tail.clone().map(|n| root(n, coeff(-n))).fold(0.0, f64::max);
    let outer = tail.map(|n| root(n, coeff(n))).fold(0.0, f64::max);
    let r2 = if outer == 0.0 { f64::INFINITY } else { 1.0 / outer };
    Ok((inner, r2))
}

#[cfg(test)]
mod tests {
    use super::*;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const ONE: Quaternion = Quaternion::ONE;

    #[test]
    fn canonical_form_strips_both_ends() {
        let z = Quaternion::ZERO;
        let f = QLaurentPoly::new(-3, vec![z, z, I, z, J, z]);
        assert_eq!(f.min_deg(), -1);
        assert_eq!(f.max_deg(), Some(1));
        assert_eq!(f.coeff(-1), I);
        assert_eq!(f.coeff(1), J);
        assert_eq!(QLaurentPoly::new(-2, vec![z]).min_deg(), 0);
    }

    #[test]
    fn eval_examples() {
        let f = QLaurentPoly::monomial(-1, ONE);
        assert_eq!(f.eval(J).unwrap(), -J);
        assert_eq!(f.eval(Quaternion::ZERO), Err(Error::PoleAtZero));
        // q^-2 i + q^3 j at q = 2
        let g = QLaurentPoly::new(
            -2,
            vec![
                I,
                Quaternion::ZERO,
                Quaternion::ZERO,
                Quaternion::ZERO,
                Quaternion::ZERO,
                J,
            ],
        );
        let v = g.eval(Quaternion::real(2.0)).unwrap();
        assert!(v.approx_eq(&(I * 0.25 + J * 8.0), 1e-15));
        // purely negative exponents
        let h = QLaurentPoly::new(-3, vec![ONE, ONE]);
        let v = h.eval(Quaternion::real(2.0)).unwrap();
        assert!(v.approx_eq(&Quaternion::real(0.125 + 0.25), 1e-15));
    }

    #[test]
    fn star_mul_shifts_exponents() {
        let f = QLaurentPoly::monomial(-1, I);
        let g = QLaurentPoly::new(0, vec![J, ONE]);
        let h = f.star_mul(&g);
        assert_eq!(h.min_deg(), -1);
        assert_eq!(h.coeff(-1), I * J);
        assert_eq!(h.coeff(0), I);
        assert_eq!(
            f.star_mul(&QLaurentPoly::monomial(1, ONE)).to_qpoly(),
            Some(QPoly::constant(I))
        );
    }

    #[test]
    fn radii_examples() {
        let geo = |n: i64| if n >= 0 { ONE } else { Quaternion::ZERO };
        assert_eq!(laurent_radii(geo, 16).unwrap(), (0.0, 1.0));

        let f = QLaurentPoly::new(-2, vec![ONE, I, J]);
        assert_eq!(laurent_radii(|n| f.coeff(n), 16).unwrap(), (0.0, f64::INFINITY));

        let mixed = |n: i64| {
            if n >= 0 {
                ONE * 2f64.powi(-(n as i32))
            } else {
                ONE * 3f64.powi(n as i32)
            }
        };
        let (r1, r2) = laurent_radii(mixed, 32).unwrap();
        assert!((r1 - 1.0 / 3.0).abs() <= 0.1 / 3.0);
        assert!((r2 - 2.0).abs() <= 0.2);

        assert!(laurent_radii(geo, 7).is_err());
    }

    #[test]
    fn json_defaults_min_deg() {
        let f: QLaurentPoly = serde_json::from_str(r#"{"coeffs":[[1,0,0,0]]}"#).unwrap();
        assert_eq!(f.min_deg(), 0);
        let g: QLaurentPoly = serde_json::from_str(r#"{"min_deg":-1,"coeffs":[[1,0,0,0]]}"#).unwrap();
        assert_eq!(
            serde_json::to_string(&g).unwrap(),
            r#"{"min_deg":-1,"coeffs":[[1.0,0.0,0.0,0.0]]}"#
        );
    }
}

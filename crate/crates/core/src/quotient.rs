//! Regular quotients and semiregular functions.
//!
//! The left regular quotient of `f` and `g` is `f^{-*} * g = (f^s)^{-1} (f^c * g)`.
//! Since `f^s` has real coefficients it is central, so every quotient can be
//! stored as a real denominator and a quaternionic numerator. Products and
//! inverses then reduce to polynomial products plus cancellation of shared
//! central factors.

use std::ops::{Add, Mul};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quat::{Quaternion, Sphere};
use crate::star::{QPoly, RealPoly};
use crate::zeros::real_roots_with_spheres;

/// Relative tolerance for cancelling a central factor.
pub const CANCEL_TOL: f64 = 1e-9;

/// Relative size of `|den(q)|` below which evaluation reports a pole.
pub const POLE_TOL: f64 = 4e-15;

/// The function `q -> den(q)^{-1} num(q)` with `den` real and monic.
///
/// In canonical form no sphere's central factor (`(q - x)^2 + y^2`, or `q - x`
/// for a real point) divides both `den` and `num`.
#[derive(Clone, Debug, PartialEq)]
pub struct SemiRegular {
    den: RealPoly,
    num: QPoly,
}

impl SemiRegular {
    /// Canonicalizes `den^{-1} num`.
    pub fn new(den: RealPoly, num: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let lead = den.leading();
        let mut out = Self {
            den: den.scale(1.0 / lead),
            num: num.scale(1.0 / lead),
        };
        out.cancel()?;
        Ok(out)
    }

    /// Wraps a polynomial as the quotient `1^{-1} f`.
    pub fn from_poly(f: QPoly) -> Self {
        Self {
            den: RealPoly::one(),
            num: f,
        }
    }

    pub fn one() -> Self {
        Self::from_poly(QPoly::one())
    }

    pub fn den(&self) -> &RealPoly {
        &self.den
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    /// The spheres on which `den` vanishes, with their multiplicity in `den`.
    pub fn singular_spheres(&self) -> Result<Vec<(Sphere, usize)>> {
        if self.den.degree() == Some(0) {
            return Ok(vec![]);
        }
        real_roots_with_spheres(&self.den)
    }

    fn cancel(&mut self) -> Result<()> {
        if self.den.degree() == Some(0) {
            return Ok(());
        }
        if self.num.is_zero() {
            self.den = RealPoly::one();
            return Ok(());
        }
        for (sphere, _) in real_roots_with_spheres(&self.den)? {
            let factor = RealPoly::sphere_factor(sphere);
            while let (Ok(d), Ok(n)) = (
                self.den.div_exact(&factor, CANCEL_TOL),
                self.num.div_real(&factor, CANCEL_TOL),
            ) {
                self.den = d;
                self.num = n;
            }
        }
        Ok(())
    }

    /// `den(q)^{-1} num(q)`.
    pub fn eval(&self, q: Quaternion) -> Result<Quaternion> {
        let d = self.den.eval_quat(q);
        let scale: f64 = self
            .den
            .coeffs()
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * q.norm().max(1.0) + c.abs());
        if d.norm() <= POLE_TOL * scale {
            return Err(Error::PoleEvaluation(q.sphere()));
        }
        Ok(d.inverse()? * self.num.eval(q))
    }

    /// Product in the skew field of quotients. Real denominators are central,
    /// so `(a^{-1} b)(c^{-1} d) = (ac)^{-1} (b * d)`.
    pub fn star_mul(&self, other: &Self) -> Result<Self> {
        Self::new(&self.den * &other.den, self.num.star_mul(&other.num))
    }

    /// Multiplicative inverse `(num^s)^{-1} (den num^c)`.
    pub fn inverse(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::NotInvertible);
        }
        Self::new(self.num.symmetrize()?, self.num.conj().mul_real(&self.den))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let num = &self.num.mul_real(&other.den) + &other.num.mul_real(&self.den);
        Self::new(&self.den * &other.den, num)
    }
}

impl Mul for &SemiRegular {
    type Output = Result<SemiRegular>;
    fn mul(self, o: &SemiRegular) -> Result<SemiRegular> {
        self.star_mul(o)
    }
}

impl Add for &SemiRegular {
    type Output = Result<SemiRegular>;
    fn add(self, o: &SemiRegular) -> Result<SemiRegular> {
        SemiRegular::add(self, o)
    }
}

impl From<QPoly> for SemiRegular {
    fn from(f: QPoly) -> Self {
        Self::from_poly(f)
    }
}

#[derive(Serialize, Deserialize)]
struct RawSemiRegular {
    den: QPoly,
    num: QPoly,
}

impl Serialize for SemiRegular {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawSemiRegular {
            den: self.den.to_qpoly(),
            num: self.num.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SemiRegular {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawSemiRegular::deserialize(d)?;
        if raw.den.coeffs().iter().any(|c| c.im().norm() != 0.0) {
            return Err(D::Error::custom("denominator must have real coefficients"));
        }
        let den = RealPoly::new(raw.den.coeffs().iter().map(|c| c.w).collect());
        SemiRegular::new(den, raw.num).map_err(D::Error::custom)
    }
}

/// The left regular quotient `f^{-*} * g`.
pub fn from_pair(f: &QPoly, g: &QPoly) -> Result<SemiRegular> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    SemiRegular::new(f.symmetrize()?, f.conj().star_mul(g))
}

/// The right regular quotient `g * f^{-*}`.
pub fn right_quotient(g: &QPoly, f: &QPoly) -> Result<SemiRegular> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    SemiRegular::new(f.symmetrize()?, g.star_mul(&f.conj()))
}

/// The regular reciprocal `f^{-*}`.
pub fn reciprocal(f: &QPoly) -> Result<SemiRegular> {
    from_pair(f, &QPoly::one())
}

pub fn eval_semiregular(h: &SemiRegular, q: Quaternion) -> Result<Quaternion> {
    h.eval(q)
}

fn check_off_singular(f: &QPoly, q: Quaternion) -> Result<()> {
    let s = f.symmetrize()?;
    let v = s.eval_quat(q).norm();
    let scale: f64 = s
        .coeffs()
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * q.norm().max(1.0) + c.abs());
    if v <= POLE_TOL * scale {
        return Err(Error::PoleEvaluation(q.sphere()));
    }
    Ok(())
}

/// `T_f(q) = f^c(q)^{-1} q f^c(q)`, defined off the zero set of `f^s`.
pub fn transform_t(f: &QPoly, q: Quaternion) -> Result<Quaternion> {
    check_off_singular(f, q)?;
    q.conjugate_by(&f.conj().eval(q))
}

/// `f(T)^{-1} g(T)` with `T = T_f(q)`, the second route to `f^{-*} * g (q)`.
pub fn eval_via_transform(f: &QPoly, g: &QPoly, q: Quaternion) -> Result<Quaternion> {
    let t = transform_t(f, q)?;
    Ok(f.eval(t).inverse()? * g.eval(t))
}

/// `T_{f^c}(T_f(q))`, which should give back `q`.
pub fn transform_inverse_check(f: &QPoly, q: Quaternion) -> Result<Quaternion> {
    transform_t(&f.conj(), transform_t(f, q)?)
}

pub fn sr_mul(a: &SemiRegular, b: &SemiRegular) -> Result<SemiRegular> {
    a.star_mul(b)
}

pub fn sr_inverse(a: &SemiRegular) -> Result<SemiRegular> {
    a.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;
    const ONE: Quaternion = Quaternion::ONE;
    const O: Quaternion = Quaternion::ZERO;

    fn q2p1() -> QPoly {
        QPoly::new(vec![ONE, O, ONE])
    }

    fn close_poly(a: &QPoly, b: &QPoly) -> bool {
        a.max_coeff_diff(b) <= 1e-12
    }

    #[test]
    fn from_pair_examples() {
        let h = reciprocal(&QPoly::linear(I)).unwrap();
        assert_eq!(h.den(), &RealPoly::new(vec![1.0, 0.0, 1.0]));
        assert_eq!(h.num(), &QPoly::linear(-I));

        let g = QPoly::new(vec![J, K]);
        let h = from_pair(&QPoly::one(), &g).unwrap();
        assert_eq!((h.den(), h.num()), (&RealPoly::one(), &g));

        let h = reciprocal(&q2p1()).unwrap();
        assert_eq!(h.den(), &RealPoly::new(vec![1.0, 0.0, 1.0]));
        assert!(close_poly(h.num(), &QPoly::one()));

        assert_eq!(from_pair(&QPoly::zero(), &g), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn eval_examples() {
        let h = reciprocal(&QPoly::linear(I)).unwrap();
        let v = h.eval(ONE + J).unwrap();
        assert!(v.approx_eq(&(Quaternion::new(3.0, 1.0, -1.0, 2.0) / 5.0), 1e-15));
        let v = h.eval(Quaternion::real(2.0)).unwrap();
        assert!(v.approx_eq(&(Quaternion::new(2.0, 1.0, 0.0, 0.0) / 5.0), 1e-15));
        assert_eq!(SemiRegular::one().eval(J).unwrap(), ONE);
        assert!(matches!(h.eval(J), Err(Error::PoleEvaluation(_))));
    }

    #[test]
    fn transform_examples() {
        let f = QPoly::linear(I);
        let t = transform_t(&f, ONE + J).unwrap();
        let expected = Quaternion::new(1.0, 2.0 / 3.0, 1.0 / 3.0, -2.0 / 3.0);
        assert!(t.approx_eq(&expected, 1e-15));
        assert!((t.sphere().y - 1.0).abs() < 1e-15);

        let real = QPoly::new(vec![ONE * 2.0, -ONE, ONE * 0.5]);
        let q = Quaternion::new(0.3, -0.2, 0.9, 0.4);
        assert!(transform_t(&real, q).unwrap().approx_eq(&q, 1e-15));

        assert_eq!(transform_t(&f, I * 2.0).unwrap(), I * 2.0);
        assert!(matches!(transform_t(&f, J), Err(Error::PoleEvaluation(_))));
    }

    #[test]
    fn eval_via_transform_examples() {
        let f = QPoly::linear(I);
        let v = eval_via_transform(&f, &QPoly::one(), ONE + J).unwrap();
        assert!(v.approx_eq(&(Quaternion::new(3.0, 1.0, -1.0, 2.0) / 5.0), 1e-15));
        let g = QPoly::new(vec![K, J, ONE]);
        let v = eval_via_transform(&g, &g, Quaternion::new(0.2, 0.5, -1.0, 0.3)).unwrap();
        assert!(v.approx_eq(&ONE, 1e-14));
    }

    #[test]
    fn transform_round_trip() {
        let q = transform_inverse_check(&QPoly::linear(I), ONE + J).unwrap();
        assert!(q.approx_eq(&(ONE + J), 1e-15));
    }

    #[test]
    fn field_examples() {
        let a = reciprocal(&QPoly::linear(I)).unwrap();
        let p = SemiRegular::from_poly(QPoly::linear(I));
        let prod = a.star_mul(&p).unwrap();
        assert_eq!(prod.den(), &RealPoly::one());
        assert!(close_poly(prod.num(), &QPoly::one()));

        assert_eq!(a.star_mul(&SemiRegular::one()).unwrap(), a);

        let x = from_pair(&QPoly::linear(I), &QPoly::linear(J)).unwrap();
        let y = from_pair(&QPoly::linear(J), &QPoly::linear(I)).unwrap();
        let xy = x.star_mul(&y).unwrap();
        assert_eq!(xy.den(), &RealPoly::one());
        assert!(close_poly(xy.num(), &QPoly::one()));
    }

    #[test]
    fn inverse_examples() {
        let a = reciprocal(&QPoly::linear(I)).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(inv.den(), &RealPoly::one());
        assert!(close_poly(inv.num(), &QPoly::linear(I)));
        assert_eq!(SemiRegular::one().inverse().unwrap(), SemiRegular::one());
        let zero = SemiRegular::from_poly(QPoly::zero());
        assert_eq!(zero.inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn right_quotient_mirrors_left() {
        let f = QPoly::linear(I);
        let g = QPoly::linear(J);
        let r = right_quotient(&g, &f).unwrap();
        assert_eq!(r.num(), &g.star_mul(&f.conj()));
        // g * f^{-*} * f = g
        let back = r.star_mul(&SemiRegular::from_poly(f)).unwrap();
        assert!(close_poly(back.num(), &g));
    }

    #[test]
    fn json_layout() {
        let h = reciprocal(&QPoly::linear(I)).unwrap();
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(
            s,
            r#"{"den":{"coeffs":[[1.0,0.0,0.0,0.0],[0.0,0.0,0.0,0.0],[1.0,0.0,0.0,0.0]]},"num":{"coeffs":[[0.0,1.0,0.0,0.0],[1.0,0.0,0.0,0.0]]}}"#
        );
        let back: SemiRegular = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
        assert!(serde_json::from_str::<SemiRegular>(r#"{"den":{"coeffs":[[1,1,0,0]]},"num":{"coeffs":[]}}"#).is_err());
    }
}

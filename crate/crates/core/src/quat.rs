//! Quaternions, imaginary units and the spheres `x + yS`.
//!
//! Every quaternion `q` can be written as `x + yI` with `x, y` real, `y >= 0`
//! and `I` an imaginary unit (`I^2 = -1`). The set of all `x + yJ` with `J`
//! ranging over the unit sphere `S` is a 2-sphere, or the real singleton `{x}`
//! when `y = 0`. Each unit `I` also determines a complex line
//! `L_I = R + IR`, which is a copy of the complex numbers inside `H`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Tolerance used to validate imaginary units and orthogonality.
pub const UNIT_TOL: f64 = 1e-12;

/// Absolute tolerance used when grouping points by sphere.
pub const SPHERE_TOL: f64 = 1e-9;

/// A real quaternion `w + x i + y j + z k`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn real(r: f64) -> Self {
        Self::new(r, 0.0, 0.0, 0.0)
    }

    /// Purely imaginary quaternion with the given vector part.
    pub const fn pure(v: [f64; 3]) -> Self {
        Self::new(0.0, v[0], v[1], v[2])
    }

    pub fn re(&self) -> f64 {
        self.w
    }

    /// Imaginary part as a quaternion with zero real part.
    pub fn im(&self) -> Quaternion {
        Self::new(0.0, self.x, self.y, self.z)
    }

    pub fn vector(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn conj(&self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        self.w.hypot(self.x).hypot(self.y.hypot(self.z))
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    /// Euclidean inner product on `R^4`.
    pub fn dot(&self, other: &Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Multiplicative inverse `conj(q) / |q|^2`.
    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 || !n2.is_finite() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.conj() * (1.0 / n2))
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn powi(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inverse()? } else { *self };
        let mut acc = Self::ONE;
        for _ in 0..n.unsigned_abs() {
            acc = acc * base;
        }
        Ok(acc)
    }

    /// `h^{-1} q h`.
    pub fn conjugate_by(&self, h: &Self) -> Result<Self> {
        Ok(h.inverse()? * *self * *h)
    }

    /// The sphere `x + yS` containing this point.
    pub fn sphere(&self) -> Sphere {
        Sphere::new(self.w, self.im().norm())
    }

    /// The unit `I` with `q = x + yI`, or `None` for real points.
    pub fn unit(&self) -> Option<ImaginaryUnit> {
        let v = self.im();
        let n = v.norm();
        if n == 0.0 {
            None
        } else {
            Some(ImaginaryUnit(v * (1.0 / n)))
        }
    }

    pub fn is_finite(&self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (*self - *other).norm() <= tol
    }
}

/// Splits a quaternion into its sphere and (for non-real points) its unit.
pub fn sphere_of(q: Quaternion) -> (Sphere, Option<ImaginaryUnit>) {
    (q.sphere(), q.unit())
}

impl From<f64> for Quaternion {
    fn from(r: f64) -> Self {
        Self::real(r)
    }
}

impl From<[f64; 4]> for Quaternion {
    fn from(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        [q.w, q.x, q.y, q.z]
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    // Hamilton product: i^2 = j^2 = k^2 = -1, ij = k, jk = i, ki = j.
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    fn mul(self, r: f64) -> Self {
        Self::new(self.w * r, self.x * r, self.y * r, self.z * r)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    fn div(self, r: f64) -> Self {
        Self::new(self.w / r, self.x / r, self.y / r, self.z / r)
    }
}

impl std::iter::Sum for Quaternion {
    fn sum<It: Iterator<Item = Self>>(iter: It) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.w, self.x, self.y, self.z)
    }
}

impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // adding 0.0 turns -0.0 into 0.0
        [self.w + 0.0, self.x + 0.0, self.y + 0.0, self.z + 0.0].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let a = <[f64; 4]>::deserialize(d)?;
        Ok(a.into())
    }
}

/// A quaternion `u` with zero real part and unit norm, so that `u^2 = -1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ImaginaryUnit(Quaternion);

impl ImaginaryUnit {
    pub const I: Self = Self(Quaternion::I);
    pub const J: Self = Self(Quaternion::J);
    pub const K: Self = Self(Quaternion::K);

    /// Validates that `u` is an imaginary unit within [`UNIT_TOL`].
    pub fn new(u: Quaternion) -> Result<Self> {
        let dev = u.w.abs().max((u.norm() - 1.0).abs());
        if dev > UNIT_TOL || !dev.is_finite() {
            return Err(Error::NotImaginaryUnit(dev));
        }
        Ok(Self(u))
    }

    /// Normalizes a nonzero vector into an imaginary unit.
    pub fn from_vector(v: [f64; 3]) -> Result<Self> {
        let q = Quaternion::pure(v);
        let n = q.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidArgument("zero vector has no direction".into()));
        }
        Ok(Self(q * (1.0 / n)))
    }

    pub fn as_quaternion(&self) -> Quaternion {
        self.0
    }

    /// Inner product of the vector parts.
    pub fn dot(&self, other: &Self) -> f64 {
        self.0.dot(&other.0)
    }

    /// The point `re + im I` of the slice `L_I`.
    pub fn embed(&self, z: Complex64) -> Quaternion {
        Quaternion::real(z.re) + self.0 * z.im
    }

    /// Coordinates of `q` on `L_I`, assuming it lies there.
    pub fn coordinates(&self, q: Quaternion) -> Complex64 {
        Complex64::new(q.w, q.im().dot(&self.0))
    }

    /// Distance from `q` to the slice `L_I`.
    pub fn slice_distance(&self, q: Quaternion) -> f64 {
        (q - self.embed(self.coordinates(q))).norm()
    }
}

impl Neg for ImaginaryUnit {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl From<ImaginaryUnit> for Quaternion {
    fn from(u: ImaginaryUnit) -> Self {
        u.0
    }
}

impl Serialize for ImaginaryUnit {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ImaginaryUnit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let q = Quaternion::deserialize(d)?;
        Self::new(q).map_err(serde::de::Error::custom)
    }
}

/// A unit orthogonal to `unit`.
///
/// The coordinate axis least aligned with `unit` is orthogonalized against it
/// (ties go to the first axis), so the choice is deterministic.
pub fn perp_unit(unit: ImaginaryUnit) -> ImaginaryUnit {
    let v = unit.0.vector();
    let mut axis = 0;
    for k in 1..3 {
        if v[k].abs() < v[axis].abs() {
            axis = k;
        }
    }
    let mut e = [0.0; 3];
    e[axis] = 1.0;
    let d = v[axis];
    let w = [e[0] - d * v[0], e[1] - d * v[1], e[2] - d * v[2]];
    ImaginaryUnit::from_vector(w).expect("least aligned axis is never parallel")
}

/// The two complex components of a quaternion relative to orthogonal units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Split {
    pub alpha: Complex64,
    pub beta: Complex64,
}

/// Writes `q = (a + bI) + (c + dI)J` and returns `alpha = a + bi`,
/// `beta = c + di`.
pub fn split(q: Quaternion, i: ImaginaryUnit, j: ImaginaryUnit) -> Result<Split> {
    let d = i.dot(&j);
    if d.abs() > UNIT_TOL {
        return Err(Error::NotOrthogonal(d));
    }
    let k = i.0 * j.0;
    let v = q.im();
    Ok(Split {
        alpha: Complex64::new(q.w, v.dot(&i.0)),
        beta: Complex64::new(v.dot(&j.0), v.dot(&k)),
    })
}

/// Inverse of [`split`]: `(alpha_re + alpha_im I) + (beta_re + beta_im I) J`.
pub fn unsplit(s: Split, i: ImaginaryUnit, j: ImaginaryUnit) -> Quaternion {
    i.embed(s.alpha) + i.embed(s.beta) * j.0
}

/// The sphere `x + yS`, or the real point `x` when `y = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sphere {
    pub x: f64,
    pub y: f64,
}

impl Sphere {
    /// Builds a sphere; the radius is taken in absolute value.
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y: y.abs() }
    }

    pub fn is_real(&self) -> bool {
        self.y == 0.0
    }

    /// The point `x + yI` of the sphere.
    pub fn point(&self, unit: ImaginaryUnit) -> Quaternion {
        Quaternion::real(self.x) + unit.0 * self.y
    }

    /// `x + yi` as a complex number.
    pub fn complex(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn contains(&self, q: Quaternion, tol: f64) -> bool {
        self.approx_eq(&q.sphere(), tol)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.x - other.x).abs() <= tol && (self.y - other.y).abs() <= tol
    }

    /// Real coefficients of `(q - x)^2 + y^2`, ascending.
    pub fn central_quadratic(&self) -> [f64; 3] {
        [self.x * self.x + self.y * self.y, -2.0 * self.x, 1.0]
    }
}

impl fmt::Display for Sphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{{{}}}", self.x)
        } else {
            write!(f, "{} + {}S", self.x, self.y)
        }
    }
}

impl Serialize for Sphere {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x, self.y].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Sphere {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[f64; 2]>::deserialize(d)?;
        if y < 0.0 {
            return Err(serde::de::Error::custom("sphere radius must be non-negative"));
        }
        Ok(Sphere::new(x, y))
    }
}

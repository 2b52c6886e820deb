#![allow(dead_code)]

use proptest::prelude::*;
use slicereg::{ImaginaryUnit, QPoly, Quaternion, RealPoly, Sphere};

pub fn quaternion() -> impl Strategy<Value = Quaternion> {
    [-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64].prop_map(|[w, x, y, z]| Quaternion::new(w, x, y, z))
}

pub fn nonzero_quaternion() -> impl Strategy<Value = Quaternion> {
    quaternion().prop_filter("away from zero", |q| q.norm() > 1e-2)
}

pub fn unit() -> impl Strategy<Value = ImaginaryUnit> {
    [-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64]
        .prop_filter("away from zero", |v| v.iter().map(|c| c * c).sum::<f64>() > 1e-2)
        .prop_map(|v| ImaginaryUnit::from_vector(v).unwrap())
}

/// Polynomial with degree in `0..=max_deg` and a leading coefficient bounded
/// away from zero.
pub fn poly(max_deg: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(quaternion(), 1..=max_deg + 1)
        .prop_filter("nonzero leading coefficient", |c| c.last().unwrap().norm() > 0.1)
        .prop_map(QPoly::new)
}

pub fn real_poly(max_deg: usize) -> impl Strategy<Value = RealPoly> {
    prop::collection::vec(-3.0..3.0f64, 1..=max_deg + 1)
        .prop_filter("nonzero leading coefficient", |c| c.last().unwrap().abs() > 0.1)
        .prop_map(RealPoly::new)
}

/// Non-real sphere with radius bounded away from 0.
pub fn sphere() -> impl Strategy<Value = Sphere> {
    (-2.0..2.0f64, 0.3..2.0f64).prop_map(|(x, y)| Sphere::new(x, y))
}

/// Two spheres whose centers are at least 0.5 apart in the `(x, y)` plane.
pub fn two_spheres() -> impl Strategy<Value = (Sphere, Sphere)> {
    (sphere(), sphere()).prop_filter("separated", |(a, b)| (a.x - b.x).hypot(a.y - b.y) >= 0.5)
}

pub fn rel_diff(a: Quaternion, b: Quaternion) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

pub fn chain(points: &[Quaternion]) -> QPoly {
    points
        .iter()
        .fold(QPoly::one(), |acc, &p| acc.star_mul(&QPoly::linear(p)))
}

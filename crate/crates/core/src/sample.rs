//! Random quaternions, units and polynomials for the randomized checks.

use std::ops::RangeInclusive;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::quat::{ImaginaryUnit, Quaternion, Sphere};
use crate::star::QPoly;

/// Quaternion with independent standard normal components.
pub fn quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    let mut c = || -> f64 { StandardNormal.sample(rng) };
    Quaternion::new(c(), c(), c(), c())
}

/// Uniformly distributed imaginary unit.
pub fn unit<R: Rng + ?Sized>(rng: &mut R) -> ImaginaryUnit {
    loop {
        let v = quaternion(rng).im();
        if v.norm() > 1e-3 {
            return ImaginaryUnit::from_vector(v.vector()).expect("nonzero vector");
        }
    }
}

/// Polynomial with normal coefficients and a degree drawn from `degrees`.
pub fn poly<R: Rng + ?Sized>(rng: &mut R, degrees: RangeInclusive<usize>) -> QPoly {
    let deg = rng.random_range(degrees);
    QPoly::new((0..=deg).map(|_| quaternion(rng)).collect())
}

/// Spheres whose centers in the `(x, y)` half plane are at least `sep` apart,
/// with `y` in `[0.3, 2]` (or `y = 0` when `real` is set for that slot).
pub fn spheres<R: Rng + ?Sized>(rng: &mut R, count: usize, real_every: usize, sep: f64) -> Vec<Sphere> {
    let mut out: Vec<Sphere> = Vec::with_capacity(count);
    while out.len() < count {
        let real = real_every > 0 && out.len() % real_every == real_every - 1;
        let x = rng.random_range(-2.0..2.0);
        let y = if real { 0.0 } else { rng.random_range(0.3..2.0) };
        let s = Sphere::new(x, y);
        if out.iter().all(|t| (t.x - s.x).hypot(t.y - s.y) >= sep) {
            out.push(s);
        }
    }
    out
}

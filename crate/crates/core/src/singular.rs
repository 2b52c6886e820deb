//! Laurent data, singularity classification and pole structure.
//!
//! For an opaque function the only information available is its values, so
//! the slice Laurent coefficients are recovered by sampling a circle and the
//! order of a singularity is read off their decay. For a [`SemiRegular`]
//! function orders are exact integers computed from multiplicities.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::func::QFunction;
use crate::quat::{ImaginaryUnit, Quaternion, Sphere};
use crate::quotient::SemiRegular;
use crate::sample;
use crate::star::RealPoly;
use crate::zeros::{factor_at_sphere, ZERO_TOL};

/// Maximum distance from a center to the slice it is expanded on.
pub const SLICE_TOL: f64 = 1e-9;

/// Seed for the random units sampled on each singular sphere.
const POLE_SAMPLE_SEED: u64 = 0x5eed;

/// Random units sampled per sphere by [`pole_report`].
const POLE_SAMPLES: usize = 8;

/// Truncated slice Laurent expansion `sum_{n=-N}^{N} (z - c)^n a_n` around `c`
/// on the slice `L_I`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LaurentExpansion {
    pub center: Quaternion,
    pub unit: ImaginaryUnit,
    pub radius: f64,
    pub n: usize,
    /// `a_{-N}, ..., a_N`.
    pub coeffs: Vec<Quaternion>,
}

impl LaurentExpansion {
    /// `a_k`, zero outside the window.
    pub fn coeff(&self, k: i64) -> Quaternion {
        let idx = k + self.n as i64;
        if idx < 0 {
            return Quaternion::ZERO;
        }
        self.coeffs.get(idx as usize).copied().unwrap_or(Quaternion::ZERO)
    }

    /// Sums the truncated series at a point of the slice.
    pub fn eval(&self, q: Quaternion) -> Result<Quaternion> {
        check_on_slice(q, self.unit)?;
        let d = q - self.center;
        let n = self.n as i64;
        (-n..=n).map(|k| Ok(d.powi(k)? * self.coeff(k))).sum()
    }
}

fn check_on_slice(q: Quaternion, unit: ImaginaryUnit) -> Result<()> {
    let dist = unit.slice_distance(q);
    if dist > SLICE_TOL * q.norm().max(1.0) {
        return Err(Error::OffSlice(dist));
    }
    Ok(())
}

/// Samples `h` at `M = 4N + 4` points of the circle `c + r e^{I theta}` and
/// inverts the discrete Fourier transform.
///
/// The coefficients sit on the right, so the exponentials multiply the
/// samples from the left. For a non-real center only the slice of `unit` is
/// used; for a real center the result does not depend on `unit`.
pub fn laurent_extract(
    h: &(impl QFunction + ?Sized),
    center: Quaternion,
    unit: ImaginaryUnit,
    radius: f64,
    n: usize,
) -> Result<LaurentExpansion> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")));
    }
    check_on_slice(center, unit)?;
    let m = 4 * n + 4;
    let samples = (0..m)
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / m as f64;
            h.evaluate(center + unit.embed(Complex64::from_polar(radius, theta)))
        })
        .collect::<Result<Vec<_>>>()?;
    let ni = n as i64;
    let coeffs = (-ni..=ni)
        .map(|k| {
            let sum: Quaternion = samples
                .iter()
                .enumerate()
                .map(|(j, &v)| {
                    // reduce the angle index first so large |k| stay accurate
                    let idx = (k * j as i64).rem_euclid(m as i64);
                    let theta = -2.0 * PI * idx as f64 / m as f64;
                    unit.embed(Complex64::from_polar(1.0, theta)) * v
                })
                .sum();
            sum * (radius.powi(-k as i32) / m as f64)
        })
        .collect();
    Ok(LaurentExpansion {
        center,
        unit,
        radius,
        n,
        coeffs,
    })
}

/// Kind of an isolated singularity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "order", rename_all = "snake_case")]
pub enum Singularity {
    Removable,
    Pole(usize),
    Essential,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SingularityClass {
    #[serde(flatten)]
    pub kind: Singularity,
    /// `|a_{-N}| r^{-N}` relative to the largest `|a_n| r^n` in the window.
    pub evidence: f64,
    /// True when the verdict rests on the truncation window alone.
    pub heuristic: bool,
}

/// Smallest `n` such that every `a_{-m}`, `m > n`, is negligible.
///
/// Coefficients are compared through their contribution `|a_k| r^k` on the
/// sampling circle, relative to the largest such contribution. A tail that
/// reaches `a_{-N}` is reported as essential; that is a heuristic verdict.
/// A pole of order 0 is never upgraded to removable here since slice data
/// cannot show that the function extends to a full neighborhood.
pub fn classify_singularity(e: &LaurentExpansion, tol: f64) -> SingularityClass {
    let n = e.n as i64;
    let weight = |k: i64| e.coeff(k).norm() * e.radius.powi(k as i32);
    let scale = (-n..=n).map(weight).fold(0.0, f64::max);
    let rel = |k: i64| if scale > 0.0 { weight(k) / scale } else { 0.0 };
    let order = (1..=n).rev().find(|&m| rel(-m) > tol).unwrap_or(0) as usize;
    let kind = if n > 0 && order == e.n {
        Singularity::Essential
    } else {
        Singularity::Pole(order)
    };
    SingularityClass {
        kind,
        evidence: rel(-n),
        heuristic: kind == Singularity::Essential,
    }
}

/// Half the distance from `center` to the nearest other singular point of `h`
/// on the slice of `unit`, or 1 when there is none.
pub fn default_radius(h: &SemiRegular, center: Quaternion, unit: ImaginaryUnit) -> Result<f64> {
    let z = unit.coordinates(center);
    let nearest = h
        .singular_spheres()?
        .into_iter()
        .flat_map(|(s, _)| [s.complex(), s.complex().conj()])
        .map(|w| (w - z).norm())
        .filter(|&d| d > ZERO_TOL * z.norm().max(1.0))
        .fold(f64::INFINITY, f64::min);
    Ok(if nearest.is_finite() { nearest / 2.0 } else { 1.0 })
}

fn den_multiplicity(den: &RealPoly, sphere: Sphere) -> usize {
    if den.degree() == Some(0) {
        return 0;
    }
    den.multiplicity_of(&RealPoly::sphere_factor(sphere), ZERO_TOL)
}

/// Order of the pole of `h` at `p`: the multiplicity of `p`'s sphere in the
/// denominator (as a complex root), less the classical multiplicity of the
/// numerator at `p`, clamped at 0.
pub fn pole_order_at(h: &SemiRegular, p: Quaternion) -> Result<usize> {
    let k = den_multiplicity(h.den(), p.sphere());
    if k == 0 {
        return Ok(0);
    }
    let mu = h.num().classical_multiplicity(p, ZERO_TOL)?;
    Ok(k.saturating_sub(mu))
}

/// A point together with an integer attached to it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PointOrder {
    pub point: Quaternion,
    pub order: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PointMultiplicity {
    pub point: Quaternion,
    pub multiplicity: usize,
}

/// Poles of a quotient on one sphere.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpherePoles {
    pub sphere: Sphere,
    pub generic_order: usize,
    /// The single point of strictly lesser order, if any.
    pub exceptional: Option<PointOrder>,
    pub spherical_order: usize,
    pub isolated_multiplicity: Option<PointMultiplicity>,
    /// Points of the numerator chain `(q - p_1) * ... * (q - p_n)`.
    pub chain: Vec<Quaternion>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PoleReport {
    pub spheres: Vec<SpherePoles>,
}

/// Pole structure of `h` on each sphere where its denominator vanishes.
///
/// On a non-real sphere `h = [(q - x)^2 + y^2]^{-k} (q - p_1) * ... * (q - p_n) * g`,
/// giving spherical order `2k` and isolated multiplicity `n` at `p_1`. On a
/// real point the factor `(q - x)^{-k}` is written the same way with
/// `ceil(k / 2)` quadratic factors and one linear factor when `k` is odd.
pub fn pole_report(h: &SemiRegular) -> Result<PoleReport> {
    if h.num().is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(POLE_SAMPLE_SEED);
    let mut spheres = Vec::new();
    for (sphere, _) in h.singular_spheres()? {
        let k = den_multiplicity(h.den(), sphere);
        if sphere.is_real() {
            let p = Quaternion::real(sphere.x);
            let order = pole_order_at(h, p)?;
            let half = k.div_ceil(2);
            spheres.push(SpherePoles {
                sphere,
                generic_order: order,
                exceptional: None,
                spherical_order: 2 * half,
                isolated_multiplicity: (k % 2 == 1).then_some(PointMultiplicity {
                    point: p,
                    multiplicity: 1,
                }),
                chain: if k % 2 == 1 { vec![p] } else { vec![] },
            });
            continue;
        }
        let fac = factor_at_sphere(h.num(), sphere, ZERO_TOL)?;
        let net = fac.central_power as i64 - k as i64;
        let mut points: Vec<Quaternion> = Vec::new();
        for p in fac.chain.iter().flat_map(|p| [*p, p.conj()]) {
            if !points.iter().any(|q| q.approx_eq(&p, ZERO_TOL)) {
                points.push(p);
            }
        }
        points.extend((0..POLE_SAMPLES).map(|_| sphere.point(sample::unit(&mut rng))));
        let orders = points
            .iter()
            .map(|&p| pole_order_at(h, p))
            .collect::<Result<Vec<_>>>()?;
        let generic = orders.iter().copied().max().unwrap_or(0);
        let mut lesser: Vec<PointOrder> = Vec::new();
        for (&point, &order) in points.iter().zip(&orders) {
            if order < generic && !lesser.iter().any(|l| l.point.approx_eq(&point, 1e-6)) {
                lesser.push(PointOrder { point, order });
            }
        }
        if lesser.len() > 1 {
            return Err(Error::Inconsistent(format!(
                "{} points of lesser pole order on {sphere}",
                lesser.len()
            )));
        }
        spheres.push(SpherePoles {
            sphere,
            generic_order: generic,
            exceptional: lesser.pop(),
            spherical_order: if net < 0 { (-2 * net) as usize } else { 0 },
            isolated_multiplicity: fac.chain.first().map(|&point| PointMultiplicity {
                point,
                multiplicity: fac.chain.len(),
            }),
            chain: fac.chain,
        });
    }
    Ok(PoleReport { spheres })
}

/// Central difference estimate of `|1/2 (d/dx + I d/dy) h(x + yI)|` at `q`.
pub fn regularity_residual(
    h: &(impl QFunction + ?Sized),
    q: Quaternion,
    unit: ImaginaryUnit,
    step: f64,
) -> Result<f64> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {step}")));
    }
    check_on_slice(q, unit)?;
    let u = unit.as_quaternion();
    let dx = (h.evaluate(q + Quaternion::real(step))? - h.evaluate(q - Quaternion::real(step))?) / (2.0 * step);
    let dy = (h.evaluate(q + u * step)? - h.evaluate(q - u * step)?) / (2.0 * step);
    Ok(((dx + u * dy) * 0.5).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::reciprocal;
    use crate::star::{QLaurentPoly, QPoly};

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const ONE: Quaternion = Quaternion::ONE;
    const O: Quaternion = Quaternion::ZERO;

    #[test]
    fn extract_polynomial() {
        let h = QPoly::new(vec![ONE, O, ONE]);
        let e = laurent_extract(&h, O, ImaginaryUnit::K, 1.0, 4).unwrap();
        for k in -4..=4 {
            let want = if k == 0 || k == 2 { ONE } else { O };
            assert!(e.coeff(k).approx_eq(&want, 1e-12), "a_{k} = {}", e.coeff(k));
        }
        let h = QLaurentPoly::new(-1, vec![ONE, O, ONE]);
        let e = laurent_extract(&h, O, ImaginaryUnit::I, 1.0, 4).unwrap();
        assert!(e.coeff(-1).approx_eq(&ONE, 1e-12));
        assert!(e.coeff(1).approx_eq(&ONE, 1e-12));
    }

    #[test]
    fn classify_examples() {
        let h = QLaurentPoly::new(-3, vec![ONE, O, O, O, ONE]);
        let e = laurent_extract(&h, O, ImaginaryUnit::J, 1.0, 8).unwrap();
        assert_eq!(classify_singularity(&e, 1e-9).kind, Singularity::Pole(3));

        let e = laurent_extract(&QPoly::linear(I), O, ImaginaryUnit::J, 1.0, 8).unwrap();
        assert_eq!(classify_singularity(&e, 1e-9).kind, Singularity::Pole(0));

        let mut fact = 1.0;
        let mut coeffs = vec![O; 17];
        for n in 1..=16 {
            fact *= n as f64;
            coeffs[16 - n] = ONE / fact;
        }
        let h = QLaurentPoly::new(-16, coeffs);
        let e = laurent_extract(&h, O, ImaginaryUnit::I, 0.5, 16).unwrap();
        let c = classify_singularity(&e, 1e-12);
        assert_eq!(c.kind, Singularity::Essential);
        assert!(c.heuristic);
    }

    #[test]
    fn pole_order_examples() {
        let h = reciprocal(&QPoly::new(vec![ONE, O, ONE])).unwrap();
        assert_eq!(pole_order_at(&h, J).unwrap(), 1);
        let h = reciprocal(&QPoly::linear(I)).unwrap();
        assert_eq!(pole_order_at(&h, -I).unwrap(), 0);
        assert_eq!(pole_order_at(&h, J).unwrap(), 1);
        assert_eq!(pole_order_at(&h, I).unwrap(), 1);
        assert_eq!(pole_order_at(&h, ONE).unwrap(), 0);
    }

    #[test]
    fn report_examples() {
        let r = pole_report(&reciprocal(&QPoly::linear(I)).unwrap()).unwrap();
        assert_eq!(r.spheres.len(), 1);
        let s = &r.spheres[0];
        assert_eq!((s.generic_order, s.spherical_order), (1, 2));
        let ex = s.exceptional.unwrap();
        assert!(ex.point.approx_eq(&-I, 1e-9) && ex.order == 0);
        let iso = s.isolated_multiplicity.unwrap();
        assert!(iso.point.approx_eq(&-I, 1e-9) && iso.multiplicity == 1);

        let r = pole_report(&reciprocal(&QPoly::new(vec![ONE, O, ONE])).unwrap()).unwrap();
        let s = &r.spheres[0];
        assert_eq!((s.generic_order, s.spherical_order), (1, 2));
        assert!(s.exceptional.is_none() && s.isolated_multiplicity.is_none());

        let r = pole_report(&reciprocal(&QPoly::linear(I).star_pow(2)).unwrap()).unwrap();
        let s = &r.spheres[0];
        assert_eq!((s.generic_order, s.spherical_order), (2, 4));
        assert_eq!(s.exceptional.unwrap().order, 0);
        assert_eq!(s.isolated_multiplicity.unwrap().multiplicity, 2);
    }

    #[test]
    fn real_pole_report() {
        // (q - 1)^{-3}
        let h = SemiRegular::new(RealPoly::linear(1.0).pow(3), QPoly::one()).unwrap();
        let r = pole_report(&h).unwrap();
        let s = &r.spheres[0];
        assert_eq!((s.generic_order, s.spherical_order), (3, 4));
        assert_eq!(s.isolated_multiplicity.unwrap().multiplicity, 1);
    }

    #[test]
    fn regularity_examples() {
        let f = QPoly::new(vec![J, I, ONE, Quaternion::K]);
        let q = Quaternion::new(0.3, 0.0, 0.8, 0.0);
        assert!(regularity_residual(&f, q, ImaginaryUnit::J, 1e-4).unwrap() <= 1e-7);

        let pointwise = |q: Quaternion| -> Result<Quaternion> { Ok((q - I) * (q - I)) };
        assert!(regularity_residual(&pointwise, ONE + J, ImaginaryUnit::J, 1e-4).unwrap() > 0.1);

        let h = reciprocal(&QPoly::linear(I)).unwrap();
        let q = Quaternion::new(0.5, 0.0, 0.0, 2.0);
        assert!(regularity_residual(&h, q, ImaginaryUnit::K, 1e-4).unwrap() <= 1e-6);

        assert!(matches!(
            regularity_residual(&f, ONE + I, ImaginaryUnit::J, 1e-4),
            Err(Error::OffSlice(_))
        ));
    }

    #[test]
    fn default_radius_skips_own_sphere() {
        let h = reciprocal(&QPoly::linear(I)).unwrap();
        let r = default_radius(&h, O, ImaginaryUnit::J).unwrap();
        assert!((r - 0.5).abs() < 1e-12);
        let r = default_radius(&h, J, ImaginaryUnit::J).unwrap();
        assert!((r - 1.0).abs() < 1e-9);
    }
}

//! Zero sets of quaternionic polynomials, sphere by sphere.
//!
//! The zeros of `f` lie on the spheres where the symmetrization `f^s`
//! vanishes. On each such sphere `f` factors as
//!
//! ```text
//! f = [(q - x)^2 + y^2]^m (q - p_1) * ... * (q - p_n) * g
//! ```
//!
//! with all `p_i` on the sphere and `g` free of zeros there. `2m` is the
//! spherical multiplicity and `n` the isolated multiplicity at `p_1`.

mod dd;
mod roots;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

pub use roots::{complex_roots, distinct_roots, real_roots_with_spheres, symmetrization_spheres, RootCluster};

use crate::error::{Error, Result};
use crate::quat::{ImaginaryUnit, Quaternion, Sphere};
use crate::star::QPoly;

/// Default tolerance for sphere membership and divisibility in zero analysis.
pub const ZERO_TOL: f64 = 1e-7;

/// What a polynomial does on one sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Located {
    /// Vanishes at every point of the sphere.
    WholeSphere,
    /// Vanishes at exactly this point.
    IsolatedPoint(Quaternion),
    /// Has no zero on the sphere.
    None,
}

impl Located {
    pub fn same_kind(&self, other: &Self) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(other)
    }
}

/// Locates the zeros of `f` on `sphere`.
///
/// With `(x + yi)^n = c_n + d_n i` we get `f(x + yI) = A + I B` where
/// `A = sum c_n a_n` and `B = sum d_n a_n`, so a zero needs `I = -A B^{-1}`.
/// `tol` bounds `|A|, |B|` relative to the evaluation scale and the deviation
/// of `I` from being an imaginary unit in absolute terms.
pub fn sphere_zero_locate(f: &QPoly, sphere: Sphere, tol: f64) -> Located {
    let z = sphere.complex();
    let mut pw = num_complex::Complex64::new(1.0, 0.0);
    let mut a = Quaternion::ZERO;
    let mut b = Quaternion::ZERO;
    for &c in f.coeffs() {
        a += c * pw.re;
        b += c * pw.im;
        pw *= z;
    }
    let bound = tol * f.eval_scale(z.norm().max(1.0)).max(f64::MIN_POSITIVE);
    if b.norm() <= bound {
        return if a.norm() <= bound {
            Located::WholeSphere
        } else {
            Located::None
        };
    }
    let unit = -(a * b.inverse().expect("|B| above tolerance"));
    let v = unit.im();
    if unit.w.abs() <= tol && (v.norm() - 1.0).abs() <= tol {
        let u = ImaginaryUnit::from_vector(v.vector()).expect("near-unit vector");
        Located::IsolatedPoint(sphere.point(u))
    } else {
        Located::None
    }
}

/// The factorization of a polynomial at one sphere.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereFactorization {
    pub sphere: Sphere,
    /// Number of central factors `(q - x)^2 + y^2` removed.
    pub central_power: usize,
    /// `p_1, ..., p_n` in the order they were factored out on the left.
    pub chain: Vec<Quaternion>,
    /// What is left; it has no zeros on the sphere.
    pub remainder: QPoly,
}

impl SphereFactorization {
    /// Multiplies the factors back together.
    pub fn reconstruct(&self) -> QPoly {
        let central = crate::star::RealPoly::central(self.sphere).pow(self.central_power);
        let chain = self
            .chain
            .iter()
            .fold(QPoly::one(), |acc, &p| acc.star_mul(&QPoly::linear(p)));
        chain.star_mul(&self.remainder).mul_real(&central)
    }
}

/// Strips central factors, then repeatedly factors out the unique zero on the
/// sphere of the current quotient.
pub fn factor_at_sphere(f: &QPoly, sphere: Sphere, tol: f64) -> Result<SphereFactorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut g = f.clone();
    let mut central_power = 0;
    while g.degree().unwrap_or(0) >= 2 {
        match g.div_central(sphere, tol) {
            Ok(h) => {
                g = h;
                central_power += 1;
            }
            Err(_) => break,
        }
    }
    let mut chain = Vec::new();
    while g.degree().unwrap_or(0) >= 1 {
        let p = match sphere_zero_locate(&g, sphere, tol) {
            Located::IsolatedPoint(p) => p,
            Located::WholeSphere if sphere.is_real() && chain.is_empty() => Quaternion::real(sphere.x),
            Located::WholeSphere if !sphere.is_real() => {
                return Err(Error::Inconsistent(format!(
                    "quotient still vanishes on {sphere} after removing central factors"
                )))
            }
            _ => break,
        };
        g = g.div_linear(p, tol)?;
        chain.push(p);
    }
    Ok(SphereFactorization {
        sphere,
        central_power,
        chain,
        remainder: g,
    })
}

/// Zeros of a polynomial on one sphere.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereZero {
    pub sphere: Sphere,
    pub kind: Located,
    /// Twice the number of central factors.
    pub spherical: usize,
    pub chain: Vec<Quaternion>,
    /// Classical multiplicities at the chain points and their conjugates
    /// (or at `x +- yi` when there is no chain).
    pub classical: Vec<(Quaternion, usize)>,
}

impl SphereZero {
    /// Length of the chain, attributed to its first point.
    pub fn isolated(&self) -> usize {
        self.chain.len()
    }
}

impl Serialize for SphereZero {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SphereZero", 7)?;
        st.serialize_field("sphere", &self.sphere)?;
        let (kind, point) = match self.kind {
            Located::WholeSphere => ("whole_sphere", None),
            Located::IsolatedPoint(p) => ("isolated_point", Some(p)),
            Located::None => ("none", None),
        };
        st.serialize_field("kind", kind)?;
        st.serialize_field("point", &point)?;
        st.serialize_field("spherical", &self.spherical)?;
        st.serialize_field("isolated", &self.isolated())?;
        st.serialize_field("chain", &self.chain)?;
        st.serialize_field("classical", &ClassicalMap(&self.classical))?;
        st.end()
    }
}

/// Serializes point multiplicities as an object keyed by `"[w,x,y,z]"`.
struct ClassicalMap<'a>(&'a [(Quaternion, usize)]);

impl Serialize for ClassicalMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (p, n) in self.0 {
            let key = serde_json::to_string(p).map_err(serde::ser::Error::custom)?;
            map.serialize_entry(&key, n)?;
        }
        map.end()
    }
}

/// The full zero set of a polynomial.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroReport {
    pub degree: usize,
    /// Sum of spherical and isolated multiplicities; equals `degree` when
    /// every zero was accounted for.
    pub accounted: usize,
    pub zeros: Vec<SphereZero>,
}

pub fn zero_report(f: &QPoly) -> Result<ZeroReport> {
    zero_report_with_tol(f, ZERO_TOL)
}

pub fn zero_report_with_tol(f: &QPoly, tol: f64) -> Result<ZeroReport> {
    let degree = f.degree().ok_or(Error::ZeroPolynomial)?;
    let mut zeros = Vec::new();
    if degree > 0 {
        let spheres = symmetrization_spheres(f)?;
        for (sphere, _) in spheres {
            let fac = factor_at_sphere(f, sphere, tol)?;
            if fac.central_power == 0 && fac.chain.is_empty() {
                continue;
            }
            let kind = match fac.chain.first() {
                Some(&p) if fac.central_power == 0 && !sphere.is_real() => Located::IsolatedPoint(p),
                _ => Located::WholeSphere,
            };
            let mut points: Vec<Quaternion> = Vec::new();
            let base: Vec<Quaternion> = if fac.chain.is_empty() {
                vec![sphere.point(ImaginaryUnit::I)]
            } else {
                fac.chain.clone()
            };
            for p in base {
                for c in [p, p.conj()] {
                    if !points.iter().any(|q| q.approx_eq(&c, tol)) {
                        points.push(c);
                    }
                }
            }
            let classical = points
                .into_iter()
                .map(|p| Ok((p, f.classical_multiplicity(p, tol)?)))
                .collect::<Result<Vec<_>>>()?;
            zeros.push(SphereZero {
                sphere,
                kind,
                spherical: 2 * fac.central_power,
                chain: fac.chain,
                classical,
            });
        }
    }
    let accounted = zeros.iter().map(|z| z.spherical + z.isolated()).sum();
    Ok(ZeroReport {
        degree,
        accounted,
        zeros,
    })
}

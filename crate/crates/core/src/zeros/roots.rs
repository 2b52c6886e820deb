//! Roots of real polynomials, grouped into spheres.
//!
//! Roots come from the eigenvalues of the (balanced) companion matrix and get
//! one Newton step each. Eigenvalues of a `k`-fold root scatter on a circle of
//! radius about `eps^(1/k)`, so nearby eigenvalues are clustered, the cluster
//! mean is refined by Newton's method on the `(k-1)`-th derivative, and the
//! cluster is kept only if the lower derivatives really vanish there.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use super::dd::{self, DdPoly};
use crate::error::{Error, Result};
use crate::quat::Sphere;
use crate::star::{QPoly, RealPoly};

/// Eigenvalues closer than this (relative to `max(1, |z|)`) form one cluster.
const CLUSTER_TOL: f64 = 5e-2;

/// Clusters are not split below this radius.
const MIN_CLUSTER_TOL: f64 = 1e-9;

/// Relative bound on the lower derivatives at a verified multiple root.
const MULTIPLE_ROOT_TOL: f64 = 1e-10;

/// Relative spectral shifts tried in turn when the QR iteration fails.
const SHIFTS: [f64; 4] = [0.0, 0.1234567, -0.3456789, 0.6543211];

/// Clusters whose mean has smaller relative imaginary part are real.
const REAL_TOL: f64 = 1e-9;

/// All complex roots of `s`, with multiplicity, each polished by one Newton step.
pub fn complex_roots(s: &RealPoly) -> Result<Vec<Complex64>> {
    let deg = s.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Ok(vec![]);
    }
    let monic = s.monic()?;
    let mut roots = if deg == 1 {
        vec![Complex64::new(-monic.coeff(0), 0.0)]
    } else {
        let mut m = DMatrix::<f64>::zeros(deg, deg);
        for i in 1..deg {
            m[(i, i - 1)] = 1.0;
        }
        for i in 0..deg {
            m[(i, deg - 1)] = -monic.coeff(i);
        }
        balance(&mut m);
        eigenvalues(m).ok_or(Error::RootFinder(deg))?
    };
    let ds = monic.derivative();
    for z in roots.iter_mut() {
        *z = newton_step(&monic, &ds, *z);
    }
    Ok(roots)
}

/// Francis iterations stall on some symmetric root patterns, such as
/// `(z^2 + 1)^2`; a real shift of the spectrum breaks the symmetry.
fn eigenvalues(m: DMatrix<f64>) -> Option<Vec<Complex64>> {
    let n = m.nrows();
    let norm = m.abs().max().max(f64::MIN_POSITIVE);
    for shift in SHIFTS {
        let sigma = shift * norm;
        let shifted = &m + DMatrix::<f64>::identity(n, n) * sigma;
        let Some(schur) = Schur::try_new(shifted, f64::EPSILON, 100 * n) else {
            continue;
        };
        let eig: Vec<Complex64> = schur
            .complex_eigenvalues()
            .iter()
            // a 2x2 block with a tiny negative discriminant can yield a NaN
            // imaginary part; the pair is then a double real eigenvalue
            .map(|z| Complex64::new(z.re - sigma, if z.im.is_nan() { 0.0 } else { z.im }))
            .collect();
        if eig.iter().all(|z| z.is_finite()) {
            return Some(eig);
        }
    }
    None
}

fn newton_step(s: &RealPoly, ds: &RealPoly, z: Complex64) -> Complex64 {
    let v = s.eval_complex(z);
    let d = ds.eval_complex(z);
    if d.norm() == 0.0 {
        return z;
    }
    let cand = z - v / d;
    if cand.is_finite() && s.eval_complex(cand).norm() < v.norm() {
        cand
    } else {
        z
    }
}

/// Parlett-Reinsch balancing with power-of-two scalings.
fn balance(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    for _ in 0..100 {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].abs();
                    r += m[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let total = c + r;
            let mut f = 1.0;
            while c < r / 2.0 {
                c *= 2.0;
                r /= 2.0;
                f *= 2.0;
            }
            while c >= r * 2.0 {
                c /= 2.0;
                r *= 2.0;
                f /= 2.0;
            }
            if c + r < 0.95 * total {
                done = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                    m[(j, i)] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// A root together with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootCluster {
    pub root: Complex64,
    pub multiplicity: usize,
}

/// Distinct roots of `s` with multiplicities.
pub fn distinct_roots(s: &RealPoly) -> Result<Vec<RootCluster>> {
    distinct_roots_refined(s, &DdPoly::from_f64(s.coeffs()))
}

/// Roots come from `s`; refinement and verification use the more accurate
/// `precise` representation of the same polynomial.
fn distinct_roots_refined(s: &RealPoly, precise: &DdPoly) -> Result<Vec<RootCluster>> {
    let roots = complex_roots(s)?;
    let mut out = Vec::new();
    for group in cluster(&roots, CLUSTER_TOL) {
        resolve(precise, group, CLUSTER_TOL, &mut out);
    }
    for c in out.iter_mut() {
        if c.root.im.abs() <= REAL_TOL * c.root.norm().max(1.0) {
            c.root.im = 0.0;
        }
    }
    Ok(out)
}

/// Accepts `group` as one multiple root if the derivatives confirm it,
/// otherwise splits it with a tighter clustering radius.
fn resolve(s: &DdPoly, group: Vec<Complex64>, tol: f64, out: &mut Vec<RootCluster>) {
    let k = group.len();
    if k == 1 {
        let root = refine_multiple(s, group[0], 1);
        out.push(RootCluster { root, multiplicity: 1 });
        return;
    }
    let mean = group.iter().sum::<Complex64>() / k as f64;
    let center = refine_multiple(s, mean, k);
    if is_multiple_root(s, center, k) {
        out.push(RootCluster {
            root: center,
            multiplicity: k,
        });
    } else if tol > MIN_CLUSTER_TOL {
        let tighter = tol / 4.0;
        for sub in cluster(&group, tighter) {
            resolve(s, sub, tighter, out);
        }
    } else {
        out.extend(group.into_iter().map(|root| RootCluster { root, multiplicity: 1 }));
    }
}

fn cluster(roots: &[Complex64], cluster_tol: f64) -> Vec<Vec<Complex64>> {
    // single linkage
    let n = roots.len();
    let mut label: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in i + 1..n {
            let tol = cluster_tol * roots[i].norm().max(roots[j].norm()).max(1.0);
            if (roots[i] - roots[j]).norm() <= tol {
                let (a, b) = (label[i], label[j]);
                if a != b {
                    for l in label.iter_mut() {
                        if *l == b {
                            *l = a;
                        }
                    }
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Complex64>)> = Vec::new();
    for (i, &z) in roots.iter().enumerate() {
        match groups.iter_mut().find(|(l, _)| *l == label[i]) {
            Some((_, g)) => g.push(z),
            None => groups.push((label[i], vec![z])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

fn nth_derivative(s: &DdPoly, n: usize) -> DdPoly {
    (0..n).fold(s.clone(), |d, _| d.derivative())
}

fn refine_multiple(s: &DdPoly, start: Complex64, k: usize) -> Complex64 {
    let d = nth_derivative(s, k - 1);
    let dd = d.derivative();
    let mut z = start;
    let mut v = d.eval(z).norm();
    for _ in 0..50 {
        let dz = dd.eval(z);
        if dz.norm() == 0.0 {
            break;
        }
        let cand = z - d.eval(z) / dz;
        let cv = d.eval(cand).norm();
        if !cand.is_finite() || cv.is_nan() || cv >= v {
            break;
        }
        z = cand;
        v = cv;
    }
    z
}

fn is_multiple_root(s: &DdPoly, z: Complex64, k: usize) -> bool {
    let r = z.norm().max(1.0);
    let mut d = s.clone();
    for _ in 0..k {
        if d.eval(z).norm() > MULTIPLE_ROOT_TOL * d.abs_scale(r) {
            return false;
        }
        d = d.derivative();
    }
    true
}

/// Roots of a real polynomial as spheres: a conjugate pair `x +- yi` becomes
/// `Sphere(x, y)`, a real root `x` becomes `Sphere(x, 0)`. Multiplicities
/// count the root `x + yi` (equivalently its conjugate), not the pair.
pub fn real_roots_with_spheres(s: &RealPoly) -> Result<Vec<(Sphere, usize)>> {
    if s.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    spheres_from(distinct_roots(s)?)
}

/// The spheres on which `f` has zeros, i.e. the roots of `f^s`, with their
/// multiplicity in `f^s`. The symmetrization is formed in extended precision
/// so that multiple spheres are located to near working accuracy.
pub fn symmetrization_spheres(f: &QPoly) -> Result<Vec<(Sphere, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let precise = DdPoly(dd::symmetrize(f.coeffs()));
    let plain = RealPoly::new(precise.0.iter().map(|c| c.to_f64()).collect());
    if plain.degree() == Some(0) {
        return Ok(vec![]);
    }
    spheres_from(distinct_roots_refined(&plain, &precise)?)
}

fn spheres_from(roots: Vec<RootCluster>) -> Result<Vec<(Sphere, usize)>> {
    let mut out: Vec<(Sphere, usize)> = roots
        .into_iter()
        .filter(|c| c.root.im >= 0.0)
        .map(|c| (Sphere::new(c.root.re, c.root.im), c.multiplicity))
        .collect();
    out.sort_by(|a, b| a.0.x.total_cmp(&b.0.x).then(a.0.y.total_cmp(&b.0.y)));
    Ok(out)
}

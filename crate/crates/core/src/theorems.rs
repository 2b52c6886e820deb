//! Randomized checks of the structural identities the library relies on.
//!
//! Every suite draws its inputs from a ChaCha generator seeded from the
//! caller's seed and the suite index, so a run is reproducible and the suites
//! are independent of each other.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::quat::{Quaternion, Sphere};
use crate::quotient::{eval_via_transform, from_pair, transform_inverse_check, SemiRegular};
use crate::sample;
use crate::singular::{pole_order_at, pole_report};
use crate::star::{QPoly, RealPoly};
use crate::zeros::{sphere_zero_locate, zero_report, Located, ZERO_TOL};

/// Residual bound for the floating point suites.
pub const THEOREM_TOL: f64 = 1e-9;

/// Signature of the star product used by the product formula suite.
pub type StarProduct = fn(&QPoly, &QPoly) -> QPoly;

/// One row of the report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremRow {
    pub theorem: &'static str,
    pub trials: usize,
    pub max_residual: f64,
    pub pass: bool,
}

/// Runs all suites with the library star product.
pub fn check_theorems(seed: u64, trials: usize) -> Result<Vec<TheoremRow>> {
    check_theorems_with(seed, trials, crate::star::star_mul)
}

/// Runs all suites, taking the star product under test from `star`.
pub fn check_theorems_with(seed: u64, trials: usize, star: StarProduct) -> Result<Vec<TheoremRow>> {
    type Suite = fn(&mut ChaCha8Rng, StarProduct) -> Result<f64>;
    let suites: [(&'static str, Suite); 7] = [
        ("product_formula", product_formula),
        ("conjugate_zeros", conjugate_zeros),
        ("transform_inverse", transform_inverse),
        ("two_path_quotient", two_path_quotient),
        ("order_bound", order_bound),
        ("pole_structure", pole_structure),
        ("degree_accounting", degree_accounting),
    ];
    suites
        .iter()
        .enumerate()
        .map(|(idx, &(theorem, suite))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(idx as u64);
            let mut max_residual: f64 = 0.0;
            for _ in 0..trials {
                let r = suite(&mut rng, star)?;
                max_residual = if r.is_nan() { f64::INFINITY } else { max_residual.max(r) };
            }
            Ok(TheoremRow {
                theorem,
                trials,
                max_residual,
                pass: max_residual <= THEOREM_TOL,
            })
        })
        .collect()
}

/// Convolution with the factors swapped, `c_n = sum b_k a_{n-k}`. Agrees
/// with the star product only when coefficients commute; used as a negative
/// control.
pub fn corrupted_star_mul(f: &QPoly, g: &QPoly) -> QPoly {
    let (a, b) = (f.coeffs(), g.coeffs());
    if a.is_empty() || b.is_empty() {
        return QPoly::zero();
    }
    let mut c = vec![Quaternion::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            c[i + j] += y * x;
        }
    }
    QPoly::new(c)
}

/// Random polynomial with prescribed zero structure: for each sphere, `m`
/// central factors and a chain of `n` linear factors through random points,
/// times a random constant. Returns the polynomial and `(sphere, m, n)`.
fn factored(rng: &mut ChaCha8Rng, spheres: usize) -> (QPoly, Vec<(Sphere, usize, usize)>) {
    let mut f = QPoly::constant(sample::quaternion(rng));
    let mut layout = Vec::new();
    for s in sample::spheres(rng, spheres, 3, 0.5) {
        if s.is_real() {
            let n = rng.random_range(1..=2);
            f = f.star_mul(&QPoly::linear(Quaternion::real(s.x)).star_pow(n as u32));
            layout.push((s, 0, n));
            continue;
        }
        let m = rng.random_range(0..=1);
        let n = rng.random_range(if m == 0 { 1 } else { 0 }..=2);
        f = f.mul_real(&RealPoly::central(s).pow(m));
        for _ in 0..n {
            f = QPoly::linear(s.point(sample::unit(rng))).star_mul(&f);
        }
        layout.push((s, m, n));
    }
    (f, layout)
}

fn product_formula(rng: &mut ChaCha8Rng, star: StarProduct) -> Result<f64> {
    let f = sample::poly(rng, 1..=4);
    let g = sample::poly(rng, 1..=4);
    let p = sample::quaternion(rng);
    let lhs = star(&f, &g).eval(p);
    let fp = f.eval(p);
    let rhs = fp * g.eval(p.conjugate_by(&fp)?);
    let r = p.norm().max(1.0);
    Ok((lhs - rhs).norm() / (f.eval_scale(r) * g.eval_scale(r)))
}

fn conjugate_zeros(rng: &mut ChaCha8Rng, _: StarProduct) -> Result<f64> {
    let (f, layout) = factored(rng, 2);
    let fc = f.conj();
    let mut spheres: Vec<Sphere> = layout.iter().map(|l| l.0).collect();
    spheres.push(Sphere::new(3.0, rng.random_range(0.3..2.0)));
    let mismatches = spheres
        .into_iter()
        .filter(|&s| !sphere_zero_locate(&f, s, ZERO_TOL).same_kind(&sphere_zero_locate(&fc, s, ZERO_TOL)))
        .count();
    Ok(mismatches as f64)
}

/// Draws a point where `|f^s(q)|` is not small, so both sides are well conditioned.
fn regular_point(rng: &mut ChaCha8Rng, f: &QPoly) -> Result<Quaternion> {
    let s = f.symmetrize()?;
    loop {
        let q = sample::quaternion(rng);
        let r = q.norm().max(1.0);
        let scale: f64 = s.coeffs().iter().rev().fold(0.0, |acc, c| acc * r + c.abs());
        if s.eval_quat(q).norm() > 1e-3 * scale {
            return Ok(q);
        }
    }
}

fn transform_inverse(rng: &mut ChaCha8Rng, _: StarProduct) -> Result<f64> {
    let f = sample::poly(rng, 1..=4);
    let q = regular_point(rng, &f)?;
    let back = transform_inverse_check(&f, q)?;
    Ok((back - q).norm() / q.norm().max(1.0))
}

fn two_path_quotient(rng: &mut ChaCha8Rng, _: StarProduct) -> Result<f64> {
    let f = sample::poly(rng, 1..=3);
    let g = sample::poly(rng, 0..=3);
    let q = regular_point(rng, &f)?;
    let h = from_pair(&f, &g)?;
    let a = h.eval(q)?;
    let b = eval_via_transform(&f, &g, q)?;
    Ok((a - b).norm() / a.norm().max(b.norm()).max(1.0))
}

fn order_bound(rng: &mut ChaCha8Rng, _: StarProduct) -> Result<f64> {
    let (f, layout) = factored(rng, 2);
    // a numerator that shares some of the zeros of f
    let (g, _) = factored(rng, 1);
    let g = match layout.first() {
        Some(&(s, _, _)) if rng.random_bool(0.5) => QPoly::linear(s.point(sample::unit(rng))).star_mul(&g),
        _ => g,
    };
    let h = from_pair(&f, &g)?;
    let fs = f.symmetrize()?;
    let mut violations = 0;
    for (s, _, _) in layout {
        let bound = fs.multiplicity_of(&RealPoly::sphere_factor(s), ZERO_TOL);
        let points: Vec<Quaternion> = if s.is_real() {
            vec![Quaternion::real(s.x)]
        } else {
            (0..4).map(|_| s.point(sample::unit(rng))).collect()
        };
        for p in points {
            if pole_order_at(&h, p)? > bound {
                violations += 1;
            }
        }
    }
    Ok(violations as f64)
}

fn pole_structure(rng: &mut ChaCha8Rng, _: StarProduct) -> Result<f64> {
    let spheres = sample::spheres(rng, 2, 0, 0.5);
    let mut den = RealPoly::one();
    let mut num = QPoly::constant(sample::quaternion(rng));
    for &s in &spheres {
        den = &den * &RealPoly::central(s).pow(rng.random_range(1..=2));
        for _ in 0..rng.random_range(0..=2) {
            num = QPoly::linear(s.point(sample::unit(rng))).star_mul(&num);
        }
    }
    num = num.star_mul(&sample::poly(rng, 0..=2));
    let h = SemiRegular::new(den, num)?;
    let report = pole_report(&h)?;
    let mut violations = 0;
    for sp in &report.spheres {
        let mut lesser: Vec<Quaternion> = Vec::new();
        let probes = sp
            .chain
            .iter()
            .flat_map(|p| [*p, p.conj()])
            .chain((0..8).map(|_| sp.sphere.point(sample::unit(rng))));
        for p in probes {
            let o = pole_order_at(&h, p)?;
            if o > sp.generic_order {
                violations += 1;
            }
            if o < sp.generic_order && !lesser.iter().any(|l| l.approx_eq(&p, 1e-6)) {
                lesser.push(p);
            }
        }
        if lesser.len() > 1 {
            violations += 1;
        }
    }
    Ok(violations as f64)
}

fn degree_accounting(rng: &mut ChaCha8Rng, _: StarProduct) -> Result<f64> {
    let count = rng.random_range(1..=3);
    let (f, layout) = factored(rng, count);
    let report = zero_report(&f)?;
    let mut residual = report.degree.abs_diff(report.accounted);
    for (s, m, n) in layout {
        let (want_sph, want_iso) = if s.is_real() { (2 * (n / 2), n % 2) } else { (2 * m, n) };
        match report.zeros.iter().find(|z| z.sphere.approx_eq(&s, 1e-6)) {
            Some(z) => {
                residual += z.spherical.abs_diff(want_sph) + z.isolated().abs_diff(want_iso);
                if s.is_real() && !matches!(z.kind, Located::WholeSphere) {
                    residual += 1;
                }
            }
            None => residual += 1,
        }
    }
    Ok(residual as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_a_short_run() {
        for row in check_theorems(7, 20).unwrap() {
            assert!(row.pass, "{row:?}");
        }
    }

    #[test]
    fn corrupted_product_is_caught() {
        let rows = check_theorems_with(7, 20, corrupted_star_mul).unwrap();
        let row = rows.iter().find(|r| r.theorem == "product_formula").unwrap();
        assert!(!row.pass);
    }
}

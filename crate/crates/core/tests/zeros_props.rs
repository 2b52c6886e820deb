mod common;

use common::*;
use proptest::prelude::*;
use slicereg::zeros::ZERO_TOL;
use slicereg::{factor_at_sphere, sphere_zero_locate, zero_report, ImaginaryUnit, QPoly, Quaternion, RealPoly, Sphere};

/// `c [(q - x)^2 + y^2]^m (q - p_1) * ... * (q - p_n)` on one sphere.
fn constructed(s: Sphere, m: usize, units: &[ImaginaryUnit], c: Quaternion) -> (QPoly, Vec<Quaternion>) {
    let points: Vec<Quaternion> = units.iter().map(|&u| s.point(u)).collect();
    let f = chain(&points).mul_real(&RealPoly::central(s).pow(m)).left_mul(c);
    (f, points)
}

fn structured() -> impl Strategy<Value = (QPoly, Vec<(Sphere, usize, usize)>)> {
    (
        two_spheres(),
        0..=1usize,
        1..=2usize,
        0..=1usize,
        prop::collection::vec(unit(), 4),
        nonzero_quaternion(),
    )
        .prop_map(|((s1, s2), m1, n1, m2, units, c)| {
            let n2 = if m2 == 0 { 1 } else { 0 };
            let (f1, _) = constructed(s1, m1, &units[..n1], c);
            let (f2, _) = constructed(s2, m2, &units[2..2 + n2], Quaternion::ONE);
            (f2.star_mul(&f1), vec![(s1, m1, n1), (s2, m2, n2)])
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn degree_is_accounted_for((f, layout) in structured()) {
        let r = zero_report(&f).unwrap();
        prop_assert_eq!(r.accounted, r.degree);
        for (s, m, n) in layout {
            let z = r.zeros.iter().find(|z| z.sphere.approx_eq(&s, 1e-6)).unwrap();
            prop_assert_eq!((z.spherical, z.isolated()), (2 * m, n));
        }
    }

    #[test]
    fn conjugate_has_matching_zero_kinds(f in poly(5), (f2, layout) in structured()) {
        for g in [f, f2] {
            let spheres = slicereg::zeros::real_roots_with_spheres(&g.symmetrize().unwrap()).unwrap();
            for s in spheres.into_iter().map(|(s, _)| s).chain(layout.iter().map(|l| l.0)) {
                let a = sphere_zero_locate(&g, s, ZERO_TOL);
                let b = sphere_zero_locate(&g.conj(), s, ZERO_TOL);
                prop_assert!(a.same_kind(&b), "{s}: {a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn spherical_multiplicity_is_twice_the_lesser_classical(
        s in sphere(),
        m in 0..=2usize,
        units in prop::collection::vec(unit(), 0..=2),
        probe in unit(),
        c in nonzero_quaternion(),
    ) {
        prop_assume!(m > 0 || !units.is_empty());
        let (f, points) = constructed(s, m, &units, c);
        let r = zero_report(&f).unwrap();
        let z = &r.zeros[0];
        let p = points.first().copied().unwrap_or_else(|| s.point(probe));
        let mp = f.classical_multiplicity(p, ZERO_TOL).unwrap();
        let mq = f.classical_multiplicity(p.conj(), ZERO_TOL).unwrap();
        prop_assert_eq!(z.spherical, 2 * mp.min(mq));
        if mp > mq {
            prop_assert!(z.isolated() >= mp - mq);
        }
    }

    #[test]
    fn factorization_reconstructs(f in poly(5), (f2, layout) in structured()) {
        let mut cases = vec![];
        for (s, _) in slicereg::zeros::real_roots_with_spheres(&f.symmetrize().unwrap()).unwrap() {
            cases.push((f.clone(), s));
        }
        for (s, _, _) in layout {
            cases.push((f2.clone(), s));
        }
        for (g, s) in cases {
            let fac = factor_at_sphere(&g, s, ZERO_TOL).unwrap();
            let back = fac.reconstruct();
            prop_assert!(back.max_coeff_diff(&g) <= 1e-8 * g.norm1(), "{s}");
        }
    }
}

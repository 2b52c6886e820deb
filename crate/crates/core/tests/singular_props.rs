mod common;

use common::*;
use proptest::prelude::*;
use slicereg::{
    classify_singularity, default_radius, laurent_extract, pole_order_at, pole_report, Quaternion, RealPoly,
    SemiRegular, Singularity,
};

/// `(q - c)^{-k} [(q - x)^2 + y^2]^{-1} g` with `g(c) != 0`.
fn real_pole() -> impl Strategy<Value = (SemiRegular, f64, usize)> {
    (-1.5..1.5f64, 1..=3usize, sphere(), poly(3)).prop_filter_map("numerator vanishes at the pole", |(c, k, s, g)| {
        if g.eval(Quaternion::real(c)).norm() < 0.1 * g.norm1() || s.y < 0.5 {
            return None;
        }
        let den = &RealPoly::linear(c).pow(k) * &RealPoly::central(s);
        Some((SemiRegular::new(den, g).ok()?, c, k))
    })
}

fn random_quotient() -> impl Strategy<Value = SemiRegular> {
    (
        two_spheres(),
        1..=2usize,
        1..=2usize,
        prop::collection::vec(unit(), 4),
        0..=2usize,
        0..=2usize,
        poly(2),
    )
        .prop_map(|((s1, s2), k1, k2, units, n1, n2, g)| {
            let den = &RealPoly::central(s1).pow(k1) * &RealPoly::central(s2).pow(k2);
            let mut pts: Vec<Quaternion> = units[..n1].iter().map(|&u| s1.point(u)).collect();
            pts.extend(units[2..2 + n2].iter().map(|&u| s2.point(u)));
            SemiRegular::new(den, chain(&pts).star_mul(&g)).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn real_center_coefficients_ignore_the_slice((h, c, _) in real_pole(), i in unit(), j in unit()) {
        let center = Quaternion::real(c);
        let r = default_radius(&h, center, i).unwrap();
        let a = laurent_extract(&h, center, i, r, 10).unwrap();
        let b = laurent_extract(&h, center, j, r, 10).unwrap();
        let scale = (-10..=10).map(|n| a.coeff(n).norm() * r.powi(n as i32)).fold(1.0, f64::max);
        for n in -10..=10i64 {
            prop_assert!((a.coeff(n) - b.coeff(n)).norm() * r.powi(n as i32) <= 1e-8 * scale, "a_{n}");
        }
    }

    #[test]
    fn classification_matches_algebraic_order((h, c, k) in real_pole(), i in unit()) {
        let center = Quaternion::real(c);
        let order = pole_order_at(&h, center).unwrap();
        prop_assert_eq!(order, k);
        let r = default_radius(&h, center, i).unwrap();
        let e = laurent_extract(&h, center, i, r, 12).unwrap();
        prop_assert_eq!(classify_singularity(&e, 1e-9).kind, Singularity::Pole(order));
    }

    #[test]
    fn values_blow_up_at_real_poles((h, c, k) in real_pole(), i in unit()) {
        let u = i.as_quaternion();
        let at = |t: f64| h.eval(Quaternion::real(c) + u * t).unwrap().norm();
        let t = 2e-3;
        // three dyadic steps towards the pole multiply |h| by about 8^k
        let growth = at(t / 8.0) / at(t);
        prop_assert!(growth >= 0.9 * 8f64.powi(k as i32), "growth {growth}");
        if k >= 2 {
            prop_assert!(growth >= 10.0);
        }
    }

    #[test]
    fn at_most_one_point_of_lesser_order(h in random_quotient(), probes in prop::collection::vec(unit(), 16)) {
        let report = pole_report(&h).unwrap();
        for sp in &report.spheres {
            let bound = h.den().multiplicity_of(&RealPoly::central(sp.sphere), 1e-7);
            let mut lesser: Vec<Quaternion> = vec![];
            let points = sp.chain.iter().flat_map(|p| [*p, p.conj()]).chain(probes.iter().map(|&u| sp.sphere.point(u)));
            for p in points {
                let o = pole_order_at(&h, p).unwrap();
                prop_assert!(o <= sp.generic_order);
                prop_assert!(o <= bound);
                if o < sp.generic_order && !lesser.iter().any(|l| l.approx_eq(&p, 1e-6)) {
                    lesser.push(p);
                }
            }
            prop_assert!(lesser.len() <= 1);
        }
    }

    #[test]
    fn polynomials_are_pole_free(f in poly(4), i in unit()) {
        let e = laurent_extract(&f, Quaternion::ZERO, i, 1.0, 8).unwrap();
        prop_assert_eq!(classify_singularity(&e, 1e-9).kind, Singularity::Pole(0));
        let h = SemiRegular::from_poly(f);
        prop_assert!(pole_report(&h).unwrap().spheres.is_empty());
        prop_assert_eq!(pole_order_at(&h, Quaternion::J).unwrap(), 0);
    }
}

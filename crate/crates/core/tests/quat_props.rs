mod common;

use common::*;
use proptest::prelude::*;
use slicereg::{perp_unit, sphere_of, split, unsplit};

proptest! {
    #[test]
    fn multiplication_is_associative(a in quaternion(), b in quaternion(), c in quaternion()) {
        let l = (a * b) * c;
        let r = a * (b * c);
        prop_assert!((l - r).norm() <= 1e-12 * a.norm() * b.norm() * c.norm() + 1e-300);
    }

    #[test]
    fn multiplication_distributes(a in quaternion(), b in quaternion(), c in quaternion()) {
        let scale = a.norm() * (b.norm() + c.norm()) + 1e-300;
        prop_assert!((a * (b + c) - (a * b + a * c)).norm() <= 1e-12 * scale);
        prop_assert!(((b + c) * a - (b * a + c * a)).norm() <= 1e-12 * scale);
    }

    #[test]
    fn conjugation_keeps_the_sphere(q in quaternion(), h in nonzero_quaternion()) {
        let (s, _) = sphere_of(q.conjugate_by(&h).unwrap());
        let (t, _) = sphere_of(q);
        prop_assert!(s.approx_eq(&t, 1e-10 * q.norm().max(1.0)));
    }

    #[test]
    fn split_round_trips(q in quaternion(), i in unit()) {
        let j = perp_unit(i);
        let back = unsplit(split(q, i, j).unwrap(), i, j);
        prop_assert!(rel_diff(back, q) <= 1e-12);
    }
}

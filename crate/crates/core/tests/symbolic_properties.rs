mod common;

use algk_core::symbolic::Scalar;
use common::{nonzero_poly, poly};
use num_rational::BigRational;
use proptest::prelude::*;

fn at(s: &Scalar, x: i64, y: i64, z: i64) -> Option<BigRational> {
    s.eval(&|atom| {
        let v = match atom.to_string().as_str() {
            "x" => x,
            "y" => y,
            "z" => z,
            _ => return None,
        };
        Some(BigRational::from_integer(v.into()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn canonical_quotients(a in poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let q1 = (&a * &c).checked_div(&(&b * &c)).unwrap();
        let q2 = a.checked_div(&b).unwrap();
        prop_assert_eq!(&q1, &q2);
        prop_assert_eq!(&q2 * &b, a);
    }

    // Numerical oracle: canonical forms agree with evaluation at points
    // away from the poles.
    #[test]
    fn evaluation_agrees(a in poly(), b in nonzero_poly(), p in (-4i64..5, -4i64..5, -4i64..5)) {
        let q = a.checked_div(&b).unwrap();
        if let (Some(vb), Some(vq)) = (at(&b, p.0, p.1, p.2), at(&q, p.0, p.1, p.2)) {
            prop_assert_eq!(vq * vb, at(&a, p.0, p.1, p.2).unwrap());
        }
    }

    #[test]
    fn product_and_quotient_rules(a in poly(), b in nonzero_poly()) {
        let lhs = (&a * &b).partial("x");
        let rhs = &(&a.partial("x") * &b) + &(&a * &b.partial("x"));
        prop_assert_eq!(lhs, rhs);
        let q = a.checked_div(&b).unwrap().partial("y");
        let num = &(&a.partial("y") * &b) - &(&a * &b.partial("y"));
        prop_assert_eq!(q, num.checked_div(&(&b * &b)).unwrap());
    }

    #[test]
    fn opaque_partials_commute(a in poly()) {
        let f = &Scalar::opaque("f") * &a;
        prop_assert_eq!(f.partial("x").partial("y"), f.partial("y").partial("x"));
    }
}

//! Random polynomial and form generators shared by the property tests.

#![allow(dead_code)]

use algk_core::exterior::{Frame, GradedElement};
use algk_core::symbolic::Scalar;
use proptest::prelude::*;

pub const COORDS: [&str; 3] = ["x", "y", "z"];

/// Polynomials with small integer coefficients in x, y, z and degree <= 2
/// per variable.
pub fn poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-3i64..=3, 0u8..3, 0u8..3, 0u8..3), 0..4).prop_map(|terms| {
        let mut acc = Scalar::zero();
        for (c, a, b, d) in terms {
            let mut t = Scalar::from_int(c);
            for (v, e) in COORDS.iter().zip([a, b, d]) {
                for _ in 0..e {
                    t = &t * &Scalar::coord(v);
                }
            }
            acc = &acc + &t;
        }
        acc
    })
}

pub fn nonzero_poly() -> impl Strategy<Value = Scalar> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

/// Element of the given degree with polynomial coefficients.
pub fn element(frame: Frame, degree: usize) -> impl Strategy<Value = GradedElement> {
    let n = frame.rank();
    let subsets: Vec<Vec<usize>> = algk_core::algebroid::combinations(n, degree);
    let k = subsets.len();
    prop::collection::vec(poly(), k).prop_map(move |coeffs| {
        let mut acc = GradedElement::zero(&frame, degree);
        for (idx, c) in subsets.iter().zip(coeffs) {
            acc = acc.add(&GradedElement::monomial(&frame, idx, c));
        }
        acc
    })
}

use algk_core::algebroid::LieAlgebroid;
use algk_core::exterior::{Frame, Side};
use algk_core::symbolic::{ChartSpec, Scalar};
use algk_core::tduality::{atiyah_algebroid, BundleSpec};

/// Atiyah-type algebroid on a 3-chart with twist `[h_i, h_j] = -F_ij @t`.
fn twisted(f: [[Scalar; 3]; 3]) -> LieAlgebroid {
    let chart = ChartSpec::base(&["x", "y", "z"]).unwrap();
    let frame = Frame::new(&["@t", "h_x", "h_y", "h_z"], Side::Vector).unwrap();
    let mut anchor = vec![vec![Scalar::zero(); 3]; 4];
    for (i, row) in anchor.iter_mut().skip(1).enumerate() {
        row[i] = Scalar::one();
    }
    let mut c = vec![vec![vec![Scalar::zero(); 4]; 4]; 4];
    for i in 0..3 {
        for j in 0..3 {
            c[i + 1][j + 1][0] = -f[i][j].clone();
        }
    }
    LieAlgebroid::new("twisted", chart, frame, anchor, c).unwrap()
}

fn two_form(xy: Scalar, yz: Scalar, zx: Scalar) -> [[Scalar; 3]; 3] {
    let z = Scalar::zero();
    [
        [z.clone(), xy.clone(), -zx.clone()],
        [-xy, z.clone(), yz.clone()],
        [zx, -yz, z],
    ]
}

#[test]
fn closed_twist_is_an_algebroid() {
    // F = d(x dy) = dx^dy and F = d(y z dx) = z dy^dx + y dz^dx.
    assert!(twisted(two_form(Scalar::one(), Scalar::zero(), Scalar::zero())).check_axioms().passed());
    let (y, z) = (Scalar::coord("y"), Scalar::coord("z"));
    assert!(twisted(two_form(-z, Scalar::zero(), y)).check_axioms().passed());
}

#[test]
fn non_closed_twist_breaks_jacobi() {
    // F = x dy^dz has dF = dx^dy^dz.
    let r = twisted(two_form(Scalar::zero(), Scalar::coord("x"), Scalar::zero())).check_axioms();
    let jacobi = r.find("Jacobi (h_x,h_y,h_z)").unwrap();
    assert!(jacobi.residual.is_some());
    assert!(r.find("anchor morphism [h_y,h_z]").unwrap().residual.is_none());
}

/// A vertical structure function only feeds the kernel of the anchor; on a
/// surface every twist is closed, so changing it keeps the axioms intact.
#[test]
fn vertical_perturbation_on_a_surface_stays_an_algebroid() {
    let chart = ChartSpec::base(&["x", "y"]).unwrap();
    let total = chart.with_fiber(&["theta"]).unwrap();
    let fr = LieAlgebroid::tangent_total(&total).dual_frame();
    let a = algk_core::exterior::GradedElement::generator(&fr, 2)
        .add(&algk_core::exterior::GradedElement::monomial(&fr, &[1], Scalar::coord("x")));
    let e = BundleSpec::new("E", &chart, "theta", &a, None, None).unwrap();
    let l = atiyah_algebroid(&e);
    assert!(l.perturbed(1, 2, 0, &Scalar::coord("x")).check_axioms().passed());
    assert!(!l.perturbed(1, 2, 1, &Scalar::coord("x")).check_axioms().passed());
}

//! Sign conventions in force, each with a value recomputed by the engine.

use std::fmt;

use serde::Serialize;

use crate::algebroid::LieAlgebroid;
use crate::bialgebroid::{BialgebroidCandidate, CourantDouble};
use crate::exterior::{GradedElement, PairingMatrix};
use crate::symbolic::{ChartSpec, Scalar};
use crate::tduality::{
    atiyah_algebroid, duality_pairing, lemma_sign, BundleSpec, CorrespondenceSpace, Splitting,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub quantity: String,
    pub convention: String,
    /// Instance the engine evaluates, and the result it got.
    pub example: String,
    pub computed: String,
}

fn entry(quantity: &str, convention: &str, example: &str, computed: impl ToString) -> LedgerEntry {
    LedgerEntry {
        quantity: quantity.into(),
        convention: convention.into(),
        example: example.into(),
        computed: computed.to_string(),
    }
}

fn torus_pair() -> (BundleSpec, BundleSpec) {
    let chart = ChartSpec::base(&["x", "y"]).expect("distinct coordinates");
    let mk = |fiber: &str| {
        let total = chart.with_fiber(&[fiber]).expect("fresh fiber");
        let frame = LieAlgebroid::tangent_total(&total).dual_frame();
        let a = GradedElement::generator(&frame, 2)
            .add(&GradedElement::monomial(&frame, &[1], Scalar::coord("x")));
        let area = GradedElement::monomial(&LieAlgebroid::tangent(&chart).dual_frame(), &[0, 1], Scalar::one());
        BundleSpec::new(fiber, &chart, fiber, &a, None, None)
            .and_then(|b| b.with_flux_decomposition(&area, None))
            .expect("torus data is consistent")
    };
    (mk("theta"), mk("phi"))
}

/// Computes the table. Every value comes from the same code paths the
/// checks use, so a changed convention shows up here.
pub fn sign_ledger() -> Vec<LedgerEntry> {
    let chart = ChartSpec::base(&["x", "y"]).expect("distinct coordinates");
    let t = LieAlgebroid::tangent(&chart);
    let co = t.dual_frame();
    let mut out = Vec::new();

    let form = GradedElement::monomial(&co, &[0, 1], Scalar::one());
    let bivec = GradedElement::monomial(t.frame(), &[0, 1], Scalar::one());
    let pairing = GradedElement::full_pair(&form, &bivec, &PairingMatrix::identity(2)).expect("same degree");
    out.push(entry(
        "k-form pairing",
        "<e^I, e_J> = det of degree-1 pairings, no 1/k!",
        "<dx^dy, @x^@y>",
        pairing,
    ));

    let x_dy = GradedElement::monomial(t.frame(), &[1], Scalar::coord("x"));
    let sch = t.schouten(&t.generator(0), &x_dy).expect("vector fields");
    out.push(entry(
        "Schouten bracket",
        "[X, f] = a(X) f; graded Leibniz, degree -1",
        "[@x, x @y]",
        sch,
    ));

    let pi = vec![vec![Scalar::zero(), Scalar::one()], vec![Scalar::from_int(-1), Scalar::zero()]];
    let std = BialgebroidCandidate::standard(&chart, &pi).expect("standard data");
    let (x, y) = (Scalar::coord("x"), Scalar::coord("y"));
    out.push(entry("A*-differential", "d_* f = [pi, f]", "d_* x for pi = @x^@y", std.d_star_scalar(&x)));
    out.push(entry(
        "Poisson bracket",
        "{f, g} = <df, d_* g> = pi(df, dg)",
        "{x, y} for pi = @x^@y",
        std.induced_poisson_bracket(&x, &y).expect("bialgebroid"),
    ));
    out.push(entry(
        "Hamiltonian field",
        "X_f + d_* f = 0",
        "X_x for pi = @x^@y",
        std.hamiltonian_field(&x).expect("bialgebroid"),
    ));
    let double = CourantDouble::new_unchecked(std);
    let u = double.section(0, Scalar::one());
    let v = double.section(2, Scalar::one());
    out.push(entry(
        "Courant pairing",
        "<x + a, y + b> = a(y) + b(x), no 1/2",
        "<@x, dx>",
        double.pairing(&u, &v),
    ));

    let (e, eh) = torus_pair();
    out.push(entry("curvature", "F = dA", "A = dtheta + x dy", e.curvature()));
    let l = atiyah_algebroid(&e);
    out.push(entry(
        "Atiyah twist",
        "[h_i, h_j] = -F_ij @theta",
        "c^theta_xy on the torus",
        l.structure_function(1, 2, 0),
    ));
    match CorrespondenceSpace::new(&e, &eh) {
        Ok(cs) => out.push(entry("correspondence 2-form", "Phi = -A ^ A^", "torus pair", cs.phi())),
        Err(err) => out.push(entry("correspondence 2-form", "Phi = -A ^ A^", "torus pair", err)),
    }
    let p = duality_pairing(&e, &eh, Splitting::Connection).map_or_else(|e| e.to_string(), |p| p.to_string());
    out.push(entry(
        "duality pairing",
        "<<@theta, @phi>> = -1, <<h_i, h^_j>> = F_ij (connection splitting)",
        "torus pair",
        p,
    ));
    let sign = match lemma_sign(&e, &eh, Splitting::Connection) {
        Ok(Some(s)) => format!("d f = {}X_f", if s < 0 { "-" } else { "+" }),
        Ok(None) => "neither sign holds".into(),
        Err(err) => err.to_string(),
    };
    out.push(entry("Lemma sign", "i_{X_f} F = df", "torus pair, connection splitting", sign));
    out
}

/// Plain-text rendering of the ledger.
pub struct LedgerTable<'a>(pub &'a [LedgerEntry]);

impl fmt::Display for LedgerTable<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.0.iter().map(|e| e.quantity.len()).max().unwrap_or(0);
        writeln!(f, "sign conventions")?;
        for e in self.0 {
            writeln!(f, "  {:w$}  {}", e.quantity, e.convention)?;
            writeln!(f, "  {:w$}    {} = {}", "", e.example, e.computed)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ledger_values() {
        let l = sign_ledger();
        let get = |q: &str| l.iter().find(|e| e.quantity == q).unwrap().computed.clone();
        assert_eq!(get("k-form pairing"), "1");
        assert_eq!(get("Poisson bracket"), "1");
        assert_eq!(get("Atiyah twist"), "-1");
        assert_eq!(get("Courant pairing"), "1");
        assert_eq!(get("Lemma sign"), "d f = -X_f");
    }
}

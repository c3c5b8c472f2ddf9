//! Lie bialgebroid compatibility, induced Poisson brackets and the Courant double.
//!
//! A candidate pairs two algebroids `A` and `A_star` on the same base with a
//! matrix `P[i][j] = <e_i of A_star, e_j of A>`. Sections of `A` are moved to
//! forms over `A_star` through `P`, and back through `P^-1`.

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebroid::{AlgebroidError, LieAlgebroid};
use crate::exterior::{ExteriorError, GradedElement, PairingMatrix};
use crate::report::{CheckReport, Residual};
use crate::symbolic::{ChartSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BialgebroidError {
    #[error(transparent)]
    Algebroid(#[from] AlgebroidError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error("degenerate pairing: {0}")]
    DegeneratePairing(String),
    #[error("not a Lie bialgebroid: {0}")]
    NotABialgebroid(String),
    #[error("algebroids have different anchor coordinates")]
    BaseMismatch,
}

const DERIVATION: &str = "derivation of the Schouten algebra";
const POISSON: &str = "induced Poisson structure";
const COURANT: &str = "Courant algebroid axioms";

#[derive(Clone, Debug)]
pub struct BialgebroidCandidate {
    a: LieAlgebroid,
    a_star: LieAlgebroid,
    pairing: PairingMatrix,
    inverse: PairingMatrix,
    verdict: OnceLock<Result<(), String>>,
}

fn columns(m: &PairingMatrix) -> Vec<Vec<Scalar>> {
    m.transpose().entries().to_vec()
}

impl BialgebroidCandidate {
    /// `pairing[i][j]` pairs generator `i` of `a_star` with generator `j` of `a`.
    pub fn new(
        a: LieAlgebroid,
        a_star: LieAlgebroid,
        pairing: PairingMatrix,
    ) -> Result<Self, BialgebroidError> {
        let r = a.rank();
        if a_star.rank() != r || pairing.rows() != r || pairing.cols() != r {
            return Err(ExteriorError::PairingShape {
                rows: pairing.rows(),
                cols: pairing.cols(),
                expected: format!("{r}x{r}"),
            }
            .into());
        }
        if a.anchor_coords() != a_star.anchor_coords() {
            return Err(BialgebroidError::BaseMismatch);
        }
        let inverse = pairing.inverse()?.ok_or_else(|| {
            BialgebroidError::DegeneratePairing("pairing determinant is zero".into())
        })?;
        Ok(BialgebroidCandidate {
            a,
            a_star,
            pairing,
            inverse,
            verdict: OnceLock::new(),
        })
    }

    /// `(TM, T*M)` for a bivector `pi` on the base chart.
    pub fn standard(chart: &ChartSpec, pi: &[Vec<Scalar>]) -> Result<Self, BialgebroidError> {
        let a = LieAlgebroid::tangent(chart);
        let a_star = LieAlgebroid::cotangent(chart, pi)?;
        let n = a.rank();
        BialgebroidCandidate::new(a, a_star, PairingMatrix::identity(n))
    }

    pub fn a(&self) -> &LieAlgebroid {
        &self.a
    }

    pub fn a_star(&self) -> &LieAlgebroid {
        &self.a_star
    }

    pub fn pairing(&self) -> &PairingMatrix {
        &self.pairing
    }

    pub fn rank(&self) -> usize {
        self.a.rank()
    }

    /// The same data with the roles of `A` and `A_star` exchanged.
    pub fn swapped(&self) -> BialgebroidCandidate {
        BialgebroidCandidate::new(self.a_star.clone(), self.a.clone(), self.pairing.transpose())
            .expect("transpose of an invertible pairing")
    }

    /// Same algebroids, `A_star` replaced (for negative tests).
    pub fn with_a_star(&self, a_star: LieAlgebroid) -> BialgebroidCandidate {
        BialgebroidCandidate::new(self.a.clone(), a_star, self.pairing.clone())
            .expect("same shape as the original")
    }

    /// Section of `A` to a form over `A_star`.
    pub fn a_to_star_form(&self, u: &GradedElement) -> GradedElement {
        u.transport(&self.a_star.dual_frame(), &columns(&self.pairing))
    }

    /// Form over `A_star` to a section of `A`.
    pub fn star_form_to_a(&self, w: &GradedElement) -> GradedElement {
        w.transport(self.a.frame(), &columns(&self.inverse))
    }

    /// Section of `A_star` to a form over `A`.
    pub fn star_to_a_form(&self, w: &GradedElement) -> GradedElement {
        w.transport(&self.a.dual_frame(), self.pairing.entries())
    }

    /// Form over `A` to a section of `A_star`.
    pub fn a_form_to_star(&self, w: &GradedElement) -> GradedElement {
        w.transport(self.a_star.frame(), self.inverse.entries())
    }

    /// `<alpha, x>` for `alpha` in `A_star` and `x` in `A`.
    pub fn pair(&self, alpha: &GradedElement, x: &GradedElement) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, ai) in alpha.terms() {
            for (j, xj) in x.terms() {
                let p = self.pairing.get(i[0], j[0]);
                if !p.is_zero() {
                    acc = acc + &(ai * xj) * p;
                }
            }
        }
        acc
    }

    /// `d_*` on multivectors of `A`.
    pub fn d_star(&self, u: &GradedElement) -> GradedElement {
        let w = self.a_to_star_form(u);
        let dw = self.a_star.differential(&w).expect("transported onto own frame");
        self.star_form_to_a(&dw)
    }

    /// `d_* f` as a section of `A`.
    pub fn d_star_scalar(&self, f: &Scalar) -> GradedElement {
        self.star_form_to_a(&self.a_star.differential_of_scalar(f))
    }

    /// `d` on multivectors of `A_star`.
    pub fn d(&self, w: &GradedElement) -> GradedElement {
        let u = self.star_to_a_form(w);
        let du = self.a.differential(&u).expect("transported onto own frame");
        self.a_form_to_star(&du)
    }

    /// `d f` as a section of `A_star`.
    pub fn d_scalar(&self, f: &Scalar) -> GradedElement {
        self.a_form_to_star(&self.a.differential_of_scalar(f))
    }

    /// Residual `d_*[x,y] - [d_*x, y] - [x, d_*y]` for degree-1 sections of `A`.
    pub fn derivation_residual(&self, x: &GradedElement, y: &GradedElement) -> GradedElement {
        let lhs = self.d_star(&self.a.schouten_unchecked(x, y));
        let r1 = self.a.schouten_unchecked(&self.d_star(x), y);
        let r2 = self.a.schouten_unchecked(x, &self.d_star(y));
        lhs.sub(&r1).sub(&r2)
    }

    /// Axioms of both algebroids, then the derivation condition on every
    /// pair `(f e_a, g e_b)` with opaque `f`, `g`.
    pub fn check_derivation_condition(&self) -> CheckReport {
        let mut report = CheckReport::new("bialgebroid");
        let ax_a = self.a.check_axioms();
        let ax_s = self.a_star.check_axioms();
        let axioms_ok = ax_a.passed() && ax_s.passed();
        report.absorb(self.a.name(), ax_a);
        report.absorb(self.a_star.name(), ax_s);
        if !axioms_ok {
            let _ = self.verdict.set(Err("algebroid axioms fail".into()));
            return report;
        }
        let r = self.rank();
        let f = Scalar::opaque("f");
        let g = Scalar::opaque("g");
        let pairs: Vec<(usize, usize)> = (0..r).flat_map(|a| (a..r).map(move |b| (a, b))).collect();
        let residuals: Vec<GradedElement> = pairs
            .par_iter()
            .map(|&(a, b)| {
                let x = self.a.section(a, f.clone());
                let y = self.a.section(b, g.clone());
                self.derivation_residual(&x, &y)
            })
            .collect();
        let names = self.a.frame().names();
        for (&(a, b), res) in pairs.iter().zip(&residuals) {
            report.check_zero(
                format!("d_*[f {}, g {}] = [d_* f {0}, g {1}] + [f {0}, d_* g {1}]", names[a], names[b]),
                DERIVATION,
                res,
            );
        }
        let verdict = if report.passed() {
            Ok(())
        } else {
            Err(report.failures().next().map(|e| e.label.clone()).unwrap_or_default())
        };
        let _ = self.verdict.set(verdict);
        report
    }

    /// Cached outcome of [`BialgebroidCandidate::check_derivation_condition`].
    pub fn ensure_bialgebroid(&self) -> Result<(), BialgebroidError> {
        if self.verdict.get().is_none() {
            self.check_derivation_condition();
        }
        match self.verdict.get().expect("set by the check") {
            Ok(()) => Ok(()),
            Err(e) => Err(BialgebroidError::NotABialgebroid(e.clone())),
        }
    }

    /// `{f, g} = <df, d_* g>`, computed without checking compatibility.
    pub fn poisson_bracket_unchecked(&self, f: &Scalar, g: &Scalar) -> Scalar {
        let df = self.a.differential_of_scalar(f);
        let dsg = self.d_star_scalar(g);
        df.vector_coefficients()
            .iter()
            .zip(dsg.vector_coefficients())
            .map(|(a, b)| a * &b)
            .sum()
    }

    pub fn induced_poisson_bracket(&self, f: &Scalar, g: &Scalar) -> Result<Scalar, BialgebroidError> {
        self.ensure_bialgebroid()?;
        Ok(self.poisson_bracket_unchecked(f, g))
    }

    /// `X_f = -d_* f`.
    pub fn hamiltonian_field(&self, f: &Scalar) -> Result<GradedElement, BialgebroidError> {
        self.ensure_bialgebroid()?;
        Ok(self.d_star_scalar(f).neg())
    }

    /// Antisymmetry, Leibniz, Jacobi of the induced bracket and
    /// `d{f,g} = [df, dg]_*`, all with opaque functions.
    pub fn check_poisson(&self) -> CheckReport {
        let mut report = CheckReport::new("poisson-jacobi");
        if let Err(e) = self.ensure_bialgebroid() {
            report.fail("bialgebroid precondition", POISSON, e.to_string());
            return report;
        }
        let f = Scalar::opaque("f");
        let g = Scalar::opaque("g");
        let h = Scalar::opaque("h");
        let br = |a: &Scalar, b: &Scalar| self.poisson_bracket_unchecked(a, b);
        report.check_zero("{f,g} + {g,f} = 0", POISSON, &(br(&f, &g) + br(&g, &f)));
        report.check_zero(
            "{f,gh} = g{f,h} + h{f,g}",
            POISSON,
            &(br(&f, &(&g * &h)) - &g * &br(&f, &h) - &h * &br(&f, &g)),
        );
        let (fg, gh, hf) = (br(&f, &g), br(&g, &h), br(&h, &f));
        let jac = br(&fg, &h) + br(&gh, &f) + br(&hf, &g);
        report.check_zero("{{f,g},h} + {{g,h},f} + {{h,f},g} = 0", POISSON, &jac);
        let lhs = self.d_scalar(&fg);
        let rhs = self
            .a_star
            .bracket(&self.d_scalar(&f), &self.d_scalar(&g))
            .expect("sections of A_star");
        report.check_zero("d{f,g} = [df, dg]_*", POISSON, &lhs.sub(&rhs));
        let xfg = self.d_star_scalar(&(&f * &g)).neg();
        let split = self
            .d_star_scalar(&g)
            .scale(&f)
            .add(&self.d_star_scalar(&f).scale(&g))
            .neg();
        report.check_zero("X_{fg} = f X_g + g X_f", POISSON, &xfg.sub(&split));
        report
    }
}

/// A section `x + alpha` of the double, `x` in `A` and `alpha` in `A_star`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleSection {
    pub x: GradedElement,
    pub alpha: GradedElement,
}

impl DoubleSection {
    pub fn add(&self, o: &DoubleSection) -> DoubleSection {
        DoubleSection {
            x: self.x.add(&o.x),
            alpha: self.alpha.add(&o.alpha),
        }
    }

    pub fn sub(&self, o: &DoubleSection) -> DoubleSection {
        DoubleSection {
            x: self.x.sub(&o.x),
            alpha: self.alpha.sub(&o.alpha),
        }
    }

    pub fn scale(&self, s: &Scalar) -> DoubleSection {
        DoubleSection {
            x: self.x.scale(s),
            alpha: self.alpha.scale(s),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.alpha.is_zero()
    }
}

impl fmt::Display for DoubleSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})", self.x, self.alpha)
    }
}

impl Residual for DoubleSection {
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

/// `A + A*` with pairing `beta(x) + alpha(y)`, anchor `a + a_*` and the
/// bracket
/// `[[x+alpha, y+beta]] = [x,y] + L_alpha y - i_beta d_* x + [alpha,beta]_* + L_x beta - i_y d alpha`.
#[derive(Clone, Debug)]
pub struct CourantDouble {
    c: BialgebroidCandidate,
}

impl CourantDouble {
    pub fn new(c: BialgebroidCandidate) -> Result<Self, BialgebroidError> {
        c.ensure_bialgebroid()?;
        Ok(CourantDouble { c })
    }

    /// Builds the double without checking compatibility.
    pub fn new_unchecked(c: BialgebroidCandidate) -> Self {
        CourantDouble { c }
    }

    pub fn candidate(&self) -> &BialgebroidCandidate {
        &self.c
    }

    pub fn rank(&self) -> usize {
        2 * self.c.rank()
    }

    pub fn zero(&self) -> DoubleSection {
        DoubleSection {
            x: GradedElement::zero(self.c.a.frame(), 1),
            alpha: GradedElement::zero(self.c.a_star.frame(), 1),
        }
    }

    pub fn from_a(&self, x: GradedElement) -> DoubleSection {
        DoubleSection { x, ..self.zero() }
    }

    pub fn from_a_star(&self, alpha: GradedElement) -> DoubleSection {
        DoubleSection { alpha, ..self.zero() }
    }

    /// `f` times generator `i`; `A` generators first, then `A_star`.
    pub fn section(&self, i: usize, f: Scalar) -> DoubleSection {
        let r = self.c.rank();
        if i < r {
            self.from_a(self.c.a.section(i, f))
        } else {
            self.from_a_star(self.c.a_star.section(i - r, f))
        }
    }

    pub fn label(&self, i: usize) -> &str {
        let r = self.c.rank();
        if i < r {
            &self.c.a.frame().names()[i]
        } else {
            &self.c.a_star.frame().names()[i - r]
        }
    }

    pub fn pairing(&self, u: &DoubleSection, v: &DoubleSection) -> Scalar {
        self.c.pair(&v.alpha, &u.x) + self.c.pair(&u.alpha, &v.x)
    }

    pub fn anchor(&self, u: &DoubleSection) -> Vec<Scalar> {
        let ax = self.c.a.anchor_of(&u.x).expect("section of A");
        let aa = self.c.a_star.anchor_of(&u.alpha).expect("section of A_star");
        ax.iter().zip(&aa).map(|(p, q)| p + q).collect()
    }

    /// `D f = d_* f + d f`.
    pub fn d_total(&self, f: &Scalar) -> DoubleSection {
        DoubleSection {
            x: self.c.d_star_scalar(f),
            alpha: self.c.d_scalar(f),
        }
    }

    pub fn bracket(&self, u: &DoubleSection, v: &DoubleSection) -> DoubleSection {
        let c = &self.c;
        let (a, s) = (&c.a, &c.a_star);

        let mut x = a.bracket(&u.x, &v.x).expect("sections of A");
        if !u.alpha.is_zero() {
            let yw = c.a_to_star_form(&v.x);
            let l = s.lie_derivative(&u.alpha, &yw).expect("A_star form");
            x = x.add(&c.star_form_to_a(&l));
        }
        if !v.alpha.is_zero() && !u.x.is_zero() {
            let beta = c.star_to_a_form(&v.alpha);
            let dsx = c.d_star(&u.x);
            x = x.sub(&GradedElement::contract(&beta, &dsx).expect("opposite sides"));
        }

        let mut alpha = s.bracket(&u.alpha, &v.alpha).expect("sections of A_star");
        let mut form = GradedElement::zero(&a.dual_frame(), 1);
        if !v.alpha.is_zero() {
            let beta = c.star_to_a_form(&v.alpha);
            form = form.add(&a.lie_derivative(&u.x, &beta).expect("A form"));
        }
        if !u.alpha.is_zero() && !v.x.is_zero() {
            let da = a.differential(&c.star_to_a_form(&u.alpha)).expect("A form");
            form = form.sub(&GradedElement::contract(&v.x, &da).expect("opposite sides"));
        }
        alpha = alpha.add(&c.a_form_to_star(&form));
        DoubleSection { x, alpha }
    }

    /// Dorfman-form axioms on generators with opaque coefficients:
    /// anchor morphism, `a o D = 0`, invariance of the pairing, the symmetric
    /// part `[[u,v]] + [[v,u]] = D<u,v>` and the Leibniz form of Jacobi.
    pub fn check_courant_axioms(&self) -> CheckReport {
        let mut report = CheckReport::new("courant");
        let n = self.rank();
        let f = Scalar::opaque("f");
        let g = Scalar::opaque("g");
        let h = Scalar::opaque("h");

        let ad = self.anchor(&self.d_total(&f));
        report.check_zero("anchor(D f) = 0", COURANT, &ad);

        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let pair_res: Vec<(Vec<Scalar>, DoubleSection)> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let u = self.section(i, f.clone());
                let v = self.section(j, g.clone());
                let uv = self.bracket(&u, &v);
                let lhs = self.anchor(&uv);
                let rhs = self
                    .c
                    .a
                    .field_bracket(&self.anchor(&u), &self.anchor(&v));
                let morph: Vec<Scalar> = lhs.iter().zip(&rhs).map(|(p, q)| p - q).collect();
                let sym = uv
                    .add(&self.bracket(&v, &u))
                    .sub(&self.d_total(&self.pairing(&u, &v)));
                (morph, sym)
            })
            .collect();
        for (&(i, j), (morph, _)) in pairs.iter().zip(&pair_res) {
            report.check_zero(
                format!("anchor[[f {}, g {}]] = [anchor, anchor]", self.label(i), self.label(j)),
                COURANT,
                morph,
            );
        }
        for (&(i, j), (_, sym)) in pairs.iter().zip(&pair_res) {
            if i <= j {
                report.check_zero(
                    format!("[[f {0}, g {1}]] + [[g {1}, f {0}]] = D<f {0}, g {1}>", self.label(i), self.label(j)),
                    COURANT,
                    sym,
                );
            }
        }

        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .collect();
        let triple_res: Vec<(Scalar, DoubleSection)> = triples
            .par_iter()
            .map(|&(i, j, k)| {
                let u = self.section(i, f.clone());
                let v = self.section(j, g.clone());
                let w = self.section(k, h.clone());
                let inv = if j <= k {
                    let lhs = self.c.a.apply_field(&self.anchor(&u), &self.pairing(&v, &w));
                    lhs - self.pairing(&self.bracket(&u, &v), &w)
                        - self.pairing(&v, &self.bracket(&u, &w))
                } else {
                    Scalar::zero()
                };
                let jac = self
                    .bracket(&u, &self.bracket(&v, &w))
                    .sub(&self.bracket(&self.bracket(&u, &v), &w))
                    .sub(&self.bracket(&v, &self.bracket(&u, &w)));
                (inv, jac)
            })
            .collect();
        for (&(i, j, k), (inv, _)) in triples.iter().zip(&triple_res) {
            if j <= k {
                report.check_zero(
                    format!(
                        "anchor(f {0})<g {1}, h {2}> = <[[f {0}, g {1}]], h {2}> + <g {1}, [[f {0}, h {2}]]>",
                        self.label(i),
                        self.label(j),
                        self.label(k)
                    ),
                    COURANT,
                    inv,
                );
            }
        }
        for (&(i, j, k), (_, jac)) in triples.iter().zip(&triple_res) {
            report.check_zero(
                format!(
                    "Jacobi (f {}, g {}, h {})",
                    self.label(i),
                    self.label(j),
                    self.label(k)
                ),
                COURANT,
                jac,
            );
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn chart2() -> ChartSpec {
        ChartSpec::base(&["x", "y"]).unwrap()
    }

    fn pi_xy(c: Scalar) -> Vec<Vec<Scalar>> {
        vec![vec![s(0), c.clone()], vec![-c, s(0)]]
    }

    #[test]
    fn standard_passes_and_bracket_is_pi() {
        let c = BialgebroidCandidate::standard(&chart2(), &pi_xy(s(1))).unwrap();
        assert!(c.check_derivation_condition().passed());
        let x = Scalar::coord("x");
        let y = Scalar::coord("y");
        assert_eq!(c.induced_poisson_bracket(&x, &y).unwrap(), s(1));
        assert!(c.induced_poisson_bracket(&x, &x).unwrap().is_zero());
        assert!(c.hamiltonian_field(&s(3)).unwrap().is_zero());
    }

    #[test]
    fn zero_poisson_passes() {
        let c = BialgebroidCandidate::standard(&chart2(), &pi_xy(s(0))).unwrap();
        assert!(c.check_derivation_condition().passed());
        assert!(c.swapped().check_derivation_condition().passed());
        assert!(CourantDouble::new(c).unwrap().check_courant_axioms().passed());
    }

    #[test]
    fn non_poisson_fails_at_axiom_stage() {
        let chart = ChartSpec::base(&["x", "y", "z"]).unwrap();
        let x = Scalar::coord("x");
        let pi = vec![
            vec![s(0), s(1), s(0)],
            vec![s(-1), s(0), Scalar::coord("y")],
            vec![s(0), -Scalar::coord("y"), s(0)],
        ];
        let c = BialgebroidCandidate::standard(&chart, &pi).unwrap();
        let rep = c.check_derivation_condition();
        assert!(!rep.passed());
        assert!(rep.failures().all(|e| e.anchor == "Lie algebroid axioms"));
        assert!(matches!(
            c.induced_poisson_bracket(&x, &x),
            Err(BialgebroidError::NotABialgebroid(_))
        ));
    }

    #[test]
    fn degenerate_pairing_rejected() {
        let chart = chart2();
        let t = LieAlgebroid::tangent(&chart);
        let p = PairingMatrix::new(vec![vec![s(1), s(1)], vec![s(1), s(1)]]);
        assert!(matches!(
            BialgebroidCandidate::new(t.clone(), t, p),
            Err(BialgebroidError::DegeneratePairing(_))
        ));
    }

    #[test]
    fn courant_restrictions_and_mixed_example() {
        let c = BialgebroidCandidate::standard(&chart2(), &pi_xy(Scalar::coord("x"))).unwrap();
        let d = CourantDouble::new(c.clone()).unwrap();
        let f = Scalar::opaque("f");
        let u = d.section(0, f.clone());
        let v = d.section(1, Scalar::opaque("g"));
        assert_eq!(d.bracket(&u, &v), d.from_a(c.a().bracket(&u.x, &v.x).unwrap()));
        let p = d.section(2, f);
        let q = d.section(3, Scalar::opaque("g"));
        assert_eq!(
            d.bracket(&p, &q),
            d.from_a_star(c.a_star().bracket(&p.alpha, &q.alpha).unwrap())
        );
        // pi = x @x^@y: d_* @x = [pi, @x] = -@x^@y, so -i_dx d_* @x = @y.
        let got = d.bracket(&d.section(0, s(1)), &d.section(2, s(1)));
        assert_eq!(got, d.from_a(c.a().generator(1)));
    }

    #[test]
    fn standard_double_passes_and_corruption_fails() {
        let c = BialgebroidCandidate::standard(&chart2(), &pi_xy(Scalar::coord("x"))).unwrap();
        let d = CourantDouble::new(c.clone()).unwrap();
        assert!(d.check_courant_axioms().passed());
        let bad = c.with_a_star(c.a_star().perturbed(0, 1, 0, &Scalar::coord("x")));
        assert!(!CourantDouble::new_unchecked(bad).check_courant_axioms().passed());
    }

    #[test]
    fn poisson_properties() {
        let c = BialgebroidCandidate::standard(&chart2(), &pi_xy(Scalar::coord("x"))).unwrap();
        let rep = c.check_poisson();
        assert!(rep.passed(), "{rep}");
    }
}

//! Lie algebroids on a trivialized bundle over a chart.
//!
//! An algebroid is given by a frame `e_1..e_r`, an anchor matrix
//! `a(e_i) = sum_j a_i^j @_j` and structure functions `[e_a, e_b] = sum_g c_ab^g e_g`.
//! Sections with function coefficients are bracketed with the Leibniz rule.

use rayon::prelude::*;
use thiserror::Error;

use crate::exterior::{ExteriorError, Frame, GradedElement, Side};
use crate::report::CheckReport;
use crate::symbolic::{ChartSpec, Scalar, SymbolicError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebroidError {
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error("anchor matrix must be {rank}x{dim}")]
    AnchorShape { rank: usize, dim: usize },
    #[error("structure functions must be {0}x{0}x{0}")]
    StructureShape(usize),
    #[error("expected degree {expected}, got {got}")]
    Degree { expected: usize, got: usize },
    #[error("frame of {0} does not match the algebroid")]
    FrameMismatch(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebroid {
    name: String,
    chart: ChartSpec,
    frame: Frame,
    anchor_coords: Vec<String>,
    anchor: Vec<Vec<Scalar>>,
    structure: Vec<Vec<Vec<Scalar>>>,
}

/// Increasing `k`-subsets of `0..n`.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

fn sign(p: usize) -> Scalar {
    if p % 2 == 0 {
        Scalar::one()
    } else {
        Scalar::from_int(-1)
    }
}

impl LieAlgebroid {
    /// Anchor rows are indexed by generator, columns by base coordinate.
    pub fn new(
        name: impl Into<String>,
        chart: ChartSpec,
        frame: Frame,
        anchor: Vec<Vec<Scalar>>,
        structure: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self, AlgebroidError> {
        let coords = chart.base_coords().to_vec();
        LieAlgebroid::with_anchor_coords(name, chart, frame, coords, anchor, structure)
    }

    /// Like [`LieAlgebroid::new`] but anchoring into an explicit list of
    /// chart coordinates (fiber coordinates allowed).
    pub fn with_anchor_coords(
        name: impl Into<String>,
        chart: ChartSpec,
        frame: Frame,
        anchor_coords: Vec<String>,
        anchor: Vec<Vec<Scalar>>,
        structure: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self, AlgebroidError> {
        let r = frame.rank();
        let n = anchor_coords.len();
        if frame.side() != Side::Vector {
            return Err(ExteriorError::SideMismatch.into());
        }
        for c in &anchor_coords {
            if !chart.is_base(c) && !chart.is_fiber(c) {
                return Err(SymbolicError::UnknownCoordinate(c.clone()).into());
            }
        }
        if anchor.len() != r || anchor.iter().any(|row| row.len() != n) {
            return Err(AlgebroidError::AnchorShape { rank: r, dim: n });
        }
        if structure.len() != r
            || structure
                .iter()
                .any(|row| row.len() != r || row.iter().any(|c| c.len() != r))
        {
            return Err(AlgebroidError::StructureShape(r));
        }
        Ok(LieAlgebroid {
            name: name.into(),
            chart,
            frame,
            anchor_coords,
            anchor,
            structure,
        })
    }

    /// Tangent algebroid of the base chart, frame `@x` with duals `dx`.
    pub fn tangent(chart: &ChartSpec) -> Self {
        let coords = chart.base_coords().to_vec();
        LieAlgebroid::coordinate_tangent("T", chart, coords)
    }

    /// Tangent algebroid of the whole chart, fiber directions included.
    pub fn tangent_total(chart: &ChartSpec) -> Self {
        let coords: Vec<String> = chart.all_coords().cloned().collect();
        LieAlgebroid::coordinate_tangent("T", chart, coords)
    }

    fn coordinate_tangent(name: &str, chart: &ChartSpec, coords: Vec<String>) -> Self {
        let names: Vec<String> = coords.iter().map(|c| format!("@{c}")).collect();
        let duals: Vec<String> = coords.iter().map(|c| format!("d{c}")).collect();
        let frame = Frame::with_dual_names(&names, &duals, Side::Vector).expect("distinct coords");
        let n = coords.len();
        let anchor = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                    .collect()
            })
            .collect();
        let structure = vec![vec![vec![Scalar::zero(); n]; n]; n];
        LieAlgebroid::with_anchor_coords(name, chart.clone(), frame, coords, anchor, structure)
            .expect("well-formed tangent algebroid")
    }

    /// Cotangent algebroid of a bivector `pi^{ij}` on the base chart.
    ///
    /// Frame `dx` with duals `@x`; anchor `a(dx^i) = sum_j pi^{ij} @_j`;
    /// bracket `[dx^i, dx^j] = d(pi^{ij})`.
    pub fn cotangent(chart: &ChartSpec, pi: &[Vec<Scalar>]) -> Result<Self, AlgebroidError> {
        let coords = chart.base_coords().to_vec();
        let n = coords.len();
        if pi.len() != n || pi.iter().any(|r| r.len() != n) {
            return Err(AlgebroidError::AnchorShape { rank: n, dim: n });
        }
        let names: Vec<String> = coords.iter().map(|c| format!("d{c}")).collect();
        let duals: Vec<String> = coords.iter().map(|c| format!("@{c}")).collect();
        let frame = Frame::with_dual_names(&names, &duals, Side::Vector)?;
        let mut structure = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for (i, row) in structure.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                for (k, c) in cell.iter_mut().enumerate() {
                    *c = chart.partial(&pi[i][j], &coords[k])?;
                }
            }
        }
        LieAlgebroid::new("T*", chart.clone(), frame, pi.to_vec(), structure)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn chart(&self) -> &ChartSpec {
        &self.chart
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn dual_frame(&self) -> Frame {
        self.frame.dual()
    }

    pub fn rank(&self) -> usize {
        self.frame.rank()
    }

    pub fn anchor_coords(&self) -> &[String] {
        &self.anchor_coords
    }

    pub fn anchor_matrix(&self) -> &[Vec<Scalar>] {
        &self.anchor
    }

    pub fn structure_function(&self, a: usize, b: usize, g: usize) -> &Scalar {
        &self.structure[a][b][g]
    }

    pub fn structure_functions(&self) -> &[Vec<Vec<Scalar>>] {
        &self.structure
    }

    /// Adds `delta` to `c_ab^g` and subtracts it from `c_ba^g`.
    pub fn perturbed(&self, a: usize, b: usize, g: usize, delta: &Scalar) -> Self {
        let mut out = self.clone();
        out.structure[a][b][g] = &out.structure[a][b][g] + delta;
        if a != b {
            out.structure[b][a][g] = &out.structure[b][a][g] - delta;
        }
        out
    }

    /// Overwrites a single structure function without touching `c_ba^g`.
    pub fn with_raw_structure_function(&self, a: usize, b: usize, g: usize, v: Scalar) -> Self {
        let mut out = self.clone();
        out.structure[a][b][g] = v;
        out
    }

    pub fn generator(&self, i: usize) -> GradedElement {
        GradedElement::generator(&self.frame, i)
    }

    /// `f * e_i`.
    pub fn section(&self, i: usize, f: Scalar) -> GradedElement {
        GradedElement::monomial(&self.frame, &[i], f)
    }

    fn check_vector(&self, u: &GradedElement, degree: Option<usize>) -> Result<(), AlgebroidError> {
        if u.frame().names() != self.frame.names() || u.side() != Side::Vector {
            return Err(AlgebroidError::FrameMismatch(u.to_string()));
        }
        if let Some(d) = degree {
            if u.degree() != d {
                return Err(AlgebroidError::Degree {
                    expected: d,
                    got: u.degree(),
                });
            }
        }
        Ok(())
    }

    fn check_form(&self, u: &GradedElement) -> Result<(), AlgebroidError> {
        if u.frame().names() != self.frame.names() || u.side() != Side::Dual {
            return Err(AlgebroidError::FrameMismatch(u.to_string()));
        }
        Ok(())
    }

    /// Applies a vector field given by components on the anchor coordinates.
    pub fn apply_field(&self, v: &[Scalar], f: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for (c, coord) in v.iter().zip(&self.anchor_coords) {
            if c.is_zero() {
                continue;
            }
            let d = self.chart.partial(f, coord).expect("anchor coordinate in chart");
            if !d.is_zero() {
                acc = acc + c * &d;
            }
        }
        acc
    }

    fn act_generator(&self, i: usize, f: &Scalar) -> Scalar {
        self.apply_field(&self.anchor[i], f)
    }

    /// Components of `a(x)` on the anchor coordinates.
    pub fn anchor_of(&self, x: &GradedElement) -> Result<Vec<Scalar>, AlgebroidError> {
        self.check_vector(x, Some(1))?;
        let mut out = vec![Scalar::zero(); self.anchor_coords.len()];
        for (idx, c) in x.terms() {
            for (j, a) in self.anchor[idx[0]].iter().enumerate() {
                if !a.is_zero() {
                    out[j] = &out[j] + &(c * a);
                }
            }
        }
        Ok(out)
    }

    /// `a(x) f`.
    pub fn act(&self, x: &GradedElement, f: &Scalar) -> Result<Scalar, AlgebroidError> {
        Ok(self.apply_field(&self.anchor_of(x)?, f))
    }

    /// Commutator of vector fields on the anchor coordinates.
    pub fn field_bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        (0..self.anchor_coords.len())
            .map(|i| self.apply_field(x, &y[i]) - self.apply_field(y, &x[i]))
            .collect()
    }

    fn generator_bracket(&self, a: usize, b: usize) -> GradedElement {
        GradedElement::from_vector(&self.frame, &self.structure[a][b])
    }

    /// Bracket of degree-1 sections, extended by the Leibniz rule:
    /// `[f e_a, g e_b] = fg [e_a, e_b] + f (a(e_a) g) e_b - g (a(e_b) f) e_a`.
    pub fn bracket(
        &self,
        u: &GradedElement,
        v: &GradedElement,
    ) -> Result<GradedElement, AlgebroidError> {
        self.check_vector(u, Some(1))?;
        self.check_vector(v, Some(1))?;
        Ok(self.bracket_unchecked(u, v))
    }

    fn bracket_unchecked(&self, u: &GradedElement, v: &GradedElement) -> GradedElement {
        let mut out = GradedElement::zero(&self.frame, 1);
        for (ia, f) in u.terms() {
            let a = ia[0];
            for (ib, g) in v.terms() {
                let b = ib[0];
                let fg = f * g;
                out = out.add(&self.generator_bracket(a, b).scale(&fg));
                let ag = self.act_generator(a, g);
                if !ag.is_zero() {
                    out = out.add(&GradedElement::monomial(&self.frame, &[b], f * &ag));
                }
                let bf = self.act_generator(b, f);
                if !bf.is_zero() {
                    out = out.sub(&GradedElement::monomial(&self.frame, &[a], g * &bf));
                }
            }
        }
        out
    }

    /// Evaluates `alpha([e_a, e_b], e_rest...)` through the structure functions.
    fn form_on_bracket(&self, alpha: &GradedElement, a: usize, b: usize, rest: &[usize]) -> Scalar {
        let mut acc = Scalar::zero();
        let mut idx = Vec::with_capacity(rest.len() + 1);
        for (g, c) in self.structure[a][b].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            idx.clear();
            idx.push(g);
            idx.extend_from_slice(rest);
            let v = alpha.component(&idx);
            if !v.is_zero() {
                acc = acc + c * &v;
            }
        }
        acc
    }

    /// Algebroid differential on `Gamma(^k A*)`:
    ///
    /// `d alpha(x_0..x_k) = sum_i (-1)^i a(x_i) alpha(..x̂_i..)
    ///                    + sum_{i<j} (-1)^{i+j} alpha([x_i, x_j], ..x̂_i..x̂_j..)`,
    /// with the second sum over all pairs.
    pub fn differential(&self, alpha: &GradedElement) -> Result<GradedElement, AlgebroidError> {
        self.check_form(alpha)?;
        let dual = self.dual_frame();
        let k = alpha.degree();
        let mut out = GradedElement::zero(&dual, k + 1);
        if alpha.is_zero() {
            return Ok(out);
        }
        for tuple in combinations(self.rank(), k + 1) {
            let mut val = Scalar::zero();
            for p in 0..=k {
                let mut rest = tuple.clone();
                rest.remove(p);
                let c = alpha.component(&rest);
                if c.is_zero() {
                    continue;
                }
                let t = self.act_generator(tuple[p], &c);
                if !t.is_zero() {
                    val = val + sign(p) * t;
                }
            }
            for p in 0..=k {
                for q in p + 1..=k {
                    let rest: Vec<usize> = tuple
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != p && *i != q)
                        .map(|(_, v)| *v)
                        .collect();
                    let t = self.form_on_bracket(alpha, tuple[p], tuple[q], &rest);
                    if !t.is_zero() {
                        val = val + sign(p + q) * t;
                    }
                }
            }
            out = out.add(&GradedElement::monomial(&dual, &tuple, val));
        }
        Ok(out)
    }

    /// `d f` for a scalar.
    pub fn differential_of_scalar(&self, f: &Scalar) -> GradedElement {
        let dual = self.dual_frame();
        let coeffs: Vec<Scalar> = (0..self.rank()).map(|i| self.act_generator(i, f)).collect();
        GradedElement::from_vector(&dual, &coeffs)
    }

    /// `[X, g]` for `X` of degree `p >= 1`:
    /// `sum_k (-1)^(p-k) (a(x_k) g) x_1 ^ .. x̂_k .. ^ x_p`.
    fn schouten_with_function(&self, u: &GradedElement, g: &Scalar) -> GradedElement {
        let p = u.degree();
        let mut out = GradedElement::zero(&self.frame, p - 1);
        for (idx, f) in u.terms() {
            for k in 0..p {
                let ag = self.act_generator(idx[k], g);
                if ag.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(k);
                // 1-indexed position k+1, sign (-1)^(p-(k+1))
                let s = sign(p - (k + 1));
                out = out.add(&GradedElement::monomial(&self.frame, &rest, s * f * ag));
            }
        }
        out
    }

    /// Schouten bracket on `Gamma(^ A)`, of degree `p + q - 1`.
    ///
    /// For `p, q >= 1` uses
    /// `[x_1^..^x_p, y_1^..^y_q] = sum_{i,j} (-1)^(i+j) [x_i, y_j] ^ x_1..x̂_i..x_p ^ y_1..ŷ_j..y_q`
    /// with coefficients absorbed into `x_1` and `y_1`; against functions
    /// it reduces to `[x, f] = -[f, x] = a(x) f`.
    pub fn schouten(
        &self,
        u: &GradedElement,
        v: &GradedElement,
    ) -> Result<GradedElement, AlgebroidError> {
        self.check_vector(u, None)?;
        self.check_vector(v, None)?;
        Ok(self.schouten_unchecked(u, v))
    }

    pub(crate) fn schouten_unchecked(&self, u: &GradedElement, v: &GradedElement) -> GradedElement {
        let (p, q) = (u.degree(), v.degree());
        match (p, q) {
            (0, 0) => GradedElement::zero(&self.frame, 0),
            (_, 0) => {
                let g = v.coefficient(&[]);
                self.schouten_with_function(u, &g)
            }
            (0, _) => {
                let f = u.coefficient(&[]);
                let r = self.schouten_with_function(v, &f);
                // [f, V] = -(-1)^(q-1) [V, f]
                if (q - 1) % 2 == 0 {
                    r.neg()
                } else {
                    r
                }
            }
            _ => {
                let mut out = GradedElement::zero(&self.frame, p + q - 1);
                for (iu, f) in u.terms() {
                    for (jv, g) in v.terms() {
                        for k in 0..p {
                            let xk_coeff = if k == 0 { f.clone() } else { Scalar::one() };
                            let xk = GradedElement::monomial(&self.frame, &[iu[k]], xk_coeff);
                            for l in 0..q {
                                let yl_coeff = if l == 0 { g.clone() } else { Scalar::one() };
                                let yl = GradedElement::monomial(&self.frame, &[jv[l]], yl_coeff);
                                let br = self.bracket_unchecked(&xk, &yl);
                                if br.is_zero() {
                                    continue;
                                }
                                let mut rest: Vec<usize> = Vec::with_capacity(p + q - 2);
                                rest.extend(iu.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, v)| *v));
                                rest.extend(jv.iter().enumerate().filter(|(i, _)| *i != l).map(|(_, v)| *v));
                                let mut coeff = sign(k + l);
                                if k != 0 {
                                    coeff = coeff * f;
                                }
                                if l != 0 {
                                    coeff = coeff * g;
                                }
                                let tail = GradedElement::monomial(&self.frame, &rest, coeff);
                                out = out.add(&br.wedge_unchecked(&tail));
                            }
                        }
                    }
                }
                out
            }
        }
    }

    /// `i_x beta` for a section `x` and a form `beta`.
    pub fn interior(
        &self,
        x: &GradedElement,
        beta: &GradedElement,
    ) -> Result<GradedElement, AlgebroidError> {
        self.check_vector(x, Some(1))?;
        self.check_form(beta)?;
        Ok(GradedElement::contract_unchecked(x, beta))
    }

    /// Lie derivative of a form by Cartan's formula `L_x = i_x d + d i_x`.
    pub fn lie_derivative(
        &self,
        x: &GradedElement,
        beta: &GradedElement,
    ) -> Result<GradedElement, AlgebroidError> {
        self.check_vector(x, Some(1))?;
        self.check_form(beta)?;
        if beta.degree() == 0 {
            let f = beta.coefficient(&[]);
            return Ok(GradedElement::scalar(&self.dual_frame(), self.act(x, &f)?));
        }
        let a = GradedElement::contract_unchecked(x, &self.differential(beta)?);
        let b = self.differential(&GradedElement::contract_unchecked(x, beta))?;
        Ok(a.add(&b))
    }

    /// Checks antisymmetry, the anchor morphism property and Jacobi on frame
    /// generators.
    pub fn check_axioms(&self) -> CheckReport {
        let r = self.rank();
        let mut report = CheckReport::new(format!("axioms {}", self.name));
        let anchor_tag = "Lie algebroid axioms";
        let names = self.frame.names();
        for a in 0..r {
            for b in a..r {
                let res: Vec<Scalar> = (0..r)
                    .map(|g| &self.structure[a][b][g] + &self.structure[b][a][g])
                    .collect();
                report.check_zero(
                    format!("antisymmetry [{},{}]", names[a], names[b]),
                    anchor_tag,
                    &res,
                );
            }
        }
        let pairs = combinations(r, 2);
        let anchor_residuals: Vec<Vec<Scalar>> = pairs
            .par_iter()
            .map(|ab| {
                let (a, b) = (ab[0], ab[1]);
                let lhs = self
                    .anchor_of(&self.generator_bracket(a, b))
                    .expect("own frame");
                let rhs = self.field_bracket(&self.anchor[a], &self.anchor[b]);
                lhs.iter().zip(&rhs).map(|(l, r)| l - r).collect()
            })
            .collect();
        for (ab, res) in pairs.iter().zip(&anchor_residuals) {
            report.check_zero(
                format!("anchor morphism [{},{}]", names[ab[0]], names[ab[1]]),
                anchor_tag,
                res,
            );
        }
        let triples = combinations(r, 3);
        let jacobi: Vec<GradedElement> = triples
            .par_iter()
            .map(|t| {
                let e = |i: usize| self.generator(i);
                let (a, b, c) = (t[0], t[1], t[2]);
                let j1 = self.bracket_unchecked(&self.generator_bracket(a, b), &e(c));
                let j2 = self.bracket_unchecked(&self.generator_bracket(b, c), &e(a));
                let j3 = self.bracket_unchecked(&self.generator_bracket(c, a), &e(b));
                j1.add(&j2).add(&j3)
            })
            .collect();
        for (t, res) in triples.iter().zip(&jacobi) {
            report.check_zero(
                format!("Jacobi ({},{},{})", names[t[0]], names[t[1]], names[t[2]]),
                anchor_tag,
                res,
            );
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart2() -> ChartSpec {
        ChartSpec::base(&["x", "y"]).unwrap()
    }

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn poisson_xy() -> Vec<Vec<Scalar>> {
        vec![vec![s(0), s(1)], vec![s(-1), s(0)]]
    }

    #[test]
    fn tangent_passes_axioms() {
        assert!(LieAlgebroid::tangent(&chart2()).check_axioms().passed());
    }

    #[test]
    fn broken_antisymmetry_fails() {
        let t = LieAlgebroid::tangent(&chart2())
            .with_raw_structure_function(0, 1, 0, s(1))
            .with_raw_structure_function(1, 0, 0, s(1));
        let rep = t.check_axioms();
        assert!(!rep.passed());
        assert_eq!(
            rep.find("antisymmetry [@x,@y]").unwrap().status,
            crate::report::Status::Fail
        );
    }

    #[test]
    fn bracket_examples() {
        let t = LieAlgebroid::tangent(&chart2());
        let x = Scalar::coord("x");
        let dx = t.generator(0);
        assert_eq!(t.bracket(&dx, &t.section(0, x.clone())).unwrap(), dx);
        let u = t.section(1, x.clone() * Scalar::opaque("f"));
        assert!(t.bracket(&u, &u).unwrap().is_zero());

        // [f @x, g @y] = f g_x @y - g f_y @x
        let f = Scalar::opaque("f");
        let g = Scalar::opaque("g");
        let lhs = t.bracket(&t.section(0, f.clone()), &t.section(1, g.clone())).unwrap();
        let expected = t
            .section(1, &f * &g.partial("x"))
            .sub(&t.section(0, &g * &f.partial("y")));
        assert_eq!(lhs, expected);
    }

    #[test]
    fn de_rham_case() {
        let t = LieAlgebroid::tangent(&chart2());
        let f = Scalar::opaque("f");
        let df = t.differential_of_scalar(&f);
        let df2 = t.differential(&GradedElement::scalar(&t.dual_frame(), f.clone())).unwrap();
        assert_eq!(df, df2);
        assert_eq!(df.coefficient(&[0]), f.partial("x"));
        assert_eq!(df.coefficient(&[1]), f.partial("y"));
        assert!(t.differential(&df).unwrap().is_zero());
    }

    #[test]
    fn cotangent_differential_matches_hand_expansion() {
        // d_* f for pi = @x ^ @y is [pi, f] = f_y @x - f_x @y.
        let c = chart2();
        let cot = LieAlgebroid::cotangent(&c, &poisson_xy()).unwrap();
        assert!(cot.check_axioms().passed());
        let f = Scalar::opaque("f");
        let dstar = cot.differential_of_scalar(&f);
        assert_eq!(dstar.coefficient(&[0]), f.partial("y"));
        assert_eq!(dstar.coefficient(&[1]), -f.partial("x"));

        let t = LieAlgebroid::tangent(&c);
        let pi = GradedElement::monomial(t.frame(), &[0, 1], s(1));
        let via_schouten = t
            .schouten(&pi, &GradedElement::scalar(t.frame(), f.clone()))
            .unwrap();
        assert_eq!(via_schouten.vector_coefficients(), dstar.vector_coefficients());
    }

    #[test]
    fn schouten_examples() {
        let t = LieAlgebroid::tangent(&chart2());
        let x = GradedElement::scalar(t.frame(), Scalar::coord("x"));
        assert!(t.schouten(&t.generator(0), &x).unwrap().as_scalar().unwrap().is_one());
        let pi = GradedElement::monomial(t.frame(), &[0, 1], s(1));
        assert!(t.schouten(&pi, &pi).unwrap().is_zero());
    }

    #[test]
    fn schouten_detects_non_poisson() {
        let c = ChartSpec::base(&["x", "y", "z"]).unwrap();
        let t = LieAlgebroid::tangent(&c);
        let pi = GradedElement::monomial(t.frame(), &[0, 1], s(1))
            .add(&GradedElement::monomial(t.frame(), &[1, 2], Scalar::coord("y")));
        let pp = t.schouten(&pi, &pi).unwrap();
        assert!(!pp.is_zero());
        // [pi, pi] = 2 @x ^ @y ^ @z up to sign.
        let c = pp.coefficient(&[0, 1, 2]);
        assert!(c == Scalar::from_int(2) || c == Scalar::from_int(-2), "{c}");

        // @x^@y + x @y^@z is Poisson: its Jacobiator vanishes term by term.
        let ok = GradedElement::monomial(t.frame(), &[0, 1], s(1))
            .add(&GradedElement::monomial(t.frame(), &[1, 2], Scalar::coord("x")));
        assert!(t.schouten(&ok, &ok).unwrap().is_zero());
    }

    #[test]
    fn lie_derivative_examples() {
        let t = LieAlgebroid::tangent(&chart2());
        let dual = t.dual_frame();
        let x = Scalar::coord("x");
        let xdx = GradedElement::monomial(&dual, &[0], x.clone());
        let dx = GradedElement::generator(&dual, 0);
        let dy = GradedElement::generator(&dual, 1);
        assert_eq!(t.lie_derivative(&t.generator(0), &xdx).unwrap(), dx);
        assert!(t.lie_derivative(&t.generator(0), &dy).unwrap().is_zero());
        let f = Scalar::opaque("f");
        let u = t.section(1, Scalar::opaque("g"));
        let l = t
            .lie_derivative(&u, &GradedElement::scalar(&dual, f.clone()))
            .unwrap();
        assert_eq!(l.as_scalar().unwrap(), t.act(&u, &f).unwrap());
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }
}

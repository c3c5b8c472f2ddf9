//! Multivectors and forms over a named frame.
//!
//! Forms over an algebroid frame use the same representation as multivectors;
//! only the [`Side`] marker differs. This lets the differential and the
//! Schouten machinery act on either side of a dual pair.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::symbolic::{Scalar, SymbolicError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("frame mismatch: {0} vs {1}")]
    FrameMismatch(String, String),
    #[error("side mismatch")]
    SideMismatch,
    #[error("degree {degree} exceeds frame rank {rank}")]
    DegreeOverflow { degree: usize, rank: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("duplicate frame generator `{0}`")]
    DuplicateGenerator(String),
    #[error("pairing matrix is {rows}x{cols}, expected {expected}")]
    PairingShape {
        rows: usize,
        cols: usize,
        expected: String,
    },
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

/// Sections of the bundle (`Vector`) or of its dual (`Dual`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Vector,
    Dual,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Vector => Side::Dual,
            Side::Dual => Side::Vector,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frame {
    names: Arc<[String]>,
    dual_names: Arc<[String]>,
    side: Side,
}

impl Frame {
    pub fn new<S: AsRef<str>>(names: &[S], side: Side) -> Result<Self, ExteriorError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(ExteriorError::DuplicateGenerator(n.clone()));
            }
        }
        let dual_names: Vec<String> = names.iter().map(|n| format!("{n}*")).collect();
        Ok(Frame {
            names: Arc::from(names),
            dual_names: Arc::from(dual_names),
            side,
        })
    }

    /// Frame whose dual generators print with their own labels (e.g. `dx` for `@x`).
    pub fn with_dual_names<S: AsRef<str>>(
        names: &[S],
        dual_names: &[S],
        side: Side,
    ) -> Result<Self, ExteriorError> {
        let mut f = Frame::new(names, side)?;
        if dual_names.len() == names.len() {
            let d: Vec<String> = dual_names.iter().map(|s| s.as_ref().to_string()).collect();
            f.dual_names = Arc::from(d);
        }
        Ok(f)
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The same generators on the opposite side.
    pub fn dual(&self) -> Frame {
        Frame {
            names: self.names.clone(),
            dual_names: self.dual_names.clone(),
            side: self.side.flip(),
        }
    }

    fn same(&self, other: &Frame) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }

    fn describe(&self) -> String {
        format!("{:?}{:?}", self.side, self.names)
    }

    fn check_same(&self, other: &Frame) -> Result<(), ExteriorError> {
        if !self.same(other) {
            return Err(ExteriorError::FrameMismatch(self.describe(), other.describe()));
        }
        if self.side != other.side {
            return Err(ExteriorError::SideMismatch);
        }
        Ok(())
    }

    fn check_opposite(&self, other: &Frame) -> Result<(), ExteriorError> {
        if !self.same(other) {
            return Err(ExteriorError::FrameMismatch(self.describe(), other.describe()));
        }
        if self.side == other.side {
            return Err(ExteriorError::SideMismatch);
        }
        Ok(())
    }

    /// Printed label of generator `i` on this frame's side.
    pub fn label(&self, i: usize) -> &str {
        match self.side {
            Side::Vector => &self.names[i],
            Side::Dual => &self.dual_names[i],
        }
    }
}

/// Sorts an index tuple, returning the permutation sign, or `None` when an
/// index repeats.
pub fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Degree-`k` element: strictly increasing index tuples mapped to nonzero
/// coefficients.
///
/// Degrees above the frame rank are allowed internally; such elements have
/// no terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    frame: Frame,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl GradedElement {
    pub fn zero(frame: &Frame, degree: usize) -> Self {
        GradedElement {
            frame: frame.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(frame: &Frame, s: Scalar) -> Self {
        let mut e = GradedElement::zero(frame, 0);
        e.add_term(Vec::new(), s);
        e
    }

    pub fn generator(frame: &Frame, i: usize) -> Self {
        GradedElement::monomial(frame, &[i], Scalar::one())
    }

    /// `coeff * e_{i1} ^ ... ^ e_{ik}` for any index order.
    pub fn monomial(frame: &Frame, idx: &[usize], coeff: Scalar) -> Self {
        let mut e = GradedElement::zero(frame, idx.len());
        if let Some((sorted, sign)) = sort_with_sign(idx) {
            let c = if sign < 0 { -coeff } else { coeff };
            e.add_term(sorted, c);
        }
        e
    }

    /// Degree-1 element from a coefficient vector.
    pub fn from_vector(frame: &Frame, coeffs: &[Scalar]) -> Self {
        let mut e = GradedElement::zero(frame, 1);
        for (i, c) in coeffs.iter().enumerate() {
            e.add_term(vec![i], c.clone());
        }
        e
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn side(&self) -> Side {
        self.frame.side
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient on a strictly increasing index tuple.
    pub fn coefficient(&self, idx: &[usize]) -> Scalar {
        self.terms.get(idx).cloned().unwrap_or_default()
    }

    /// Coefficient on an arbitrary index tuple, with the alternating sign.
    pub fn component(&self, idx: &[usize]) -> Scalar {
        match sort_with_sign(idx) {
            Some((sorted, sign)) => {
                let c = self.coefficient(&sorted);
                if sign < 0 {
                    -c
                } else {
                    c
                }
            }
            None => Scalar::zero(),
        }
    }

    /// Coefficients of a degree-1 element, indexed by generator.
    pub fn vector_coefficients(&self) -> Vec<Scalar> {
        (0..self.frame.rank()).map(|i| self.coefficient(&[i])).collect()
    }

    /// The scalar value of a degree-0 element.
    pub fn as_scalar(&self) -> Option<Scalar> {
        (self.degree == 0).then(|| self.coefficient(&[]))
    }

    fn add_term(&mut self, idx: Vec<usize>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(idx) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &GradedElement) -> Result<(), ExteriorError> {
        self.frame.check_same(&other.frame)?;
        if self.degree != other.degree {
            return Err(ExteriorError::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &GradedElement) -> Result<GradedElement, ExteriorError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &GradedElement) -> Result<GradedElement, ExteriorError> {
        self.try_add(&other.neg())
    }

    /// Sum of same-frame, same-degree elements; panics on mismatch.
    pub fn add(&self, other: &GradedElement) -> GradedElement {
        self.try_add(other).expect("compatible graded elements")
    }

    pub fn sub(&self, other: &GradedElement) -> GradedElement {
        self.try_sub(other).expect("compatible graded elements")
    }

    pub fn neg(&self) -> GradedElement {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, s: &Scalar) -> GradedElement {
        let mut out = GradedElement::zero(&self.frame, self.degree);
        if s.is_zero() {
            return out;
        }
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * s);
        }
        out
    }

    /// Applies `f` to every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> GradedElement {
        let mut out = GradedElement::zero(&self.frame, self.degree);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    /// Reinterprets the coefficients over another frame of the same rank.
    pub fn reframe(&self, frame: &Frame) -> GradedElement {
        GradedElement {
            frame: frame.clone(),
            degree: self.degree,
            terms: self.terms.clone(),
        }
    }

    /// Pushes the element through a linear map of generators.
    ///
    /// `images[j]` lists the coefficients of the image of generator `j` on
    /// `target`; higher degrees map by the induced wedge map.
    pub fn transport(&self, target: &Frame, images: &[Vec<Scalar>]) -> GradedElement {
        let mut out = GradedElement::zero(target, self.degree);
        for (idx, c) in &self.terms {
            let mut acc = GradedElement::scalar(target, c.clone());
            for &j in idx {
                let img = GradedElement::from_vector(target, &images[j]);
                acc = acc.wedge_unchecked(&img);
                if acc.is_zero() {
                    break;
                }
            }
            for (k, v) in acc.terms {
                out.add_term(k, v);
            }
        }
        out
    }

    /// Exterior product; errors when the result exceeds the frame rank.
    pub fn wedge(&self, other: &GradedElement) -> Result<GradedElement, ExteriorError> {
        self.frame.check_same(&other.frame)?;
        let degree = self.degree + other.degree;
        if degree > self.frame.rank() {
            return Err(ExteriorError::DegreeOverflow {
                degree,
                rank: self.frame.rank(),
            });
        }
        Ok(self.wedge_unchecked(other))
    }

    /// Exterior product without the rank check; overflow gives zero.
    pub(crate) fn wedge_unchecked(&self, other: &GradedElement) -> GradedElement {
        debug_assert!(self.frame.same(&other.frame) && self.frame.side == other.frame.side);
        let mut out = GradedElement::zero(&self.frame, self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                if let Some((sorted, sign)) = sort_with_sign(&idx) {
                    let c = ca * cb;
                    out.add_term(sorted, if sign < 0 { -c } else { c });
                }
            }
        }
        out
    }

    /// Interior product of a degree-1 element from the opposite side:
    /// `i_a(u_1 ^ ... ^ u_k) = sum (-1)^(i-1) a(u_i) u_1 ^ .. ^ û_i ^ .. ^ u_k`.
    pub fn contract(a: &GradedElement, u: &GradedElement) -> Result<GradedElement, ExteriorError> {
        a.frame.check_opposite(&u.frame)?;
        if a.degree != 1 {
            return Err(ExteriorError::DegreeMismatch(a.degree, 1));
        }
        if u.degree == 0 {
            return Ok(GradedElement::zero(&u.frame, 0));
        }
        Ok(GradedElement::contract_unchecked(a, u))
    }

    pub(crate) fn contract_unchecked(a: &GradedElement, u: &GradedElement) -> GradedElement {
        let mut out = GradedElement::zero(&u.frame, u.degree.saturating_sub(1));
        if u.degree == 0 {
            return out;
        }
        for (ia, ca) in &a.terms {
            let g = ia[0];
            for (idx, cu) in &u.terms {
                if let Some(pos) = idx.iter().position(|&j| j == g) {
                    let mut rest = idx.clone();
                    rest.remove(pos);
                    let c = ca * cu;
                    out.add_term(rest, if pos % 2 == 1 { -c } else { c });
                }
            }
        }
        out
    }

    /// Determinant extension of a degree-1 pairing: `<e^I, e_J> = det P[I,J]`.
    ///
    /// `pairing.get(i, j)` is the pairing of generator `i` of `left`'s frame
    /// with generator `j` of `right`'s frame.
    pub fn full_pair(
        left: &GradedElement,
        right: &GradedElement,
        pairing: &PairingMatrix,
    ) -> Result<Scalar, ExteriorError> {
        if left.degree != right.degree {
            return Err(ExteriorError::DegreeMismatch(left.degree, right.degree));
        }
        if pairing.rows() != left.frame.rank() || pairing.cols() != right.frame.rank() {
            return Err(ExteriorError::PairingShape {
                rows: pairing.rows(),
                cols: pairing.cols(),
                expected: format!("{}x{}", left.frame.rank(), right.frame.rank()),
            });
        }
        let mut acc = Scalar::zero();
        for (i, ci) in &left.terms {
            for (j, cj) in &right.terms {
                let sub: Vec<Vec<Scalar>> = i
                    .iter()
                    .map(|&a| j.iter().map(|&b| pairing.get(a, b).clone()).collect())
                    .collect();
                let d = determinant(&sub)?;
                if !d.is_zero() {
                    acc = acc + &(ci * cj) * &d;
                }
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if idx.is_empty() {
                write!(f, "({c})")?;
                continue;
            }
            let basis: Vec<&str> = idx.iter().map(|&i| self.frame.label(i)).collect();
            if c.is_one() {
                write!(f, "{}", basis.join("^"))?;
            } else {
                write!(f, "({c})*{}", basis.join("^"))?;
            }
        }
        Ok(())
    }
}

/// Square or rectangular matrix of scalars used for degree-1 pairings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingMatrix {
    entries: Vec<Vec<Scalar>>,
}

impl PairingMatrix {
    pub fn new(entries: Vec<Vec<Scalar>>) -> Self {
        PairingMatrix { entries }
    }

    pub fn identity(r: usize) -> Self {
        PairingMatrix {
            entries: (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Scalar>] {
        &self.entries
    }

    pub fn transpose(&self) -> PairingMatrix {
        PairingMatrix {
            entries: (0..self.cols())
                .map(|j| (0..self.rows()).map(|i| self.entries[i][j].clone()).collect())
                .collect(),
        }
    }

    pub fn determinant(&self) -> Result<Scalar, ExteriorError> {
        determinant(&self.entries)
    }

    /// Inverse, or `None` when the determinant is the zero function.
    pub fn inverse(&self) -> Result<Option<PairingMatrix>, ExteriorError> {
        Ok(inverse(&self.entries)?.map(PairingMatrix::new))
    }

    pub fn mul(&self, other: &PairingMatrix) -> PairingMatrix {
        let n = self.rows();
        let m = other.cols();
        let k = self.cols();
        PairingMatrix {
            entries: (0..n)
                .map(|i| {
                    (0..m)
                        .map(|j| (0..k).map(|l| &self.entries[i][l] * &other.entries[l][j]).sum())
                        .collect()
                })
                .collect(),
        }
    }
}

impl fmt::Display for PairingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Determinant by Gaussian elimination over the scalar field.
pub fn determinant(m: &[Vec<Scalar>]) -> Result<Scalar, ExteriorError> {
    let n = m.len();
    match n {
        0 => return Ok(Scalar::one()),
        1 => return Ok(m[0][0].clone()),
        2 => return Ok(&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]),
        _ => {}
    }
    // Cofactor expansion keeps opaque entries out of denominators.
    if m.iter().flatten().any(Scalar::has_opaque) {
        let mut acc = Scalar::zero();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Scalar>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let t = &m[0][j] * &determinant(&minor)?;
            acc = if j % 2 == 0 { acc + t } else { acc - t };
        }
        return Ok(acc);
    }
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(Scalar::zero());
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det = &det * &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].checked_div(&pivot)?;
            for c in col..n {
                let v = &a[r][c] - &(&factor * &a[col][c]);
                a[r][c] = v;
            }
        }
    }
    Ok(det)
}

/// Gauss-Jordan inverse; `None` for a singular matrix.
pub fn inverse(m: &[Vec<Scalar>]) -> Result<Option<Vec<Vec<Scalar>>>, ExteriorError> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut inv: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(None);
        };
        a.swap(p, col);
        inv.swap(p, col);
        let pivot = a[col][col].clone();
        for c in 0..n {
            a[col][c] = a[col][c].checked_div(&pivot)?;
            inv[col][c] = inv[col][c].checked_div(&pivot)?;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..n {
                let v = &a[r][c] - &(&factor * &a[col][c]);
                a[r][c] = v;
                let w = &inv[r][c] - &(&factor * &inv[col][c]);
                inv[r][c] = w;
            }
        }
    }
    Ok(Some(inv))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame3() -> Frame {
        Frame::new(&["e1", "e2", "e3"], Side::Vector).unwrap()
    }

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn wedge_examples() {
        let f = Frame::new(&["dx", "dy"], Side::Dual).unwrap();
        let dx = GradedElement::generator(&f, 0);
        let dy = GradedElement::generator(&f, 1);
        assert!(dx.wedge(&dx).unwrap().is_zero());
        assert_eq!(dx.wedge(&dy).unwrap(), dy.wedge(&dx).unwrap().neg());

        let fr = frame3();
        let x = Scalar::coord("x");
        let y = Scalar::coord("y");
        let u = GradedElement::generator(&fr, 0).scale(&x);
        let v = GradedElement::generator(&fr, 1)
            .scale(&y)
            .add(&GradedElement::generator(&fr, 2));
        let expected = GradedElement::monomial(&fr, &[0, 1], &x * &y)
            .add(&GradedElement::monomial(&fr, &[0, 2], x.clone()));
        assert_eq!(u.wedge(&v).unwrap(), expected);
    }

    #[test]
    fn wedge_overflow_and_mismatch() {
        let fr = Frame::new(&["a", "b"], Side::Vector).unwrap();
        let ab = GradedElement::monomial(&fr, &[0, 1], s(1));
        let a = GradedElement::generator(&fr, 0);
        assert!(matches!(ab.wedge(&a), Err(ExteriorError::DegreeOverflow { .. })));
        let other = Frame::new(&["c", "d"], Side::Vector).unwrap();
        assert!(matches!(
            a.wedge(&GradedElement::generator(&other, 0)),
            Err(ExteriorError::FrameMismatch(..))
        ));
        assert!(matches!(
            a.wedge(&GradedElement::generator(&fr.dual(), 0)),
            Err(ExteriorError::SideMismatch)
        ));
    }

    #[test]
    fn contraction_examples() {
        let fr = frame3();
        let e1 = GradedElement::generator(&fr.dual(), 0);
        let e12 = GradedElement::monomial(&fr, &[0, 1], s(1));
        let e23 = GradedElement::monomial(&fr, &[1, 2], s(1));
        assert_eq!(
            GradedElement::contract(&e1, &e12).unwrap(),
            GradedElement::generator(&fr, 1)
        );
        assert!(GradedElement::contract(&e1, &e23).unwrap().is_zero());
        let f = Scalar::opaque("f");
        let e123 = GradedElement::monomial(&fr, &[0, 1, 2], f.clone());
        assert_eq!(
            GradedElement::contract(&e1, &e123).unwrap(),
            GradedElement::monomial(&fr, &[1, 2], f)
        );
    }

    #[test]
    fn full_pair_examples() {
        let fr = frame3();
        let p = PairingMatrix::identity(3);
        let f = Scalar::opaque("f");
        let g = Scalar::opaque("g");
        assert_eq!(
            GradedElement::full_pair(
                &GradedElement::scalar(&fr.dual(), f.clone()),
                &GradedElement::scalar(&fr, g.clone()),
                &p
            )
            .unwrap(),
            &f * &g
        );
        let up = GradedElement::generator(&fr.dual(), 0);
        let dn = GradedElement::generator(&fr, 0);
        assert!(GradedElement::full_pair(&up, &dn, &p).unwrap().is_one());
        let up2 = GradedElement::monomial(&fr.dual(), &[0, 1], s(1));
        let dn2 = GradedElement::monomial(&fr, &[0, 1], s(1));
        assert!(GradedElement::full_pair(&up2, &dn2, &p).unwrap().is_one());
        assert!(matches!(
            GradedElement::full_pair(&up, &dn2, &p),
            Err(ExteriorError::DegreeMismatch(1, 2))
        ));
    }

    #[test]
    fn matrix_inverse_and_determinant() {
        let x = Scalar::coord("x");
        let m = PairingMatrix::new(vec![
            vec![s(-1), s(0), s(0)],
            vec![s(0), s(0), x.clone()],
            vec![s(0), -x.clone(), s(1)],
        ]);
        assert_eq!(m.determinant().unwrap(), -(&x * &x));
        let inv = m.inverse().unwrap().unwrap();
        assert_eq!(m.mul(&inv), PairingMatrix::identity(3));
        let singular = PairingMatrix::new(vec![vec![s(1), s(2)], vec![s(2), s(4)]]);
        assert!(singular.inverse().unwrap().is_none());
    }
}

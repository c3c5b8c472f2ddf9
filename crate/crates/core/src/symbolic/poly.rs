//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are [`Atom`]s: chart coordinates and opaque function symbols
//! carrying a sorted multi-index of formal partial derivatives.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A polynomial variable.
///
/// The derived order puts opaque atoms first (by name, then by derivative
/// multi-index) and coordinates after them.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Opaque {
        name: Arc<str>,
        derivs: Arc<[Arc<str>]>,
    },
    Coord(Arc<str>),
}

impl Atom {
    pub fn coord(name: &str) -> Self {
        Atom::Coord(Arc::from(name))
    }

    pub fn opaque(name: &str) -> Self {
        Atom::Opaque {
            name: Arc::from(name),
            derivs: Arc::from(Vec::new()),
        }
    }

    pub fn opaque_with(name: &str, derivs: &[&str]) -> Self {
        let mut ds: Vec<Arc<str>> = derivs.iter().map(|d| Arc::from(*d)).collect();
        ds.sort();
        Atom::Opaque {
            name: Arc::from(name),
            derivs: Arc::from(ds),
        }
    }

    pub fn is_opaque(&self) -> bool {
        matches!(self, Atom::Opaque { .. })
    }

    pub fn name(&self) -> &str {
        match self {
            Atom::Opaque { name, .. } => name,
            Atom::Coord(name) => name,
        }
    }

    /// Formal partial derivative of the atom itself; `None` means zero.
    fn partial(&self, coord: &str) -> Option<AtomDerivative> {
        match self {
            Atom::Coord(c) if &**c == coord => Some(AtomDerivative::One),
            Atom::Coord(_) => None,
            Atom::Opaque { name, derivs } => {
                let mut ds: Vec<Arc<str>> = derivs.iter().cloned().collect();
                ds.push(Arc::from(coord));
                ds.sort();
                Some(AtomDerivative::Atom(Atom::Opaque {
                    name: name.clone(),
                    derivs: Arc::from(ds),
                }))
            }
        }
    }
}

enum AtomDerivative {
    One,
    Atom(Atom),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Coord(c) => write!(f, "{c}"),
            Atom::Opaque { name, derivs } if derivs.is_empty() => write!(f, "{name}"),
            Atom::Opaque { name, derivs } => {
                let joined: Vec<&str> = derivs.iter().map(|d| &**d).collect();
                if joined.iter().all(|d| d.chars().count() == 1) {
                    write!(f, "{name}_{{;{}}}", joined.concat())
                } else {
                    write!(f, "{name}_{{;{}}}", joined.join(","))
                }
            }
        }
    }
}

/// A power product of atoms, stored sorted by atom with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Atom, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn atom(a: Atom) -> Self {
        Monomial(vec![(a, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Atom, u32)] {
        &self.0
    }

    pub fn degree_in(&self, a: &Atom) -> u32 {
        self.0
            .binary_search_by(|(b, _)| b.cmp(a))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (a, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 == *a {
                let f = other.0[j].1;
                if f > *e {
                    return None;
                }
                if f < *e {
                    out.push((a.clone(), e - f));
                }
                j += 1;
            } else if j < other.0.len() && other.0[j].0 < *a {
                return None;
            } else {
                out.push((a.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Removes every factor of `a`, returning its exponent and the rest.
    fn split_off(&self, a: &Atom) -> (u32, Monomial) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|(b, f)| {
                if b == a {
                    e = *f;
                    false
                } else {
                    true
                }
            })
            .cloned()
            .collect();
        (e, Monomial(rest))
    }

    /// The opaque part and the coordinate part.
    fn split_opaque(&self) -> (Monomial, Monomial) {
        let (o, c): (Vec<_>, Vec<_>) = self.0.iter().cloned().partition(|(a, _)| a.is_opaque());
        (Monomial(o), Monomial(c))
    }
}

/// Lexicographic order: the smallest atom has the highest priority and a
/// larger exponent wins.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((x, ex)), Some((y, ey))) => match x.cmp(y) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ex != ey {
                            return ex.cmp(ey);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (a, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}**{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn atom(a: Atom) -> Self {
        Poly::term(Monomial::atom(a), BigRational::one())
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// The constant value when the polynomial has no variables.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(a, _)| a.clone()))
            .collect()
    }

    pub fn has_opaque(&self) -> bool {
        self.terms.keys().any(|m| m.0.iter().any(|(a, _)| a.is_opaque()))
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (mut big, small) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact formal partial derivative with respect to a coordinate name.
    pub fn partial(&self, coord: &str) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (k, (a, e)) in m.0.iter().enumerate() {
                let Some(da) = a.partial(coord) else { continue };
                let mut rest = m.0.clone();
                if *e == 1 {
                    rest.remove(k);
                } else {
                    rest[k].1 -= 1;
                }
                let mut mono = Monomial(rest);
                if let AtomDerivative::Atom(b) = da {
                    mono = mono.mul(&Monomial::atom(b));
                }
                out.add_term(mono, c * BigRational::from_integer(BigInt::from(*e)));
            }
        }
        out
    }

    /// Evaluates at a point given for coordinate atoms; opaque atoms must not appear.
    pub fn eval(&self, point: &dyn Fn(&Atom) -> Option<BigRational>) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (a, e) in &m.0 {
                let v = point(a)?;
                t *= num_traits::pow(v, *e as usize);
            }
            acc += t;
        }
        Some(acc)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (lm_d, lc_d) = d.leading()?;
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (lm_d, lc_d) = (lm_d.clone(), lc_d.clone());
        let mut q = Poly::zero();
        let mut r = self.clone();
        while let Some((lm_r, lc_r)) = r.leading() {
            let m = lm_r.div(&lm_d)?;
            let c = lc_r / &lc_d;
            let t = Poly::term(m, c);
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => Poly::zero(),
        }
    }

    /// Views the polynomial as univariate in `v`; index = degree.
    pub fn to_univariate(&self, v: &Atom) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            let e = e as usize;
            if out.len() <= e {
                out.resize(e + 1, Poly::zero());
            }
            out[e].add_term(rest, c.clone());
        }
        out
    }

    pub fn from_univariate(coeffs: &[Poly], v: &Atom) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let xe = if e == 0 {
                Monomial::one()
            } else {
                Monomial(vec![(v.clone(), e as u32)])
            };
            for (m, k) in &c.terms {
                out.add_term(m.mul(&xe), k.clone());
            }
        }
        out
    }

    /// Groups terms by their opaque part; values are coordinate-only polynomials.
    pub fn opaque_coefficients(&self) -> BTreeMap<Monomial, Poly> {
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (o, rest) = m.split_opaque();
            out.entry(o).or_default().add_term(rest, c.clone());
        }
        out
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::atom(Atom::coord("x"))
    }
    fn y() -> Poly {
        Poly::atom(Atom::coord("y"))
    }

    #[test]
    fn monomial_order_is_multiplicative() {
        let mx = Monomial::atom(Atom::coord("x"));
        let my = Monomial::atom(Atom::coord("y"));
        assert!(mx > my);
        assert!(mx.mul(&mx) > my.mul(&mx));
        assert!(mx > Monomial::one());
    }

    #[test]
    fn opaque_atoms_precede_coordinates() {
        assert!(Atom::opaque("f") < Atom::coord("a"));
        assert!(Atom::opaque_with("f", &["x"]) > Atom::opaque("f"));
        assert!(Atom::opaque_with("f", &["x", "y"]) == Atom::opaque_with("f", &["y", "x"]));
    }

    #[test]
    fn exact_division() {
        let p = x().add(&y()).mul(&x().sub(&y()));
        let q = p.div_exact(&x().add(&y())).unwrap();
        assert_eq!(q, x().sub(&y()));
        assert!(x().div_exact(&y()).is_none());
    }

    #[test]
    fn partial_of_opaque_adds_index() {
        let f = Poly::atom(Atom::opaque("f"));
        let p = x().mul(&f).partial("x");
        let expected = f.add(&x().mul(&Poly::atom(Atom::opaque_with("f", &["x"]))));
        assert_eq!(p, expected);
    }

    #[test]
    fn display_orders_terms() {
        let p = x().mul(&x()).sub(&y().scale(&BigRational::from_integer(2.into())));
        assert_eq!(p.to_string(), "x**2 - 2*y");
    }
}

//! Canonical exact scalars: reduced quotients of polynomials whose
//! denominators mention chart coordinates only.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gcd::gcd_with_coordinate_poly;
use super::poly::{Atom, Poly};
use super::SymbolicError;

/// A scalar in canonical form.
///
/// Invariants: the denominator is nonzero, monic, free of opaque atoms and
/// coprime to the numerator; a zero numerator has denominator `1`. Two
/// scalars are equal iff their canonical forms are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Scalar {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn coord(name: &str) -> Self {
        Scalar::from_poly(Poly::atom(Atom::coord(name)))
    }

    pub fn opaque(name: &str) -> Self {
        Scalar::from_poly(Poly::atom(Atom::opaque(name)))
    }

    /// Opaque symbol carrying formal partial derivatives, e.g. `f_{;xy}`.
    pub fn opaque_derivative(name: &str, derivs: &[&str]) -> Self {
        Scalar::from_poly(Poly::atom(Atom::opaque_with(name, derivs)))
    }

    /// Builds `num / den`, normalizing.
    pub fn quotient(num: Poly, den: Poly) -> Result<Self, SymbolicError> {
        if den.is_zero() {
            return Err(SymbolicError::DivisionByZeroPolynomial);
        }
        if den.has_opaque() {
            return Err(SymbolicError::DenominatorContainsOpaqueSymbol(den.to_string()));
        }
        Ok(Scalar::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(c) = den.as_constant() {
            return Scalar {
                num: num.scale(&c.recip()),
                den: Poly::one(),
            };
        }
        let g = gcd_with_coordinate_poly(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero denominator");
        let inv = lc.recip();
        let den = den.scale(&inv);
        Scalar {
            num: num.scale(&inv),
            den,
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn has_opaque(&self) -> bool {
        self.num.has_opaque()
    }

    /// Every atom appearing in numerator or denominator.
    pub fn atoms(&self) -> std::collections::BTreeSet<Atom> {
        let mut a = self.num.atoms();
        a.extend(self.den.atoms());
        a
    }

    pub fn mentions_coord(&self, name: &str) -> bool {
        self.atoms()
            .iter()
            .any(|a| matches!(a, Atom::Coord(c) if &**c == name))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, SymbolicError> {
        if other.is_zero() {
            return Err(SymbolicError::DivisionByZeroPolynomial);
        }
        if other.num.has_opaque() {
            return Err(SymbolicError::DenominatorContainsOpaqueSymbol(other.to_string()));
        }
        Ok(Scalar::reduce(self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    pub fn recip(&self) -> Result<Scalar, SymbolicError> {
        Scalar::one().checked_div(self)
    }

    pub fn pow(&self, n: i32) -> Result<Scalar, SymbolicError> {
        if n >= 0 {
            let e = n as u32;
            Ok(Scalar {
                num: self.num.pow(e),
                den: self.den.pow(e),
            })
        } else {
            self.recip()?.pow(-n)
        }
    }

    /// Exact partial derivative; opaque atoms gain a formal index.
    ///
    /// No validation of `coord` happens here; see [`crate::symbolic::ChartSpec::partial`].
    pub fn partial(&self, coord: &str) -> Scalar {
        if self.den.is_one() {
            return Scalar::from_poly(self.num.partial(coord));
        }
        let dn = self.num.partial(coord);
        let dd = self.den.partial(coord);
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Scalar::reduce(num, self.den.mul(&self.den))
    }

    /// Evaluates at a rational point; `None` when an atom is unassigned or
    /// the denominator vanishes.
    pub fn eval(&self, point: &dyn Fn(&Atom) -> Option<BigRational>) -> Option<BigRational> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point)? / d)
    }

    /// Replaces one opaque or coordinate atom by a scalar.
    pub fn substitute(&self, target: &Atom, value: &Scalar) -> Scalar {
        let sub_poly = |p: &Poly| -> Scalar {
            let mut acc = Scalar::zero();
            for (m, c) in p.terms() {
                let mut t = Scalar::from_rational(c.clone());
                for (a, e) in m.factors() {
                    let base = if a == target {
                        value.clone()
                    } else {
                        Scalar::from_poly(Poly::atom(a.clone()))
                    };
                    t = &t * &base.pow(*e as i32).expect("nonnegative power");
                }
                acc = &acc + &t;
            }
            acc
        };
        let n = sub_poly(&self.num);
        let d = sub_poly(&self.den);
        n.checked_div(&d).unwrap_or_else(|_| Scalar::zero())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let n = if self.num.len() > 1 {
                format!("({})", self.num)
            } else {
                self.num.to_string()
            };
            let d = if self.den.len() > 1 {
                format!("({})", self.den)
            } else {
                self.den.to_string()
            };
            write!(f, "{n}/{d}")
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(self.num.add(&rhs.num));
        }
        if self.den == rhs.den {
            return Scalar::reduce(self.num.add(&rhs.num), self.den.clone());
        }
        Scalar::reduce(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(self.num.mul(&rhs.num));
        }
        Scalar::reduce(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Scalar {
        Scalar::coord("x")
    }
    fn y() -> Scalar {
        Scalar::coord("y")
    }

    #[test]
    fn cancellation() {
        assert!((x() - x()).is_zero());
    }

    #[test]
    fn binomial_square() {
        let s = (x() + y()).pow(2).unwrap();
        let r = s - x() * x() - Scalar::from_int(2) * x() * y() - y() * y();
        assert!(r.is_zero());
    }

    #[test]
    fn rational_sum_collapses() {
        let d = Scalar::one() + x() * x();
        let a = x().checked_div(&d).unwrap();
        let b = x().pow(3).unwrap().checked_div(&d).unwrap();
        assert_eq!(a + b, x());
    }

    #[test]
    fn opaque_denominator_rejected() {
        let f = Scalar::opaque("f");
        assert!(matches!(
            x().checked_div(&f),
            Err(SymbolicError::DenominatorContainsOpaqueSymbol(_))
        ));
        assert!(matches!(
            x().checked_div(&Scalar::zero()),
            Err(SymbolicError::DivisionByZeroPolynomial)
        ));
    }

    #[test]
    fn formal_partials_commute() {
        let fxy = Scalar::opaque("f").partial("x").partial("y");
        let fyx = Scalar::opaque("f").partial("y").partial("x");
        assert!((fxy - fyx).is_zero());
    }

    #[test]
    fn quotient_rule() {
        // d/dx (1/(1+x^2)) = -2x/(1+x^2)^2
        let d = Scalar::one() + x() * x();
        let q = d.recip().unwrap();
        let expected = (Scalar::from_int(-2) * x())
            .checked_div(&d.pow(2).unwrap())
            .unwrap();
        assert_eq!(q.partial("x"), expected);
    }

    #[test]
    fn display_rational() {
        let d = Scalar::one() + x() * x();
        let q = Scalar::from_int(2).checked_div(&d).unwrap();
        assert_eq!(q.to_string(), "2/(x**2 + 1)");
    }
}

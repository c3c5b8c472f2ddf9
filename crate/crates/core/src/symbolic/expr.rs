use std::fmt;

use num_rational::BigRational;

use super::poly::{Atom, Poly};
use super::scalar::Scalar;
use super::SymbolicError;

/// Unnormalized scalar expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarExpr {
    Const(BigRational),
    Coord(String),
    /// Opaque function symbol with a multi-index of formal partials.
    Opaque { name: String, derivs: Vec<String> },
    Sum(Vec<ScalarExpr>),
    Product(Vec<ScalarExpr>),
    Neg(Box<ScalarExpr>),
    Pow(Box<ScalarExpr>, i32),
    Quotient(Box<ScalarExpr>, Box<ScalarExpr>),
}

impl ScalarExpr {
    pub fn int(n: i64) -> Self {
        ScalarExpr::Const(BigRational::from_integer(n.into()))
    }

    pub fn coord(name: &str) -> Self {
        ScalarExpr::Coord(name.to_string())
    }

    pub fn opaque(name: &str) -> Self {
        ScalarExpr::Opaque {
            name: name.to_string(),
            derivs: Vec::new(),
        }
    }

    /// Canonical form of the expression.
    pub fn normalize(&self) -> Result<Scalar, SymbolicError> {
        Ok(match self {
            ScalarExpr::Const(c) => Scalar::from_rational(c.clone()),
            ScalarExpr::Coord(c) => Scalar::coord(c),
            ScalarExpr::Opaque { name, derivs } => {
                let ds: Vec<&str> = derivs.iter().map(String::as_str).collect();
                Scalar::opaque_derivative(name, &ds)
            }
            ScalarExpr::Sum(items) => {
                let mut acc = Scalar::zero();
                for e in items {
                    acc = acc + e.normalize()?;
                }
                acc
            }
            ScalarExpr::Product(items) => {
                let mut acc = Scalar::one();
                for e in items {
                    acc = acc * e.normalize()?;
                }
                acc
            }
            ScalarExpr::Neg(e) => -e.normalize()?,
            ScalarExpr::Pow(e, n) => e.normalize()?.pow(*n)?,
            ScalarExpr::Quotient(a, b) => a.normalize()?.checked_div(&b.normalize()?)?,
        })
    }

    pub fn is_zero(&self) -> Result<bool, SymbolicError> {
        Ok(self.normalize()?.is_zero())
    }
}

fn poly_to_expr(p: &Poly) -> ScalarExpr {
    let mut terms = Vec::new();
    for (m, c) in p.terms().rev() {
        let mut factors = vec![ScalarExpr::Const(c.clone())];
        for (a, e) in m.factors() {
            let base = match a {
                Atom::Coord(n) => ScalarExpr::Coord(n.to_string()),
                Atom::Opaque { name, derivs } => ScalarExpr::Opaque {
                    name: name.to_string(),
                    derivs: derivs.iter().map(|d| d.to_string()).collect(),
                },
            };
            factors.push(if *e == 1 {
                base
            } else {
                ScalarExpr::Pow(Box::new(base), *e as i32)
            });
        }
        terms.push(ScalarExpr::Product(factors));
    }
    ScalarExpr::Sum(terms)
}

impl Scalar {
    /// Expression tree whose normal form is `self`.
    pub fn to_expr(&self) -> ScalarExpr {
        let n = poly_to_expr(self.numerator());
        if self.is_polynomial() {
            n
        } else {
            ScalarExpr::Quotient(Box::new(n), Box::new(poly_to_expr(self.denominator())))
        }
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarExpr::Const(c) if c.is_integer() => write!(f, "{}", c.numer()),
            ScalarExpr::Const(c) => write!(f, "({}/{})", c.numer(), c.denom()),
            ScalarExpr::Coord(c) => write!(f, "{c}"),
            ScalarExpr::Opaque { name, derivs } if derivs.is_empty() => write!(f, "{name}"),
            ScalarExpr::Opaque { name, derivs } => write!(f, "{name}_{{;{}}}", derivs.join(",")),
            ScalarExpr::Sum(items) if items.is_empty() => write!(f, "0"),
            ScalarExpr::Sum(items) => {
                write!(f, "(")?;
                for (i, e) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
            ScalarExpr::Product(items) if items.is_empty() => write!(f, "1"),
            ScalarExpr::Product(items) => {
                for (i, e) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "{e}")?;
                }
                Ok(())
            }
            ScalarExpr::Neg(e) => write!(f, "-({e})"),
            ScalarExpr::Pow(e, n) => write!(f, "({e})**{n}"),
            ScalarExpr::Quotient(a, b) => write!(f, "({a})/({b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn long_division_example() {
        // x/(1+x^2) + x^3/(1+x^2) = x
        let x = ScalarExpr::coord("x");
        let d = ScalarExpr::Sum(vec![ScalarExpr::int(1), ScalarExpr::Pow(Box::new(x.clone()), 2)]);
        let e = ScalarExpr::Sum(vec![
            ScalarExpr::Quotient(Box::new(x.clone()), Box::new(d.clone())),
            ScalarExpr::Quotient(Box::new(ScalarExpr::Pow(Box::new(x.clone()), 3)), Box::new(d)),
        ]);
        assert_eq!(e.normalize().unwrap(), Scalar::coord("x"));
    }

    #[test]
    fn opaque_commutes() {
        let f = ScalarExpr::opaque("f");
        let g = ScalarExpr::opaque("g");
        let e = ScalarExpr::Sum(vec![
            ScalarExpr::Product(vec![f.clone(), g.clone()]),
            ScalarExpr::Neg(Box::new(ScalarExpr::Product(vec![g, f]))),
        ]);
        assert!(e.is_zero().unwrap());
    }

    #[test]
    fn to_expr_round_trips() {
        let x = Scalar::coord("x");
        let s = (&x + &Scalar::opaque_derivative("f", &["y"]))
            .checked_div(&(&x * &x + Scalar::one()))
            .unwrap();
        assert_eq!(s.to_expr().normalize().unwrap(), s);
    }
}

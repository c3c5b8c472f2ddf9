use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::poly::Atom;
use super::scalar::Scalar;
use super::SymbolicError;

/// A single coordinate chart: base coordinates plus torus-fiber coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartSpec {
    base: Vec<String>,
    fiber: Vec<String>,
}

impl ChartSpec {
    pub fn new<S: AsRef<str>>(base: &[S], fiber: &[S]) -> Result<Self, SymbolicError> {
        let base: Vec<String> = base.iter().map(|s| s.as_ref().to_string()).collect();
        let fiber: Vec<String> = fiber.iter().map(|s| s.as_ref().to_string()).collect();
        if base.is_empty() {
            return Err(SymbolicError::EmptyChart);
        }
        let mut seen = BTreeSet::new();
        for n in base.iter().chain(fiber.iter()) {
            if !seen.insert(n.as_str()) {
                return Err(SymbolicError::DuplicateCoordinate(n.clone()));
            }
        }
        Ok(ChartSpec { base, fiber })
    }

    pub fn base<S: AsRef<str>>(base: &[S]) -> Result<Self, SymbolicError> {
        ChartSpec::new(base, &[])
    }

    pub fn base_coords(&self) -> &[String] {
        &self.base
    }

    pub fn fiber_coords(&self) -> &[String] {
        &self.fiber
    }

    pub fn dimension(&self) -> usize {
        self.base.len()
    }

    /// Base coordinates followed by fiber coordinates.
    pub fn all_coords(&self) -> impl Iterator<Item = &String> {
        self.base.iter().chain(self.fiber.iter())
    }

    pub fn is_base(&self, name: &str) -> bool {
        self.base.iter().any(|c| c == name)
    }

    pub fn is_fiber(&self, name: &str) -> bool {
        self.fiber.iter().any(|c| c == name)
    }

    pub fn base_index(&self, name: &str) -> Option<usize> {
        self.base.iter().position(|c| c == name)
    }

    /// Same base, different fiber coordinates.
    pub fn with_fiber<S: AsRef<str>>(&self, fiber: &[S]) -> Result<Self, SymbolicError> {
        let fiber: Vec<&str> = fiber.iter().map(|s| s.as_ref()).collect();
        let base: Vec<&str> = self.base.iter().map(String::as_str).collect();
        ChartSpec::new(&base, &fiber)
    }

    /// Partial derivative along a chart coordinate.
    ///
    /// Scalars never depend on fiber coordinates, so the derivative along a
    /// fiber coordinate is zero.
    pub fn partial(&self, e: &Scalar, coord: &str) -> Result<Scalar, SymbolicError> {
        if self.is_base(coord) {
            Ok(e.partial(coord))
        } else if self.is_fiber(coord) {
            Ok(Scalar::zero())
        } else {
            Err(SymbolicError::UnknownCoordinate(coord.to_string()))
        }
    }

    /// Checks that `e` only mentions base coordinates (fiber invariance).
    pub fn check_invariant(&self, e: &Scalar) -> Result<(), SymbolicError> {
        for a in e.atoms() {
            if let Atom::Coord(c) = &a {
                if self.is_fiber(c) {
                    return Err(SymbolicError::FiberDependence(c.to_string()));
                }
                if !self.is_base(c) {
                    return Err(SymbolicError::UnknownCoordinate(c.to_string()));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(matches!(
            ChartSpec::new(&["x", "x"], &[]),
            Err(SymbolicError::DuplicateCoordinate(_))
        ));
        assert!(matches!(
            ChartSpec::new(&["x"], &["x"]),
            Err(SymbolicError::DuplicateCoordinate(_))
        ));
        let empty: [&str; 0] = [];
        assert!(matches!(ChartSpec::base(&empty), Err(SymbolicError::EmptyChart)));
    }

    #[test]
    fn partial_examples() {
        let chart = ChartSpec::new(&["x", "y"], &["theta"]).unwrap();
        let x = Scalar::coord("x");
        let y = Scalar::coord("y");
        let x2y = &(&x * &x) * &y;
        assert_eq!(
            chart.partial(&x2y, "x").unwrap(),
            Scalar::from_int(2) * &x * &y
        );
        assert_eq!(
            chart.partial(&Scalar::opaque("f"), "y").unwrap(),
            Scalar::opaque_derivative("f", &["y"])
        );
        let xf = &x * &Scalar::opaque("f");
        assert_eq!(
            chart.partial(&xf, "x").unwrap(),
            Scalar::opaque("f") + &x * &Scalar::opaque_derivative("f", &["x"])
        );
        assert!(chart.partial(&x, "theta").unwrap().is_zero());
        assert!(matches!(
            chart.partial(&x, "z"),
            Err(SymbolicError::UnknownCoordinate(_))
        ));
    }

    #[test]
    fn invariance() {
        let chart = ChartSpec::new(&["x"], &["theta"]).unwrap();
        assert!(chart.check_invariant(&Scalar::coord("x")).is_ok());
        assert!(matches!(
            chart.check_invariant(&Scalar::coord("theta")),
            Err(SymbolicError::FiberDependence(_))
        ));
    }
}

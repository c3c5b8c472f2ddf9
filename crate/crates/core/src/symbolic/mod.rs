//! Exact scalar arithmetic with a decidable zero test.
//!
//! The scalar ring is rational functions in the base coordinates with opaque
//! function atoms adjoined in the numerator. Opaque atoms carry commuting
//! formal partial derivatives, so `f_{;xy}` and `f_{;yx}` are the same atom.

mod chart;
mod expr;
mod gcd;
mod poly;
mod scalar;

pub use chart::ChartSpec;
pub use expr::ScalarExpr;
pub use gcd::gcd;
pub use poly::{Atom, Monomial, Poly};
pub use scalar::Scalar;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("denominator contains an opaque symbol: {0}")]
    DenominatorContainsOpaqueSymbol(String),
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),
    #[error("duplicate coordinate `{0}`")]
    DuplicateCoordinate(String),
    #[error("chart needs at least one base coordinate")]
    EmptyChart,
    #[error("coefficient depends on fiber coordinate `{0}`")]
    FiberDependence(String),
}

/// Canonical form; see [`ScalarExpr::normalize`].
pub fn normalize(e: &ScalarExpr) -> Result<Scalar, SymbolicError> {
    e.normalize()
}

pub fn is_zero(e: &ScalarExpr) -> Result<bool, SymbolicError> {
    e.is_zero()
}

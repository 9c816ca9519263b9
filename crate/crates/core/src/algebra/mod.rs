//! Exact arithmetic over `Q[A^±1, a1^±1, a2^±1]`.
//!
//! [`LaurentPoly`] is the coefficient ring; [`PolyInX`] and
//! [`RationalFunctionInX`] are polynomials and rational functions in a fourth
//! variable `X`, and [`TruncatedSeries`] holds their power series expansions.
//! No floating point is used anywhere in this module.

mod laurent;
mod poly;
mod series;

pub use laurent::{Exponents, LaurentPoly, Var};
pub use poly::{PolyInX, RationalFunctionInX};
pub use series::{
    geom_expand, rf_expand, rf_expand_checked, series_eq, Mismatch, SeriesComparison,
    TruncatedSeries,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("denominator must have constant term 1, found {constant_term}")]
    DenominatorNotNormalized { constant_term: String },
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
}

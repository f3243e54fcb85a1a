//! Exact truncated multivariate polynomials over the rationals.
//!
//! Every symbolic object in the crate (group laws, invariant fields, forms)
//! carries its coefficients as a [`TruncatedPoly`]: a sparse map from
//! exponent multi-indices to [`Rational`] coefficients on a fixed [`Chart`],
//! with all terms above a total-degree bound discarded.

mod chart;
mod rational;
mod truncated;

pub use chart::{Chart, ChartError, Coordinate, Role};
pub use rational::{int, parse_rational, rat, rational_to_f64, Rational, RationalParseError};
pub use truncated::{Monomial, TruncatedPoly};
pub(crate) use rational::{exact_sqrt, fmt_rational};

//! Exact arithmetic: Laurent polynomials over big integers, truncated power
//! series over rationals, and the complex evaluation parameter.

mod param;
mod poly;
mod series;

pub use param::{ComplexParam, DEFAULT_PRECISION, MIN_PRECISION};
pub use poly::LaurentPolynomial;
pub use series::{TruncatedSeries, MAX_ORDER};

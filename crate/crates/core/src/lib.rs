//! Colored Jones polynomials of the figure-eight knot.
//!
//! * [`laurent`] exact Laurent polynomials, rational power series and the
//!   complex parameter type.
//! * [`jones`] the cyclotomic sum (exact and numeric), the factor functions,
//!   the inhomogeneous recursion and Kashaev values.
//! * [`lab`] convergence, shared-limit, growth-rate and MMR studies.
//! * [`lemmas`] grid verification of the analytic inequalities behind the
//!   convergence proof.

pub mod error;
pub mod jones;
pub mod lab;
pub mod laurent;
pub mod lemmas;
pub mod mp;

pub use error::{Error, Result};
pub use laurent::{ComplexParam, LaurentPolynomial, TruncatedSeries};

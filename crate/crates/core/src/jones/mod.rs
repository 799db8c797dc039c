//! The cyclotomic formula for the figure-eight knot, its numeric evaluation,
//! the Alexander target, the inhomogeneous recursion and Kashaev values.

mod alexander;
mod habiro;
mod kashaev;
mod numeric;
mod recursion;

pub use alexander::{alexander_inverse, alexander_polynomial};
pub use habiro::{habiro_exact, habiro_factor, JonesExact};
pub use kashaev::kashaev_value;
pub use numeric::{g_factor, jones_numeric, JonesNumeric, Shift, SummandTrace};
pub use recursion::{cleared_coefficients, recursion_denominator, recursion_residual, recursion_residual_from};

use crate::error::{Error, Result};
use crate::laurent::{ComplexParam, LaurentPolynomial};
use crate::mp::{self, Complex};

/// `Δ(E; t) = −t + 3 − t^{−1}`.
pub fn alexander_polynomial() -> LaurentPolynomial {
    LaurentPolynomial::from_terms([(1, -1), (0, 3), (-1, -1)])
}

/// `1 / Δ(E; e^a) = 1 / (3 − 2 cosh a)`.
///
/// Values of `|3 − 2 cosh a|` at or below `2^{8−p}` are reported as a pole:
/// at that size the denominator is indistinguishable from rounding noise.
pub fn alexander_inverse(a: &ComplexParam) -> Result<Complex> {
    let w = a.working_precision();
    let p = a.precision();
    let denom = Complex::from_f64(3.0, 0.0, w).sub(&a.value().cosh(w).scale(&mp::real(2.0, w), w), w);
    if mp::below_pow2(&denom.abs(w), 9 - p as i64) {
        return Err(Error::Pole(format!("3 - 2cosh a vanishes at a = {a}")));
    }
    Ok(denom.recip(w).round_to(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_zero_is_one() {
        let a = ComplexParam::zero(128).unwrap();
        assert_eq!(alexander_inverse(&a).unwrap(), Complex::one(128));
        assert_eq!(alexander_polynomial().eval_at_one(), 1.into());
    }

    #[test]
    fn matches_shifted_delta_form() {
        // 1/(3 - 2cosh a) = 1/(1 - (2cosh a - 2))
        let a = ComplexParam::from_f64(0.4, 0.3, 128).unwrap();
        let w = 192;
        let shifted = a
            .value()
            .cosh(w)
            .scale(&mp::real(2.0, w), w)
            .sub(&Complex::from_f64(2.0, 0.0, w), w);
        let other = Complex::one(w).sub(&shifted, w).recip(w).round_to(128);
        let got = alexander_inverse(&a).unwrap();
        assert!(mp::below_pow2(&mp::rel_diff(&got, &other, w), -120));
    }

    #[test]
    fn pole_on_real_boundary() {
        let a = ComplexParam::boundary_real(128).unwrap();
        assert!(matches!(alexander_inverse(&a), Err(Error::Pole(_))));
        // the imaginary landmark has 3 - 2cos(π/3) = 2, no pole
        let b = ComplexParam::boundary_imag(128).unwrap();
        let v = alexander_inverse(&b).unwrap();
        assert_eq!(v.to_f64(), (0.5, 0.0));
    }

    #[test]
    fn agrees_with_polynomial_evaluation() {
        let a = ComplexParam::from_f64(0.2, -0.1, 128).unwrap();
        let w = a.working_precision();
        let delta = alexander_polynomial().eval(&a.value().exp(w), w).unwrap();
        let inv = delta.recip(w).round_to(128);
        let got = alexander_inverse(&a).unwrap();
        assert!(mp::below_pow2(&mp::rel_diff(&got, &inv, w), -120));
    }
}

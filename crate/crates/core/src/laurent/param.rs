use std::fmt;

use crate::error::{Error, Result};
use crate::mp::{self, Complex, Real, GUARD_BITS};

pub const DEFAULT_PRECISION: usize = 128;
pub const MIN_PRECISION: usize = 53;

/// A complex evaluation parameter together with the precision every
/// computation involving it must honour.
///
/// The value is held with [`GUARD_BITS`] extra bits beyond `precision` so
/// derived points like `exp(a/N)` are not limited by the storage rounding.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexParam {
    value: Complex,
    precision: usize,
}

impl ComplexParam {
    pub fn new(value: Complex, precision: usize) -> Result<Self> {
        if precision < MIN_PRECISION {
            return Err(Error::Precision(precision));
        }
        Ok(ComplexParam { value, precision })
    }

    pub fn from_f64(re: f64, im: f64, precision: usize) -> Result<Self> {
        ComplexParam::new(Complex::from_f64(re, im, precision + GUARD_BITS), precision)
    }

    pub fn zero(precision: usize) -> Result<Self> {
        ComplexParam::from_f64(0.0, 0.0, precision)
    }

    /// `2πi`, the Kashaev evaluation point `exp(2πi/N)` after scaling by `1/N`.
    pub fn two_pi_i(precision: usize) -> Result<Self> {
        let w = precision + GUARD_BITS;
        let two_pi = mp::pi(w).mul(&mp::real(2.0, w), w, mp::RM);
        ComplexParam::new(Complex::new(mp::real(0.0, w), two_pi), precision)
    }

    /// `log((3 + √5)/2) = arccosh(3/2)`, where the region boundary meets the real axis.
    pub fn boundary_real(precision: usize) -> Result<Self> {
        let w = precision + GUARD_BITS;
        let v = mp::ln(
            &mp::sqrt(&mp::real(5.0, w), w)
                .add(&mp::real(3.0, w), w, mp::RM)
                .div(&mp::real(2.0, w), w, mp::RM),
            w,
        );
        ComplexParam::new(Complex::from_real(v, w), precision)
    }

    /// `πi/3`, where the region boundary meets the imaginary axis.
    pub fn boundary_imag(precision: usize) -> Result<Self> {
        let w = precision + GUARD_BITS;
        let v = mp::pi(w).div(&mp::real(3.0, w), w, mp::RM);
        ComplexParam::new(Complex::new(mp::real(0.0, w), v), precision)
    }

    /// Parses `x`, `yi`, `x+yi`, `x-yi` (decimal literals, exact to the
    /// working precision) or the token `2pi*i`.
    pub fn parse(s: &str, precision: usize) -> Result<Self> {
        if precision < MIN_PRECISION {
            return Err(Error::Precision(precision));
        }
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(s.to_owned());
        match compact.as_str() {
            "" => return Err(bad()),
            "2pi*i" | "2*pi*i" => return ComplexParam::two_pi_i(precision),
            _ => {}
        }
        let w = precision + GUARD_BITS;
        let num = |t: &str| -> Result<Real> {
            match t {
                "" | "+" => Ok(mp::real(1.0, w)),
                "-" => Ok(mp::real(-1.0, w)),
                _ => mp::parse_decimal(t, w).ok_or_else(bad),
            }
        };
        let Some(body) = compact.strip_suffix('i') else {
            let re = mp::parse_decimal(&compact, w).ok_or_else(bad)?;
            return ComplexParam::new(Complex::from_real(re, w), precision);
        };
        // split at the last sign that is not a leading sign or an exponent sign
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(k) => (mp::parse_decimal(&body[..k], w).ok_or_else(bad)?, num(&body[k..])?),
            None => (mp::real(0.0, w), num(body)?),
        };
        ComplexParam::new(Complex::new(re, im), precision)
    }

    pub fn value(&self) -> &Complex {
        &self.value
    }

    pub fn re(&self) -> &Real {
        &self.value.re
    }

    pub fn im(&self) -> &Real {
        &self.value.im
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// Precision used internally before rounding results back to `precision`.
    pub fn working_precision(&self) -> usize {
        self.precision + GUARD_BITS
    }

    pub fn with_precision(&self, precision: usize) -> Result<Self> {
        ComplexParam::new(self.value.clone(), precision)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// `δ = |2 cosh a − 2|`, recomputed on every call.
    pub fn delta(&self) -> Real {
        let w = self.working_precision();
        let two = mp::real(2.0, w);
        let d = self
            .value
            .cosh(w)
            .scale(&two, w)
            .sub(&Complex::from_f64(2.0, 0.0, w), w);
        mp::round_to(&d.abs(w), self.precision)
    }

    /// `exp(a / n)` at the working precision.
    pub fn exp_over(&self, n: u64) -> Complex {
        let w = self.working_precision();
        let inv = mp::real(1.0, w).div(&mp::from_bigint(&n.into(), w), w, mp::RM);
        self.value.scale(&inv, w).exp(w)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        self.value.to_f64()
    }
}

impl fmt::Display for ComplexParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        if im < 0.0 {
            write!(f, "{re}-{}i", -im)
        } else {
            write!(f, "{re}+{im}i")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parsed(s: &str) -> (f64, f64) {
        ComplexParam::parse(s, 128).unwrap().to_f64()
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parsed("0.5"), (0.5, 0.0));
        assert_eq!(parsed("0.25i"), (0.0, 0.25));
        assert_eq!(parsed("0.3+0.2i"), (0.3, 0.2));
        assert_eq!(parsed("0.3-0.2i"), (0.3, -0.2));
        assert_eq!(parsed("-0.4-i"), (-0.4, -1.0));
        assert_eq!(parsed("-i"), (0.0, -1.0));
        assert_eq!(parsed("1e-3+2E-1i"), (1e-3, 0.2));
        let (re, im) = parsed("2pi*i");
        assert_eq!(re, 0.0);
        assert_eq!(im, 2.0 * std::f64::consts::PI);
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "abc", "1+2j", "0.5ii", "+-i", "pi"] {
            assert!(matches!(ComplexParam::parse(bad, 128), Err(Error::Parse(_))), "{bad}");
        }
        assert_eq!(ComplexParam::parse("1", 32), Err(Error::Precision(32)));
        assert_eq!(ComplexParam::zero(52), Err(Error::Precision(52)));
    }

    #[test]
    fn delta_examples() {
        assert!(ComplexParam::zero(128).unwrap().delta().is_zero());
        let d = mp::to_f64(&ComplexParam::parse("0.5", 128).unwrap().delta());
        assert!((d - (2.0 * 0.5f64.cosh() - 2.0)).abs() < 1e-15);
        let b = ComplexParam::boundary_real(128).unwrap().delta();
        let one = mp::real(1.0, 128);
        assert!(mp::below_pow2(&b.sub(&one, 128, mp::RM), -120));
        let b = ComplexParam::boundary_imag(128).unwrap().delta();
        assert!(mp::below_pow2(&b.sub(&one, 128, mp::RM), -120));
    }
}

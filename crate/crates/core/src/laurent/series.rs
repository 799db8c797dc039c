use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest truncation order a series may carry.
pub const MAX_ORDER: usize = 32;

/// Power series `c_0 + c_1 z + ... + c_d z^d` with exact rational coefficients.
///
/// Products and inverses discard every term above `z^d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

fn check_order(d: usize) -> Result<()> {
    if d > MAX_ORDER {
        Err(Error::OrderTooLarge(d))
    } else {
        Ok(())
    }
}

impl TruncatedSeries {
    /// Pads or truncates `coeffs` to exactly `d + 1` entries.
    pub fn new(mut coeffs: Vec<BigRational>, d: usize) -> Result<Self> {
        check_order(d)?;
        coeffs.resize(d + 1, BigRational::zero());
        Ok(TruncatedSeries { coeffs })
    }

    pub fn from_integers(coeffs: &[i64], d: usize) -> Result<Self> {
        TruncatedSeries::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(), d)
    }

    pub fn constant(c: BigRational, d: usize) -> Result<Self> {
        TruncatedSeries::new(vec![c], d)
    }

    /// `e^{m z}` truncated at order `d`: coefficients `m^k / k!`.
    pub fn exp_pow(m: i64, d: usize) -> Result<Self> {
        check_order(d)?;
        let m = BigRational::from_integer(m.into());
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut term = BigRational::one();
        for k in 0..=d {
            if k > 0 {
                term = term * &m / BigRational::from_integer(BigInt::from(k));
            }
            coeffs.push(term.clone());
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Multiplicative inverse through order `d`.
    ///
    /// Solves `Σ_{i≤k} c_i r_{k-i} = [k = 0]` for `r_k` one order at a time.
    pub fn invert(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let d = self.order();
        let inv0 = c0.recip();
        let mut r: Vec<BigRational> = Vec::with_capacity(d + 1);
        r.push(inv0.clone());
        for k in 1..=d {
            let s: BigRational = (1..=k).map(|i| &self.coeffs[i] * &r[k - i]).sum();
            r.push(-s * &inv0);
        }
        Ok(TruncatedSeries { coeffs: r })
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        let d = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=d).map(|k| f(&self.coeffs[k], &rhs.coeffs[k])).collect(),
        }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

/// Result order is the smaller of the two operand orders.
impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let d = self.order().min(rhs.order());
        let coeffs = (0..=d)
            .map(|k| (0..=k).map(|i| &self.coeffs[i] * &rhs.coeffs[k - i]).sum())
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match k {
                0 => format!("{c}"),
                1 => format!("({c})z"),
                _ => format!("({c})z^{k}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} + O(z^{})", parts.join(" + "), self.order() + 1)
    }
}

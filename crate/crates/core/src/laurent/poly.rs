use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::mp::{self, Complex, GUARD_BITS};

/// Laurent polynomial in `t` with arbitrary-precision integer coefficients.
///
/// Stored sparsely as exponent -> coefficient. Zero coefficients are never
/// kept, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        LaurentPolynomial::default()
    }

    pub fn one() -> Self {
        LaurentPolynomial::monomial(BigInt::one(), 0)
    }

    /// `t`
    pub fn t() -> Self {
        LaurentPolynomial::monomial(BigInt::one(), 1)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = LaurentPolynomial::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = LaurentPolynomial::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitutes `t -> t^{-1}`.
    pub fn mirror(&self) -> Self {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    /// Value at `t = 1`: the coefficient sum.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// `Σ c_m m^j` over all terms.
    pub fn exponent_moment(&self, j: u32) -> BigInt {
        self.terms.iter().map(|(e, c)| c * BigInt::from(*e).pow(j)).sum()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return LaurentPolynomial::zero();
        }
        LaurentPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPolynomial::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Bit length of the largest coefficient magnitude.
    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.values().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// Evaluates at a nonzero complex point.
    ///
    /// Horner's scheme runs over the dense exponent range `min..=max`, then the
    /// result is multiplied by `z^min`. Internally the working precision is
    /// widened by the coefficient size so that cancellation between large
    /// coefficients cannot eat into the `p` bits returned.
    pub fn eval(&self, z: &Complex, p: usize) -> Result<Complex> {
        if z.is_zero() {
            return Err(Error::Domain("Laurent polynomial evaluated at 0".into()));
        }
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return Ok(Complex::zero(p));
        };
        let span = (hi - lo) as u64 + 1;
        let w = p + GUARD_BITS + self.max_coeff_bits() as usize + (64 - span.leading_zeros()) as usize;
        let mut acc = Complex::zero(w);
        for e in (lo..=hi).rev() {
            acc = acc.mul(z, w);
            if let Some(c) = self.terms.get(&e) {
                acc.re = acc.re.add(&mp::from_bigint(c, w), w, mp::RM);
            }
        }
        let scaled = if lo == 0 { acc } else { acc.mul(&z.powi(lo, w), w) };
        Ok(scaled.round_to(p))
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match *e {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "t^{e}")?,
                _ => write!(f, "{mag}*t^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl std::iter::Sum for LaurentPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(LaurentPolynomial::zero(), |a, b| a + b)
    }
}

//! Thin multiprecision layer over `astro-float`.
//!
//! Every function takes an explicit binary precision `p`. Results are rounded
//! to nearest-even. `astro-float` rounds precisions up to a whole number of
//! 64-bit words internally, which only ever adds accuracy.

use std::cell::RefCell;
use std::cmp::Ordering;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

pub use astro_float::BigFloat as Real;

/// Rounding used throughout the crate.
pub const RM: RoundingMode = RoundingMode::ToEven;

/// Extra bits carried by internal computations on top of the caller's precision.
pub const GUARD_BITS: usize = 64;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

pub(crate) fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

pub fn real(v: f64, p: usize) -> Real {
    BigFloat::from_f64(v, p)
}

pub fn int(v: i64, p: usize) -> Real {
    BigFloat::from_i64(v, p)
}

/// Converts a big integer without going through `f64`.
pub fn from_bigint(v: &BigInt, p: usize) -> Real {
    if let Some(small) = v.to_i128() {
        return BigFloat::from_i128(small, p);
    }
    let (sign, digits) = v.to_u64_digits();
    let base = BigFloat::from_u128(1u128 << 64, p);
    let mut acc = BigFloat::from_u64(0, p);
    for d in digits.iter().rev() {
        acc = acc.mul(&base, p, RM).add(&BigFloat::from_u64(*d, p), p, RM);
    }
    if sign == num_bigint::Sign::Minus {
        acc.inv_sign();
    }
    acc
}

/// Parses a decimal literal directly into binary at precision `p`.
pub fn parse_decimal(s: &str, p: usize) -> Option<Real> {
    let s = s.trim();
    if !is_decimal_literal(s) {
        return None;
    }
    let v = with_consts(|cc| BigFloat::parse(s, Radix::Dec, p, RM, cc));
    if v.is_nan() || v.is_inf() {
        None
    } else {
        Some(v)
    }
}

/// `[+-]digits[.digits][(e|E)[+-]digits]`, with at least one mantissa digit.
fn is_decimal_literal(s: &str) -> bool {
    let s = s.strip_prefix(['+', '-']).unwrap_or(s);
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, Some(e.strip_prefix(['+', '-']).unwrap_or(e))),
        None => (s, None),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    !(int.is_empty() && frac.is_empty())
        && digits(int)
        && digits(frac)
        && exp.is_none_or(|e| !e.is_empty() && digits(e))
}

pub fn pi(p: usize) -> Real {
    with_consts(|cc| cc.pi(p, RM))
}

pub fn exp(x: &Real, p: usize) -> Real {
    with_consts(|cc| x.exp(p, RM, cc))
}

pub fn ln(x: &Real, p: usize) -> Real {
    with_consts(|cc| x.ln(p, RM, cc))
}

pub fn cos(x: &Real, p: usize) -> Real {
    with_consts(|cc| x.cos(p, RM, cc))
}

pub fn sin(x: &Real, p: usize) -> Real {
    with_consts(|cc| x.sin(p, RM, cc))
}

pub fn cosh(x: &Real, p: usize) -> Real {
    with_consts(|cc| x.cosh(p, RM, cc))
}

pub fn sinh(x: &Real, p: usize) -> Real {
    with_consts(|cc| x.sinh(p, RM, cc))
}

pub fn sqrt(x: &Real, p: usize) -> Real {
    x.sqrt(p, RM)
}

/// Nearest `f64`; saturates to `±inf` / `0` outside the `f64` exponent range.
pub fn to_f64(x: &Real) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let Some((words, _, sign, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let top = match words.last() {
        Some(&w) if w != 0 => w,
        _ => return 0.0,
    };
    let e = e as i64 - 64;
    let mag = if e > 1100 {
        f64::INFINITY
    } else if e < -1200 {
        0.0
    } else {
        // split the scaling so neither factor leaves the normal range early
        let half = e / 2;
        top as f64 * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
    };
    if sign == Sign::Neg {
        -mag
    } else {
        mag
    }
}

/// Binary exponent `e` with `2^(e-1) <= |x| < 2^e`; `None` for zero.
pub fn exponent(x: &Real) -> Option<i64> {
    if x.is_zero() {
        None
    } else {
        x.exponent().map(|e| e as i64)
    }
}

/// `|x| < 2^k`, with zero always below.
pub fn below_pow2(x: &Real, k: i64) -> bool {
    match exponent(x) {
        None => true,
        Some(e) => e <= k,
    }
}

pub fn cmp(a: &Real, b: &Real) -> Ordering {
    match a.cmp(b) {
        Some(c) if c < 0 => Ordering::Less,
        Some(c) if c > 0 => Ordering::Greater,
        _ => Ordering::Equal,
    }
}

/// Decimal rendering with every digit the binary value carries.
pub fn to_decimal(x: &Real) -> String {
    if x.is_zero() {
        return "0".to_owned();
    }
    let raw = with_consts(|cc| x.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".to_owned());
    tidy_decimal(&raw)
}

/// `1.2500e+0` → `1.25`, `5.e-3` → `5e-3`.
fn tidy_decimal(raw: &str) -> String {
    let (mant, exp) = match raw.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().ok()),
        None => (raw, Some(0)),
    };
    let Some(exp) = exp else {
        return raw.to_owned();
    };
    let mant = if mant.contains('.') {
        mant.trim_end_matches('0').trim_end_matches('.')
    } else {
        mant
    };
    if exp == 0 {
        mant.to_owned()
    } else {
        format!("{mant}e{exp}")
    }
}

/// Rounds to a narrower precision.
pub fn round_to(x: &Real, p: usize) -> Real {
    let mut y = x.clone();
    // only fails for an invalid precision, which the callers never pass
    let _ = y.set_precision(p, RM);
    y
}

/// `|a - b| / |b|`, or `|a|` when `b` is zero.
pub fn rel_diff(a: &Complex, b: &Complex, p: usize) -> Real {
    let d = a.sub(b, p).abs(p);
    let nb = b.abs(p);
    if nb.is_zero() {
        d
    } else {
        d.div(&nb, p, RM)
    }
}

/// Complex number over [`Real`] parts.
#[derive(Clone, Debug)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        cmp(&self.re, &other.re) == Ordering::Equal && cmp(&self.im, &other.im) == Ordering::Equal
    }
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn from_f64(re: f64, im: f64, p: usize) -> Self {
        Complex::new(real(re, p), real(im, p))
    }

    pub fn from_real(re: Real, p: usize) -> Self {
        Complex::new(re, real(0.0, p))
    }

    pub fn zero(p: usize) -> Self {
        Complex::from_f64(0.0, 0.0, p)
    }

    pub fn one(p: usize) -> Self {
        Complex::from_f64(1.0, 0.0, p)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Complex, p: usize) -> Complex {
        Complex::new(self.re.add(&o.re, p, RM), self.im.add(&o.im, p, RM))
    }

    pub fn sub(&self, o: &Complex, p: usize) -> Complex {
        Complex::new(self.re.sub(&o.re, p, RM), self.im.sub(&o.im, p, RM))
    }

    pub fn neg(&self) -> Complex {
        Complex::new(self.re.neg(), self.im.neg())
    }

    pub fn mul(&self, o: &Complex, p: usize) -> Complex {
        let re = self.re.mul(&o.re, p, RM).sub(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self.re.mul(&o.im, p, RM).add(&self.im.mul(&o.re, p, RM), p, RM);
        Complex::new(re, im)
    }

    pub fn scale(&self, k: &Real, p: usize) -> Complex {
        Complex::new(self.re.mul(k, p, RM), self.im.mul(k, p, RM))
    }

    pub fn norm_sqr(&self, p: usize) -> Real {
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs(&self, p: usize) -> Real {
        sqrt(&self.norm_sqr(p), p)
    }

    pub fn recip(&self, p: usize) -> Complex {
        let n = self.norm_sqr(p);
        Complex::new(self.re.div(&n, p, RM), self.im.neg().div(&n, p, RM))
    }

    pub fn div(&self, o: &Complex, p: usize) -> Complex {
        self.mul(&o.recip(p), p)
    }

    pub fn exp(&self, p: usize) -> Complex {
        let m = exp(&self.re, p);
        Complex::new(m.mul(&cos(&self.im, p), p, RM), m.mul(&sin(&self.im, p), p, RM))
    }

    /// `cosh(x + iy) = cosh x cos y + i sinh x sin y`.
    pub fn cosh(&self, p: usize) -> Complex {
        let (ch, sh) = cosh_sinh(&self.re, p);
        Complex::new(ch.mul(&cos(&self.im, p), p, RM), sh.mul(&sin(&self.im, p), p, RM))
    }

    /// `sinh(x + iy) = sinh x cos y + i cosh x sin y`.
    pub fn sinh(&self, p: usize) -> Complex {
        let (ch, sh) = cosh_sinh(&self.re, p);
        Complex::new(sh.mul(&cos(&self.im, p), p, RM), ch.mul(&sin(&self.im, p), p, RM))
    }

    /// Integer power by repeated squaring; negative powers go through the reciprocal.
    pub fn powi(&self, n: i64, p: usize) -> Complex {
        let base = if n < 0 { self.recip(p) } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Complex::one(p);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq, p);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq, p);
            }
        }
        acc
    }

    pub fn round_to(&self, p: usize) -> Complex {
        Complex::new(round_to(&self.re, p), round_to(&self.im, p))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.re), to_f64(&self.im))
    }
}

fn cosh_sinh(x: &Real, p: usize) -> (Real, Real) {
    if x.is_zero() {
        return (real(1.0, p), real(0.0, p));
    }
    // for small |x| sinh via exp cancels; take both from the library instead
    if below_pow2(x, -4) {
        return (cosh(x, p), sinh(x, p));
    }
    let e = exp(x, p);
    let inv = e.reciprocal(p, RM);
    let two = real(2.0, p);
    (e.add(&inv, p, RM).div(&two, p, RM), e.sub(&inv, p, RM).div(&two, p, RM))
}

/// Exact rational `num / den` at precision `p`.
pub fn ratio(num: &BigInt, den: &BigInt, p: usize) -> Real {
    debug_assert!(!den.is_zero());
    let n = from_bigint(num, p);
    let d = from_bigint(den, p);
    n.div(&d, p, RM)
}

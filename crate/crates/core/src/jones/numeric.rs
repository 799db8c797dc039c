use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::ComplexParam;
use crate::mp::{self, Complex};

/// Which member of the family `J_{N−l}(E; exp(a/N))` is being summed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Shift {
    Zero,
    One,
    Two,
}

impl Shift {
    pub fn from_u32(l: u32) -> Result<Self> {
        match l {
            0 => Ok(Shift::Zero),
            1 => Ok(Shift::One),
            2 => Ok(Shift::Two),
            _ => Err(Error::Domain(format!("shift must be 0, 1 or 2, got {l}"))),
        }
    }

    pub fn get(self) -> u32 {
        match self {
            Shift::Zero => 0,
            Shift::One => 1,
            Shift::Two => 2,
        }
    }
}

/// Factors and partial products behind one numeric evaluation.
///
/// `g_values[i]` holds the factor for `j = i + 1` and `f_values[k]` the
/// partial product through `j = k`, so `f_values[0] = 1`. Both vectors stay at
/// the working precision they were computed in; recomputing the products in
/// order reproduces `f_values` bit for bit.
#[derive(Clone, Debug)]
pub struct SummandTrace {
    pub n: u32,
    pub a: ComplexParam,
    pub shift: Shift,
    pub working_precision: usize,
    pub g_values: Vec<Complex>,
    pub f_values: Vec<Complex>,
    /// Indices `k` with `|f(k)| < 2^{8−p}`; informational only.
    pub underflow: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct JonesNumeric {
    /// Sum rounded to the parameter's precision.
    pub value: Complex,
    pub trace: SummandTrace,
}

/// Evaluates `2 cosh(a(1 − l/N)) − 2 cosh(aj/N)` at `w` bits, with the leading
/// term supplied by the caller.
fn factor_at(lead: &Complex, a: &Complex, j: u32, n: u32, w: usize) -> Complex {
    let scale = mp::int(j as i64, w).div(&mp::int(n as i64, w), w, mp::RM);
    let c = a.scale(&scale, w).cosh(w);
    lead.sub(&c.scale(&mp::real(2.0, w), w), w)
}

fn lead_term(a: &Complex, n: u32, shift: Shift, w: usize) -> Complex {
    let two = mp::real(2.0, w);
    match shift {
        Shift::Zero => a.cosh(w).scale(&two, w),
        _ => {
            let frac = mp::int((n - shift.get()) as i64, w).div(&mp::int(n as i64, w), w, mp::RM);
            a.scale(&frac, w).cosh(w).scale(&two, w)
        }
    }
}

/// The factor `g_{N,a}(j)` (`l = 0`) or `g'_N(j; l)` (`l = 1, 2`), rounded to
/// the parameter's precision.
pub fn g_factor(n: u32, a: &ComplexParam, j: u32, shift: Shift) -> Result<Complex> {
    if j < 1 || j >= n {
        return Err(Error::Domain(format!("factor index j={j} outside 1..{n}")));
    }
    let w = a.working_precision();
    let lead = lead_term(a.value(), n, shift, w);
    Ok(factor_at(&lead, a.value(), j, n, w).round_to(a.precision()))
}

/// `J_{N−l}(E; exp(a/N)) = Σ_{k=0}^{N−l−1} Π_{j=1}^{k} g'_N(j; l)`.
///
/// Partial products are built incrementally, one factor per step.
pub fn jones_numeric(n: u32, a: &ComplexParam, shift: Shift) -> Result<JonesNumeric> {
    let l = shift.get();
    if n < l + 1 {
        return Err(Error::Domain(format!("need N >= {} for shift {l}, got N={n}", l + 1)));
    }
    let p = a.precision();
    let w = a.working_precision();
    let lead = lead_term(a.value(), n, shift, w);
    let terms = (n - l) as usize;
    let mut g_values = Vec::with_capacity(terms.saturating_sub(1));
    let mut f_values = Vec::with_capacity(terms);
    let mut underflow = Vec::new();
    let mut f = Complex::one(w);
    let mut sum = Complex::one(w);
    f_values.push(f.clone());
    let floor = 8 - p as i64;
    for k in 1..terms {
        let g = factor_at(&lead, a.value(), k as u32, n, w);
        f = f.mul(&g, w);
        if mp::below_pow2(&f.abs(w), floor) {
            underflow.push(k);
        }
        sum = sum.add(&f, w);
        g_values.push(g);
        f_values.push(f.clone());
    }
    Ok(JonesNumeric {
        value: sum.round_to(p),
        trace: SummandTrace {
            n,
            a: a.clone(),
            shift,
            working_precision: w,
            g_values,
            f_values,
            underflow,
        },
    })
}

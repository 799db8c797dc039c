use rayon::prelude::*;

use super::{fit, region_check, validate_schedule};
use crate::error::{Error, Result};
use crate::jones::{alexander_inverse, jones_numeric, JonesNumeric, Shift, SummandTrace};
use crate::laurent::ComplexParam;
use crate::mp::{self, Complex, Real};

#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub a: ComplexParam,
    pub schedule: Vec<u32>,
    pub values: Vec<Complex>,
    /// `1 / (3 − 2cosh a)`
    pub target: Complex,
    /// `|values[i] − target|` at the parameter's precision.
    pub errors: Vec<Real>,
    pub relative_errors: Vec<f64>,
    /// Least-squares slope of `log error` against `log N`; `None` when fewer
    /// than two errors are nonzero.
    pub fitted_order: Option<f64>,
    /// `|2cosh a − 2|`
    pub delta: f64,
    /// `δ^N / (1 − δ)`
    pub tail_bound: Vec<f64>,
    /// Largest `|Σ_{k≥M} f(k)| / (δ^M / (1 − δ))` over `M`, per `N`.
    pub tail_ratio: Vec<f64>,
    /// Set when `a` lies outside the region and the study ran anyway.
    pub exploratory: bool,
}

/// `max_M |Σ_{k=M}^{end} f(k)| · (1 − δ) / δ^M` over the partial products of a trace.
///
/// Values at most 1 (up to rounding) confirm the geometric tail estimate.
pub fn tail_ratio(trace: &SummandTrace, delta: &Real) -> f64 {
    let w = trace.working_precision;
    let f = &trace.f_values;
    let mut suffix = vec![Complex::zero(w); f.len() + 1];
    for k in (0..f.len()).rev() {
        suffix[k] = suffix[k + 1].add(&f[k], w);
    }
    let one = mp::real(1.0, w);
    let room = one.sub(delta, w, mp::RM);
    let mut pow = one.clone();
    let mut worst = 0.0f64;
    for s in suffix.iter().take(f.len()) {
        if pow.is_zero() {
            if !s.is_zero() {
                return f64::INFINITY;
            }
        } else {
            let bound = pow.div(&room, w, mp::RM);
            worst = worst.max(mp::to_f64(&s.abs(w).div(&bound, w, mp::RM)));
        }
        pow = pow.mul(delta, w, mp::RM);
    }
    worst
}

/// Evaluates `J_N(E; exp(a/N))` along `schedule` and compares with
/// `1 / (3 − 2cosh a)`.
///
/// Refuses `a` outside the region unless `allow_outside` is set, in which
/// case the report is marked exploratory.
pub fn limit_study(a: &ComplexParam, schedule: &[u32], allow_outside: bool) -> Result<ConvergenceReport> {
    validate_schedule(schedule, 1)?;
    let verdict = region_check(a);
    if !verdict.inside && !allow_outside {
        return Err(Error::OutsideRegion(format!("a = {a}")));
    }
    let p = a.precision();
    let target = alexander_inverse(a)?;
    let runs: Vec<JonesNumeric> = schedule
        .par_iter()
        .map(|&n| jones_numeric(n, a, Shift::Zero))
        .collect::<Result<_>>()?;
    let target_abs = mp::to_f64(&target.abs(p));
    let mut values = Vec::with_capacity(runs.len());
    let mut errors = Vec::with_capacity(runs.len());
    let mut relative_errors = Vec::with_capacity(runs.len());
    for r in &runs {
        let e = mp::round_to(&r.value.sub(&target, p + mp::GUARD_BITS).abs(p + mp::GUARD_BITS), p);
        relative_errors.push(mp::to_f64(&e) / target_abs);
        errors.push(e);
        values.push(r.value.clone());
    }
    let delta = mp::to_f64(&verdict.delta);
    let tail_bound = schedule
        .iter()
        .map(|&n| {
            if delta < 1.0 {
                delta.powi(n as i32) / (1.0 - delta)
            } else {
                f64::INFINITY
            }
        })
        .collect();
    let tail_ratio = runs.par_iter().map(|r| tail_ratio(&r.trace, &verdict.delta)).collect();
    let abs_errors: Vec<f64> = errors.iter().map(mp::to_f64).collect();
    Ok(ConvergenceReport {
        a: a.clone(),
        schedule: schedule.to_vec(),
        values,
        target,
        fitted_order: fit::log_log_slope(schedule, &abs_errors),
        errors,
        relative_errors,
        delta,
        tail_bound,
        tail_ratio,
        exploratory: !verdict.inside,
    })
}

impl ConvergenceReport {
    /// True when every error is strictly smaller than the one before.
    pub fn strictly_decreasing(&self) -> bool {
        self.errors.windows(2).all(|w| mp::cmp(&w[1], &w[0]).is_lt())
    }
}

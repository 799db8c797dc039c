use rayon::prelude::*;

use super::{region_check, validate_schedule};
use crate::error::{Error, Result};
use crate::jones::{jones_numeric, Shift};
use crate::laurent::ComplexParam;
use crate::lemmas::check_taylor_ratio_at;
use crate::mp;

/// `(s_max, x_steps, u_steps)` of the scan that fixes `ε′`.
pub const TAYLOR_SCAN: (f64, usize, usize) = (0.25, 32, 32);

#[derive(Clone, Debug)]
pub struct ShiftedGapReport {
    pub a: ComplexParam,
    pub shift: Shift,
    pub schedule: Vec<u32>,
    /// `|J_N − J_{N−l}|` at `exp(a/N)`.
    pub gaps: Vec<f64>,
    /// Radius certified by the ratio scan; zero if none.
    pub eps_prime: f64,
    /// `|a sinh a / (cosh a − 1)|`
    pub c: f64,
    pub delta: f64,
    /// Three-term bound per `N`; `None` where it does not apply
    /// (`⌊ε′N⌋ = 0`, `l/N > ε′` or `c·l/N >= 1`).
    pub bounds: Vec<Option<f64>>,
    pub exploratory: bool,
}

/// With `M = ⌊ε′N⌋` and `q = δ(1 − c·l/N)`:
/// `(1 − δ^M)/(1 − δ) − (1 − q^M)/(1 − q) + 2δ^M(1 − δ^{N−M})/(1 − δ)`.
pub fn three_term_bound(n: u32, l: u32, delta: f64, c: f64, eps_prime: f64) -> Option<f64> {
    let nf = n as f64;
    let m = (eps_prime * nf).floor() as i32;
    let shrink = c * l as f64 / nf;
    if m == 0 || (l as f64) / nf > eps_prime || shrink >= 1.0 || delta >= 1.0 {
        return None;
    }
    let q = delta * (1.0 - shrink);
    let dm = delta.powi(m);
    let head = (1.0 - dm) / (1.0 - delta) - (1.0 - q.powi(m)) / (1.0 - q);
    let tail = 2.0 * dm * (1.0 - delta.powi(n as i32 - m)) / (1.0 - delta);
    Some(head + tail)
}

/// `|J_N − J_{N−l}|` at `exp(a/N)` along `schedule`, with the three-term bound.
pub fn shifted_gap_study(
    a: &ComplexParam,
    shift: Shift,
    schedule: &[u32],
    allow_outside: bool,
) -> Result<ShiftedGapReport> {
    let l = shift.get();
    if l == 0 {
        return Err(Error::Domain("shifted gap needs l = 1 or 2".into()));
    }
    validate_schedule(schedule, l + 1)?;
    let verdict = region_check(a);
    if !verdict.inside && !allow_outside {
        return Err(Error::OutsideRegion(format!("a = {a}")));
    }
    let p = a.precision();
    let w = a.working_precision();
    let gaps = schedule
        .par_iter()
        .map(|&n| {
            let full = jones_numeric(n, a, Shift::Zero)?;
            let short = jones_numeric(n, a, shift)?;
            Ok(mp::to_f64(&full.value.sub(&short.value, w).abs(p)))
        })
        .collect::<Result<Vec<f64>>>()?;
    let delta = mp::to_f64(&verdict.delta);
    let (eps_prime, c) = if a.is_zero() {
        (0.0, 0.0)
    } else {
        let (s_max, xs, us) = TAYLOR_SCAN;
        let scan = check_taylor_ratio_at(a, s_max, xs, us);
        (scan.eps, scan.c)
    };
    let bounds = schedule
        .iter()
        .map(|&n| three_term_bound(n, l, delta, c, eps_prime))
        .collect();
    Ok(ShiftedGapReport {
        a: a.clone(),
        shift,
        schedule: schedule.to_vec(),
        gaps,
        eps_prime,
        c,
        delta,
        bounds,
        exploratory: !verdict.inside,
    })
}

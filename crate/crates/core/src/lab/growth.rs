use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{fit, validate_schedule};
use crate::error::Result;
use crate::jones::kashaev_value;
use crate::mp::{self, Real};

/// Describes the extrapolation model; kept alongside the numbers.
pub const FIT_FORM: &str = "r_N = L + alpha*log(N)/N + beta/N, least squares over N >= 10";

#[derive(Clone, Debug, PartialEq)]
pub struct Extrapolation {
    pub limit: f64,
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Clone, Debug)]
pub struct GrowthReport {
    pub schedule: Vec<u32>,
    pub kashaev: Vec<Real>,
    /// `(2π/N) log K_N`
    pub rates: Vec<f64>,
    /// `2 v₃`, the volume of the complement.
    pub reference: f64,
    pub extrapolation: Option<Extrapolation>,
    pub fit_form: &'static str,
    /// First consecutive pair `(N, N')` with `r_{N'} <= r_N`, if any.
    pub first_non_increase: Option<(u32, u32)>,
}

impl GrowthReport {
    pub fn increasing(&self) -> bool {
        self.first_non_increase.is_none()
    }

    pub fn relative_gap(&self, i: usize) -> f64 {
        (self.rates[i] - self.reference).abs() / self.reference
    }
}

/// Bernoulli numbers `B_0..=B_m` by the standard recurrence.
fn bernoulli(m: usize) -> Vec<BigRational> {
    let mut b = vec![BigRational::one()];
    for n in 1..=m {
        // B_n = −1/(n+1) Σ_{k<n} C(n+1, k) B_k
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bk;
            binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
    }
    b
}

/// `Λ(θ) = −∫_0^θ log|2 sin u| du` for `0 < θ < π`, from the series
/// `Λ(θ) = θ − θ log 2θ + Σ_{n≥1} |B_{2n}| (2θ)^{2n+1} / (4n (2n+1)!)`.
pub fn lobachevsky(theta: f64) -> f64 {
    let two_theta = 2.0 * theta;
    let b = bernoulli(60);
    let mut sum = theta - theta * two_theta.ln();
    let mut fact = 1.0f64; // (2n+1)!
    let mut power = two_theta; // (2θ)^{2n+1}
    for n in 1..=30usize {
        fact *= (2 * n) as f64 * (2 * n + 1) as f64;
        power *= two_theta * two_theta;
        let bn = b[2 * n].to_f64().unwrap_or(0.0).abs();
        let term = bn * power / (4.0 * n as f64 * fact);
        sum += term;
        if term < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// `2 v₃` with `v₃ = 3Λ(π/3)`.
pub fn volume_reference() -> f64 {
    6.0 * lobachevsky(std::f64::consts::FRAC_PI_3)
}

/// `r_N = (2π/N) log K_N` along `schedule` at `p` bits.
pub fn growth_rate_study(schedule: &[u32], p: usize) -> Result<GrowthReport> {
    validate_schedule(schedule, 2)?;
    let kashaev: Vec<Real> = schedule
        .par_iter()
        .map(|&n| kashaev_value(n, p))
        .collect::<Result<_>>()?;
    let w = p + mp::GUARD_BITS;
    let two_pi = mp::pi(w).mul(&mp::real(2.0, w), w, mp::RM);
    let rates: Vec<f64> = schedule
        .iter()
        .zip(&kashaev)
        .map(|(&n, k)| {
            let r = two_pi
                .mul(&mp::ln(k, w), w, mp::RM)
                .div(&mp::int(n as i64, w), w, mp::RM);
            mp::to_f64(&r)
        })
        .collect();
    let first_non_increase = schedule
        .windows(2)
        .zip(rates.windows(2))
        .find(|(_, r)| r[1] <= r[0])
        .map(|(n, _)| (n[0], n[1]));
    let (rows, ys): (Vec<Vec<f64>>, Vec<f64>) = schedule
        .iter()
        .zip(&rates)
        .filter(|(&n, _)| n >= 10)
        .map(|(&n, &r)| {
            let nf = n as f64;
            (vec![1.0, nf.ln() / nf, 1.0 / nf], r)
        })
        .unzip();
    let extrapolation = if rows.len() >= 3 {
        fit::least_squares(&rows, &ys).map(|c| Extrapolation {
            limit: c[0],
            alpha: c[1],
            beta: c[2],
        })
    } else {
        None
    };
    Ok(GrowthReport {
        schedule: schedule.to_vec(),
        kashaev,
        rates,
        reference: volume_reference(),
        extrapolation,
        fit_form: FIT_FORM,
        first_non_increase,
    })
}

use rayon::prelude::*;

use super::quad;
use super::{Accumulator, CheckKind, Grid2D, LemmaId, LemmaReport, Witness, EXP_INTEGRAL_TOL, STRICT_MARGIN};
use crate::mp::{self, Complex, Real, GUARD_BITS};

fn point(x: f64, y: f64, w: usize) -> Complex {
    Complex::from_f64(x, y, w)
}

/// `cosh(k·h·a)` for `k = 1..=count`, by stepping `e^{±h a}`.
fn cosh_ladder(a: &Complex, h: f64, count: usize, w: usize) -> Vec<Complex> {
    let step = a.scale(&mp::real(h, w), w).exp(w);
    let back = step.recip(w);
    let half = mp::real(0.5, w);
    let (mut up, mut down) = (Complex::one(w), Complex::one(w));
    (0..count)
        .map(|_| {
            up = up.mul(&step, w);
            down = down.mul(&back, w);
            up.add(&down, w).scale(&half, w)
        })
        .collect()
}

/// `|A| − |B|` from `|A|²` and `|B|²`, with the difference of squares taken
/// in multiprecision so tiny slacks are not lost to cancellation.
fn modulus_gap(a2: &Real, b2: &Real, w: usize) -> f64 {
    let diff = mp::to_f64(&a2.sub(b2, w, mp::RM));
    let denom = mp::to_f64(a2).sqrt() + mp::to_f64(b2).sqrt();
    if denom == 0.0 {
        0.0
    } else {
        diff / denom
    }
}

/// `|cosh a − 1| = cosh x − cos y` for `a = x + iy`, evaluated at exactly `p` bits.
pub fn check_region_identity(grid: &Grid2D, p: usize) -> LemmaReport {
    let tol = 2f64.powi(24 - p as i32);
    let mut acc = Accumulator::new(LemmaId::RegionIdentity, CheckKind::Identity, p, tol);
    let rows: Vec<(f64, Witness)> = grid
        .points()
        .par_iter()
        .map(|&(x, y)| {
            let a = point(x, y, p);
            let lhs = a.cosh(p).sub(&Complex::one(p), p).abs(p);
            let rhs = mp::cosh(&mp::real(x, p), p).sub(&mp::cos(&mp::real(y, p), p), p, mp::RM);
            let disc = mp::to_f64(&lhs.sub(&rhs, p, mp::RM).abs());
            (tol - disc, Witness::at(x, y))
        })
        .collect();
    for (m, wit) in rows {
        acc.record(m, wit);
    }
    acc.finish()
}

/// For each `a`, `|cosh a − cosh(ua)|` strictly decreases along
/// `u = 1/U, …, (U−1)/U`, and `|cosh(ua) − 1| < |cosh a − 1|` at every such `u`.
pub fn check_u_monotonicity(grid: &Grid2D, u_steps: usize, p: usize) -> LemmaReport {
    let w = p + GUARD_BITS;
    let mut acc = Accumulator::new(LemmaId::UMonotonicity, CheckKind::Strict, p, STRICT_MARGIN);
    let per_point: Vec<Vec<(f64, Witness)>> = grid
        .points()
        .par_iter()
        .map(|&(x, y)| {
            let a = point(x, y, w);
            let ca = a.cosh(w);
            let one = Complex::one(w);
            let base = ca.sub(&one, w).norm_sqr(w);
            let ladder = cosh_ladder(&a, 1.0 / u_steps as f64, u_steps - 1, w);
            let gaps: Vec<Real> = ladder.iter().map(|c| ca.sub(c, w).norm_sqr(w)).collect();
            let mut out = Vec::with_capacity(2 * ladder.len());
            for (i, c) in ladder.iter().enumerate() {
                let u = (i + 1) as f64 / u_steps as f64;
                let wit = Witness {
                    u: Some(u),
                    ..Witness::at(x, y)
                };
                out.push((modulus_gap(&base, &c.sub(&one, w).norm_sqr(w), w), wit));
                if i + 1 < gaps.len() {
                    out.push((modulus_gap(&gaps[i], &gaps[i + 1], w), wit));
                }
            }
            out
        })
        .collect();
    for (m, wit) in per_point.into_iter().flatten() {
        acc.record(m, wit);
    }
    acc.finish()
}

/// Outcome of scanning `|(cosh a − cosh ua)/(cosh a − 1)| > 1 − u` over a `u` grid.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioScan {
    /// Inequality holds at every grid point below `eps`; zero when even the
    /// first point fails.
    pub eps: f64,
    pub min_margin: f64,
    pub worst_u: f64,
    pub first_failure: Option<(f64, f64)>,
}

fn ratio_scan(a: &Complex, u_max: f64, points: usize, w: usize) -> RatioScan {
    let ca = a.cosh(w);
    let den2 = ca.sub(&Complex::one(w), w).norm_sqr(w);
    let den = mp::to_f64(&den2).sqrt();
    let h = u_max / (points + 1) as f64;
    let ladder = cosh_ladder(a, h, points, w);
    let mut min_margin = f64::INFINITY;
    let mut worst_u = h;
    for (k, c) in ladder.iter().enumerate() {
        let u = h * (k + 1) as f64;
        let num2 = ca.sub(c, w).norm_sqr(w);
        let shrink = mp::real(1.0 - u, w);
        let rhs2 = den2.mul(&shrink.mul(&shrink, w, mp::RM), w, mp::RM);
        let margin = modulus_gap(&num2, &rhs2, w) / den;
        if margin <= STRICT_MARGIN {
            return RatioScan {
                eps: if k == 0 { 0.0 } else { u },
                min_margin: if k == 0 { margin } else { min_margin },
                worst_u: if k == 0 { u } else { worst_u },
                first_failure: Some((u, margin)),
            };
        }
        if margin < min_margin {
            min_margin = margin;
            worst_u = u;
        }
    }
    RatioScan {
        eps: u_max,
        min_margin,
        worst_u,
        first_failure: None,
    }
}

fn record_ratio(acc: &mut Accumulator, scan: &RatioScan, points: usize, x: f64, y: f64) {
    let wit = Witness {
        u: Some(scan.worst_u),
        ..Witness::at(x, y)
    };
    if scan.eps > 0.0 {
        acc.record(scan.min_margin, wit);
        acc.add_samples(points - 1);
    } else {
        acc.add_samples(points - 1);
        acc.record(scan.min_margin, wit);
    }
    acc.observe_eps(scan.eps);
}

/// Certifies the radius `ε` below which `|(cosh a − cosh ua)/(cosh a − 1)| > 1 − u`
/// holds on a `points`-sample grid in `(0, u_max)`.
pub fn check_ratio_lower_bound(a: &crate::laurent::ComplexParam, u_max: f64, points: usize) -> LemmaReport {
    let p = a.precision();
    let w = a.working_precision();
    let mut acc = Accumulator::new(LemmaId::RatioLowerBound, CheckKind::Strict, p, STRICT_MARGIN);
    let (x, y) = a.to_f64();
    if a.is_zero() {
        acc.fail(0.0, Witness::at(x, y));
        return acc.finish();
    }
    let scan = ratio_scan(a.value(), u_max, points, w);
    record_ratio(&mut acc, &scan, points, x, y);
    acc.finish()
}

/// [`check_ratio_lower_bound`] over every point of `grid`; the reported
/// `certified_eps` is the smallest radius seen.
pub fn check_ratio_lower_bound_grid(grid: &Grid2D, u_max: f64, points: usize, p: usize) -> LemmaReport {
    let w = p + GUARD_BITS;
    let mut acc = Accumulator::new(LemmaId::RatioLowerBound, CheckKind::Strict, p, STRICT_MARGIN);
    let pts = grid.points();
    let scans: Vec<RatioScan> = pts
        .par_iter()
        .map(|&(x, y)| ratio_scan(&point(x, y, w), u_max, points, w))
        .collect();
    for (&(x, y), scan) in pts.iter().zip(&scans) {
        record_ratio(&mut acc, scan, points, x, y);
    }
    acc.finish()
}

/// `(e^{−a}/a) Σ_{k=0}^{m} m!/(a^k (m−k)!)`.
pub fn exp_integral_closed_form(m: u32, a: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..=m {
        term *= (m - k + 1) as f64 / a;
        sum += term;
    }
    (-a).exp() / a * sum
}

/// `∫_1^T e^{−at} t^m dt` by adaptive quadrature, with `T` chosen so the
/// dropped tail, bounded by `e^{−aT} T^m / (a − m/T)`, is below `2^{−p}` of
/// the integral.
pub fn exp_integral_quadrature(m: u32, a: f64, p: usize) -> f64 {
    let scale = exp_integral_closed_form(m, a);
    let target = scale * 2f64.powi(-(p.min(1000) as i32));
    let mf = m as f64;
    let mut cut = (2.0 * mf / a + 1.0).max(2.0);
    let tail = |t: f64| (-a * t + mf * t.ln()).exp() / (a - mf / t);
    while tail(cut) > target {
        cut *= 1.25;
    }
    let panels = ((a * (cut - 1.0)).ceil() as usize).clamp(1, 100_000);
    quad::integrate(|t| (-a * t + mf * t.ln()).exp(), 1.0, cut, panels, scale * 1e-15)
}

/// Closed form against quadrature for `m = 1..=m_max` and each `a` in `a_grid`.
pub fn check_exp_integral(m_max: u32, a_grid: &[f64], p: usize) -> LemmaReport {
    let mut acc = Accumulator::new(LemmaId::ExpIntegral, CheckKind::Identity, p, EXP_INTEGRAL_TOL);
    for &a in a_grid {
        for m in 1..=m_max {
            let exact = exp_integral_closed_form(m, a);
            let quad = exp_integral_quadrature(m, a, p);
            let rel = ((quad - exact) / exact).abs();
            let wit = Witness {
                m: Some(m),
                ..Witness::at(a, 0.0)
            };
            acc.record(EXP_INTEGRAL_TOL - rel, wit);
        }
    }
    acc.finish()
}

/// Outcome of scanning `1 > |R| > 1 − c x` with
/// `R = (cosh a(1−x) − cosh ua)/(cosh a − cosh ua)`, `c = |a sinh a/(cosh a − 1)|`.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorScan {
    /// Largest scanned radius `s` such that both bounds hold on every grid
    /// point with `x <= s` and `u <= s`; zero if none.
    pub eps: f64,
    pub c: f64,
    pub min_margin: f64,
    pub worst: (f64, f64),
    /// Smallest-`x` failing point beyond `eps`, if the scan stopped early.
    pub first_failure: Option<(f64, f64, f64)>,
}

fn taylor_scan(a: &Complex, s_max: f64, x_steps: usize, u_steps: usize, w: usize) -> TaylorScan {
    let one = Complex::one(w);
    let ca = a.cosh(w);
    let cm1 = ca.sub(&one, w);
    let c_mp = a.mul(&a.sinh(w), w).div(&cm1, w).abs(w);
    let c = mp::to_f64(&c_mp);
    // cosh(a(1−x)) = (e^a e^{−ax} + e^{−a} e^{ax}) / 2
    let hx = s_max / x_steps as f64;
    let ea = a.exp(w);
    let ea_inv = ea.recip(w);
    let sx = a.scale(&mp::real(hx, w), w).exp(w);
    let sx_inv = sx.recip(w);
    let half = mp::real(0.5, w);
    let (mut up, mut down) = (ea.clone(), ea_inv.clone());
    let outer: Vec<Complex> = (0..x_steps)
        .map(|_| {
            up = up.mul(&sx_inv, w);
            down = down.mul(&sx, w);
            up.add(&down, w).scale(&half, w)
        })
        .collect();
    let hu = s_max / u_steps as f64;
    let inner = cosh_ladder(a, hu, u_steps, w);
    let dens: Vec<Real> = inner.iter().map(|cu| ca.sub(cu, w).norm_sqr(w)).collect();

    let margin = |k: usize, l: usize| -> f64 {
        let x = hx * (k + 1) as f64;
        let num2 = outer[k].sub(&inner[l], w).norm_sqr(w);
        let den2 = &dens[l];
        let den = mp::to_f64(den2).sqrt();
        let upper = modulus_gap(den2, &num2, w) / den;
        let r2 = num2.div(den2, w, mp::RM);
        let bound = mp::real(1.0, w).sub(&c_mp.mul(&mp::real(x, w), w, mp::RM), w, mp::RM);
        let lower = if bound.is_negative() || bound.is_zero() {
            mp::to_f64(&r2).sqrt() - mp::to_f64(&bound)
        } else {
            modulus_gap(&r2, &bound.mul(&bound, w, mp::RM), w)
        };
        upper.min(lower)
    };

    let grid: Vec<Vec<f64>> = (0..x_steps)
        .map(|k| (0..u_steps).map(|l| margin(k, l)).collect())
        .collect();
    let mut eps = 0.0;
    let mut min_margin = f64::INFINITY;
    let mut worst = (hx, hu);
    for i in 0..x_steps {
        let s = hx * (i + 1) as f64;
        let mut region_min = f64::INFINITY;
        let mut region_worst = worst;
        let mut failure = None;
        'scan: for (k, row) in grid.iter().enumerate().take(i + 1) {
            for (l, &m) in row.iter().enumerate() {
                let u = hu * (l + 1) as f64;
                if u > s * (1.0 + 1e-12) {
                    break;
                }
                if m < region_min {
                    region_min = m;
                    region_worst = (hx * (k + 1) as f64, u);
                }
                if m <= STRICT_MARGIN {
                    failure = Some((hx * (k + 1) as f64, u, m));
                    break 'scan;
                }
            }
        }
        if let Some(f) = failure {
            return TaylorScan {
                eps,
                c,
                min_margin: if i == 0 { f.2 } else { min_margin },
                worst: if i == 0 { (f.0, f.1) } else { worst },
                first_failure: Some(f),
            };
        }
        eps = s;
        min_margin = region_min;
        worst = region_worst;
    }
    TaylorScan {
        eps,
        c,
        min_margin,
        worst,
        first_failure: None,
    }
}

/// Scans one parameter; see [`TaylorScan`].
pub fn check_taylor_ratio_at(
    a: &crate::laurent::ComplexParam,
    s_max: f64,
    x_steps: usize,
    u_steps: usize,
) -> TaylorScan {
    taylor_scan(a.value(), s_max, x_steps, u_steps, a.working_precision())
}

/// [`check_taylor_ratio_at`] over every point of `grid`.
pub fn check_taylor_ratio(grid: &Grid2D, s_max: f64, x_steps: usize, u_steps: usize, p: usize) -> LemmaReport {
    let w = p + GUARD_BITS;
    let mut acc = Accumulator::new(LemmaId::TaylorRatio, CheckKind::Strict, p, STRICT_MARGIN);
    let pts = grid.points();
    let scans: Vec<TaylorScan> = pts
        .par_iter()
        .map(|&(x, y)| taylor_scan(&point(x, y, w), s_max, x_steps, u_steps, w))
        .collect();
    for (&(x, y), scan) in pts.iter().zip(&scans) {
        let wit = Witness {
            x: Some(scan.worst.0),
            u: Some(scan.worst.1),
            ..Witness::at(x, y)
        };
        acc.add_samples(x_steps * u_steps - 1);
        acc.record(scan.min_margin, wit);
        acc.observe_eps(scan.eps);
    }
    acc.finish()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Positivity {
    /// `Re(a sinh a / (cosh a − 1)) > 0`
    ReA,
    /// `Re(a² cosh a / (cosh a − 1)) > 0`
    ReA2,
}

pub fn positivity_value(a: &Complex, which: Positivity, w: usize) -> Real {
    let cm1 = a.cosh(w).sub(&Complex::one(w), w);
    let num = match which {
        Positivity::ReA => a.mul(&a.sinh(w), w),
        Positivity::ReA2 => a.mul(a, w).mul(&a.cosh(w), w),
    };
    num.div(&cm1, w).re
}

pub fn check_positivity(grid: &Grid2D, which: Positivity, p: usize) -> LemmaReport {
    let w = p + GUARD_BITS;
    let id = match which {
        Positivity::ReA => LemmaId::PositivityReA,
        Positivity::ReA2 => LemmaId::PositivityReA2,
    };
    let mut acc = Accumulator::new(id, CheckKind::Strict, p, STRICT_MARGIN);
    let rows: Vec<(f64, Witness)> = grid
        .points()
        .par_iter()
        .map(|&(x, y)| {
            (
                mp::to_f64(&positivity_value(&point(x, y, w), which, w)),
                Witness::at(x, y),
            )
        })
        .collect();
    for (m, wit) in rows {
        acc.record(m, wit);
    }
    acc.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::ComplexParam;
    use crate::lemmas::Exclusion;

    fn single(x: f64, y: f64) -> Grid2D {
        Grid2D::new((x, x), (y, y), 1)
    }

    #[test]
    fn identity_at_named_points() {
        for (x, y) in [(0.0, 0.0), (0.0, std::f64::consts::FRAC_PI_4), (1.0, 0.0)] {
            let r = check_region_identity(&single(x, y), 128);
            assert!(r.passed(), "{x} {y}");
            assert_eq!(r.samples, 1);
        }
        // at a = iπ/4 both sides equal 1 − √2/2
        let w = 128;
        let lhs = point(0.0, std::f64::consts::FRAC_PI_4, w)
            .cosh(w)
            .sub(&Complex::one(w), w)
            .abs(w);
        assert!((mp::to_f64(&lhs) - (1.0 - 0.5f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn identity_discrepancy_shrinks_with_precision() {
        let g = Grid2D::identity_default().with_steps(16);
        let lo = check_region_identity(&g, 64);
        let hi = check_region_identity(&g, 128);
        let d_lo = lo.tolerance - lo.min_margin;
        let d_hi = hi.tolerance - hi.min_margin;
        assert!(d_lo > 0.0);
        assert!(d_hi < d_lo * 2f64.powi(-48), "{d_lo} {d_hi}");
    }

    #[test]
    fn monotone_in_u_examples() {
        for (x, y) in [(0.5, 0.0), (0.0, 0.3)] {
            let r = check_u_monotonicity(&single(x, y), 4, 128);
            assert!(r.passed(), "{x} {y}: {:?}", r.violations);
            assert!(r.min_margin > 1e-3);
        }
        // a = 0 is degenerate: every value coincides
        let r = check_u_monotonicity(&single(0.0, 0.0), 4, 128);
        assert!(!r.passed());
        let r = check_u_monotonicity(&single(0.0, 0.0).excluding(Exclusion::Origin), 4, 128);
        assert_eq!(r.samples, 0);
    }

    #[test]
    fn ratio_bound_examples() {
        let a = ComplexParam::from_f64(0.5, 0.0, 128).unwrap();
        let r = check_ratio_lower_bound(&a, 1.0, 1024);
        assert!(r.passed());
        assert!(r.certified_eps.unwrap() > 0.01);
        let a = ComplexParam::from_f64(0.0, 0.2, 128).unwrap();
        let r = check_ratio_lower_bound(&a, 1.0, 1024);
        assert!(r.passed() && r.certified_eps.unwrap() > 0.0);
        assert!(!check_ratio_lower_bound(&ComplexParam::zero(128).unwrap(), 1.0, 16).passed());
    }

    #[test]
    fn ratio_tends_to_one_as_u_vanishes() {
        let w = 192;
        let a = point(0.5, 0.2, w);
        let scan = ratio_scan(&a, 1e-6, 4, w);
        // margin ≈ u for tiny u
        assert!((scan.min_margin - 2e-7).abs() < 1e-9, "{}", scan.min_margin);
    }

    #[test]
    fn ratio_eps_stable_under_refinement() {
        let a = ComplexParam::from_f64(0.9, 0.3, 128).unwrap();
        let coarse = check_ratio_lower_bound(&a, 1.0, 512).certified_eps.unwrap();
        let fine = check_ratio_lower_bound(&a, 1.0, 1024).certified_eps.unwrap();
        assert!((coarse - fine).abs() <= 1.0 / 513.0 + 1e-12);
    }

    #[test]
    fn exp_integral_examples() {
        let e = std::f64::consts::E;
        assert!((exp_integral_closed_form(1, 1.0) - 2.0 / e).abs() < 1e-15);
        assert!((exp_integral_closed_form(2, 1.0) - 5.0 / e).abs() < 1e-15);
        assert!((exp_integral_closed_form(1, 2.0) - 3.0 / (4.0 * e * e)).abs() < 1e-16);
        for (m, a) in [(1, 1.0), (2, 1.0), (1, 2.0)] {
            let q = exp_integral_quadrature(m, a, 128);
            assert!((q / exp_integral_closed_form(m, a) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn taylor_ratio_example() {
        let a = ComplexParam::from_f64(0.5, 0.0, 128).unwrap();
        let scan = check_taylor_ratio_at(&a, 0.01, 1, 1);
        assert!(scan.eps == 0.01 && scan.min_margin > 0.0, "{scan:?}");
        let expected_c = 0.5 * 0.5f64.sinh() / (0.5f64.cosh() - 1.0);
        assert!((scan.c - expected_c).abs() < 1e-13);
    }

    #[test]
    fn lower_bound_fails_for_small_x_at_fixed_u() {
        // x = 0.001, u = 0.1 sits outside every certified square
        let w = 192;
        let a = point(0.5, 0.0, w);
        let scan = taylor_scan(&a, 0.1, 100, 1, w);
        assert!(scan.first_failure.is_some());
        assert!(scan.eps < 0.1);
    }

    #[test]
    fn taylor_eps_shrinks_under_refinement() {
        // the lower bound fails near the smallest sampled x once u is large
        // enough, so finer grids certify smaller squares
        let w = 192;
        let a = point(0.5, 0.0, w);
        let coarse = taylor_scan(&a, 0.25, 32, 32, w);
        let fine = taylor_scan(&a, 0.25, 128, 128, w);
        assert!(coarse.eps > 0.0 && fine.eps > 0.0);
        assert!(coarse.eps - fine.eps > 0.25 / 32.0, "{} {}", coarse.eps, fine.eps);
        let (x, _, _) = fine.first_failure.unwrap();
        assert_eq!(x, 0.25 / 128.0);
    }

    #[test]
    fn positivity_examples() {
        let w = 192;
        let v = mp::to_f64(&positivity_value(&point(1.0, 0.0, w), Positivity::ReA, w));
        assert!((v - 1f64.sinh() / (1f64.cosh() - 1.0)).abs() < 1e-14);
        // x = 0: (1 − cos y)(y sin y)/(cos y − 1)^2
        let y: f64 = 0.5;
        let v = mp::to_f64(&positivity_value(&point(0.0, y, w), Positivity::ReA, w));
        let closed = (1.0 - y.cos()) * (y * y.sin()) / (y.cos() - 1.0).powi(2);
        assert!((v - closed).abs() < 1e-13);
        for which in [Positivity::ReA, Positivity::ReA2] {
            assert!(check_positivity(&single(0.4, 0.2), which, 128).passed());
        }
    }
}

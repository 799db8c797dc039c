//! Grid verification of the analytic inequalities used in the convergence
//! argument.
//!
//! Every check samples a deterministic grid, evaluates the inequality (or
//! identity) in multiprecision, and reports the smallest slack it saw together
//! with the sample that produced it. Strict inequalities count as holding only
//! when the slack exceeds [`STRICT_MARGIN`].

mod checks;
mod quad;

use serde::Serialize;

pub use checks::{
    check_exp_integral, check_positivity, check_ratio_lower_bound, check_ratio_lower_bound_grid, check_region_identity,
    check_taylor_ratio, check_taylor_ratio_at, check_u_monotonicity, exp_integral_closed_form, exp_integral_quadrature,
    Positivity, RatioScan, TaylorScan,
};

/// Slack a strict inequality must exceed to count as verified.
pub const STRICT_MARGIN: f64 = 1e-12;
/// Distance kept from the boundary of every open hypothesis domain.
pub const STANDOFF: f64 = 1e-3;
/// Relative tolerance for the exponential-integral closed form.
pub const EXP_INTEGRAL_TOL: f64 = 1e-10;
/// Default samples per grid axis.
pub const DEFAULT_STEPS: usize = 64;

/// Violations kept verbatim in a report; the count is always exact.
const MAX_LISTED: usize = 256;

/// `arccosh(3/2)`, where the oval meets the real axis.
pub fn oval_real_radius() -> f64 {
    1.5f64.acosh()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Exclusion {
    /// Drop `a = 0`.
    Origin,
    /// Keep only points with `|2cosh a − 2| <= 1 − standoff` and `|Im a| <= π/3 − standoff`.
    OutsideOval { standoff: f64 },
}

impl Exclusion {
    fn rejects(&self, x: f64, y: f64) -> bool {
        match *self {
            Exclusion::Origin => x == 0.0 && y == 0.0,
            Exclusion::OutsideOval { standoff } => {
                2.0 * (x.cosh() - y.cos()) > 1.0 - standoff || y.abs() > std::f64::consts::FRAC_PI_3 - standoff
            }
        }
    }
}

/// Rectangular sample grid in the `a = x + iy` plane, endpoints included.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Grid2D {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub x_steps: usize,
    pub y_steps: usize,
    pub exclusions: Vec<Exclusion>,
}

impl Grid2D {
    pub fn new(x_range: (f64, f64), y_range: (f64, f64), steps: usize) -> Self {
        Grid2D {
            x_range,
            y_range,
            x_steps: steps,
            y_steps: steps,
            exclusions: Vec::new(),
        }
    }

    pub fn excluding(mut self, e: Exclusion) -> Self {
        self.exclusions.push(e);
        self
    }

    pub fn with_steps(mut self, steps: usize) -> Self {
        self.x_steps = steps;
        self.y_steps = steps;
        self
    }

    /// The identity holds everywhere; sample a generous box.
    pub fn identity_default() -> Self {
        Grid2D::new((-2.0, 2.0), (-3.0, 3.0), DEFAULT_STEPS)
    }

    /// The open oval with the standard standoff, origin removed.
    pub fn oval_default() -> Self {
        let xr = oval_real_radius() - STANDOFF;
        let yr = std::f64::consts::FRAC_PI_3 - STANDOFF;
        Grid2D::new((-xr, xr), (-yr, yr), DEFAULT_STEPS)
            .excluding(Exclusion::Origin)
            .excluding(Exclusion::OutsideOval { standoff: STANDOFF })
    }

    /// `|Re a| < π`, `|Im a| < π/3`, origin removed.
    pub fn strip_default() -> Self {
        let xr = std::f64::consts::PI - STANDOFF;
        let yr = std::f64::consts::FRAC_PI_3 - STANDOFF;
        Grid2D::new((-xr, xr), (-yr, yr), DEFAULT_STEPS).excluding(Exclusion::Origin)
    }

    /// `|Im a| < π`, origin removed.
    pub fn wide_strip_default() -> Self {
        let yr = std::f64::consts::PI - STANDOFF;
        Grid2D::new((-3.0, 3.0), (-yr, yr), DEFAULT_STEPS).excluding(Exclusion::Origin)
    }

    fn axis(range: (f64, f64), steps: usize) -> impl Iterator<Item = f64> {
        let (lo, hi) = range;
        (0..steps).map(move |i| {
            if steps == 1 {
                lo
            } else {
                lo + (hi - lo) * i as f64 / (steps - 1) as f64
            }
        })
    }

    /// Surviving sample points, x-major.
    pub fn points(&self) -> Vec<(f64, f64)> {
        Grid2D::axis(self.x_range, self.x_steps)
            .flat_map(|x| Grid2D::axis(self.y_range, self.y_steps).map(move |y| (x, y)))
            .filter(|&(x, y)| !self.exclusions.iter().any(|e| e.rejects(x, y)))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaId {
    RegionIdentity,
    UMonotonicity,
    RatioLowerBound,
    ExpIntegral,
    TaylorRatio,
    PositivityReA,
    PositivityReA2,
}

impl LemmaId {
    pub const ALL: [LemmaId; 7] = [
        LemmaId::RegionIdentity,
        LemmaId::UMonotonicity,
        LemmaId::RatioLowerBound,
        LemmaId::ExpIntegral,
        LemmaId::TaylorRatio,
        LemmaId::PositivityReA,
        LemmaId::PositivityReA2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::RegionIdentity => "region_identity",
            LemmaId::UMonotonicity => "u_monotonicity",
            LemmaId::RatioLowerBound => "ratio_lower_bound",
            LemmaId::ExpIntegral => "exp_integral",
            LemmaId::TaylorRatio => "taylor_ratio",
            LemmaId::PositivityReA => "positivity_re_a",
            LemmaId::PositivityReA2 => "positivity_re_a2",
        }
    }

    pub fn parse(s: &str) -> Option<LemmaId> {
        LemmaId::ALL.into_iter().find(|l| l.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Passes when `|LHS − RHS| <= tolerance`; margin is `tolerance − |LHS − RHS|`.
    Identity,
    /// Passes when every slack exceeds [`STRICT_MARGIN`].
    Strict,
}

/// Where a sample sits. Unused coordinates stay `None`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Witness {
    pub a_re: f64,
    pub a_im: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
}

impl Witness {
    pub fn at(a_re: f64, a_im: f64) -> Self {
        Witness {
            a_re,
            a_im,
            ..Witness::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub witness: Witness,
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaReport {
    pub lemma_id: LemmaId,
    pub kind: CheckKind,
    pub precision: usize,
    pub samples: usize,
    pub min_margin: f64,
    pub worst_witness: Option<Witness>,
    pub tolerance: f64,
    /// Smallest scan radius certified over all sampled parameters, for the
    /// two checks that certify one.
    pub certified_eps: Option<f64>,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

/// Folds per-sample margins into a report.
pub(crate) struct Accumulator {
    id: LemmaId,
    kind: CheckKind,
    precision: usize,
    tolerance: f64,
    samples: usize,
    min_margin: f64,
    worst: Option<Witness>,
    violation_count: usize,
    violations: Vec<Violation>,
    certified_eps: Option<f64>,
}

impl Accumulator {
    pub(crate) fn new(id: LemmaId, kind: CheckKind, precision: usize, tolerance: f64) -> Self {
        Accumulator {
            id,
            kind,
            precision,
            tolerance,
            samples: 0,
            min_margin: f64::INFINITY,
            worst: None,
            violation_count: 0,
            violations: Vec::new(),
            certified_eps: None,
        }
    }

    /// Records one sample. `margin` is the slack (strict) or `tolerance − |disc|` (identity).
    pub(crate) fn record(&mut self, margin: f64, witness: Witness) {
        self.samples += 1;
        if margin < self.min_margin || self.worst.is_none() {
            self.min_margin = margin;
            self.worst = Some(witness);
        }
        let ok = match self.kind {
            CheckKind::Strict => margin > STRICT_MARGIN,
            CheckKind::Identity => margin >= 0.0,
        };
        if !ok {
            self.fail(margin, witness);
        }
    }

    pub(crate) fn fail(&mut self, margin: f64, witness: Witness) {
        self.violation_count += 1;
        if self.violations.len() < MAX_LISTED {
            self.violations.push(Violation { witness, margin });
        }
    }

    pub(crate) fn add_samples(&mut self, n: usize) {
        self.samples += n;
    }

    pub(crate) fn observe_eps(&mut self, eps: f64) {
        self.certified_eps = Some(self.certified_eps.map_or(eps, |e: f64| e.min(eps)));
    }

    pub(crate) fn finish(self) -> LemmaReport {
        LemmaReport {
            lemma_id: self.id,
            kind: self.kind,
            precision: self.precision,
            samples: self.samples,
            min_margin: if self.samples == 0 { 0.0 } else { self.min_margin },
            worst_witness: self.worst,
            tolerance: self.tolerance,
            certified_eps: self.certified_eps,
            violation_count: self.violation_count,
            violations: self.violations,
        }
    }
}

/// Parameters for [`run_suite`]; the defaults are the standard grids.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub precision: usize,
    pub identity_grid: Grid2D,
    pub oval_grid: Grid2D,
    pub strip_grid: Grid2D,
    pub wide_strip_grid: Grid2D,
    pub u_steps: usize,
    pub ratio_u_max: f64,
    pub ratio_points: usize,
    pub taylor_s_max: f64,
    pub taylor_x_steps: usize,
    pub taylor_u_steps: usize,
    pub exp_m_max: u32,
    pub exp_a_grid: Vec<f64>,
}

impl SuiteConfig {
    pub fn standard(precision: usize) -> Self {
        SuiteConfig {
            precision,
            identity_grid: Grid2D::identity_default(),
            oval_grid: Grid2D::oval_default(),
            strip_grid: Grid2D::strip_default(),
            wide_strip_grid: Grid2D::wide_strip_default(),
            u_steps: DEFAULT_STEPS,
            ratio_u_max: 1.0,
            ratio_points: 1024,
            taylor_s_max: 0.25,
            taylor_x_steps: 32,
            taylor_u_steps: 32,
            exp_m_max: 12,
            exp_a_grid: default_exp_a_grid(),
        }
    }

    /// Same checks on coarse grids, for quick runs.
    pub fn coarse(precision: usize) -> Self {
        let mut c = SuiteConfig::standard(precision);
        c.identity_grid = c.identity_grid.with_steps(12);
        c.oval_grid = c.oval_grid.with_steps(12);
        c.strip_grid = c.strip_grid.with_steps(12);
        c.wide_strip_grid = c.wide_strip_grid.with_steps(12);
        c.u_steps = 16;
        c.ratio_points = 128;
        c.taylor_x_steps = 8;
        c.taylor_u_steps = 8;
        c.exp_m_max = 6;
        c.exp_a_grid = vec![0.25, 1.0, 4.0];
        c
    }
}

/// 64 log-spaced values in `[0.1, 20]`.
pub fn default_exp_a_grid() -> Vec<f64> {
    let (lo, hi) = (0.1f64.ln(), 20f64.ln());
    (0..DEFAULT_STEPS)
        .map(|i| (lo + (hi - lo) * i as f64 / (DEFAULT_STEPS - 1) as f64).exp())
        .collect()
}

pub fn run_lemma(id: LemmaId, cfg: &SuiteConfig) -> LemmaReport {
    let p = cfg.precision;
    match id {
        LemmaId::RegionIdentity => check_region_identity(&cfg.identity_grid, p),
        LemmaId::UMonotonicity => check_u_monotonicity(&cfg.oval_grid, cfg.u_steps, p),
        LemmaId::RatioLowerBound => check_ratio_lower_bound_grid(&cfg.strip_grid, cfg.ratio_u_max, cfg.ratio_points, p),
        LemmaId::ExpIntegral => check_exp_integral(cfg.exp_m_max, &cfg.exp_a_grid, p),
        LemmaId::TaylorRatio => check_taylor_ratio(
            &cfg.oval_grid,
            cfg.taylor_s_max,
            cfg.taylor_x_steps,
            cfg.taylor_u_steps,
            p,
        ),
        LemmaId::PositivityReA => check_positivity(&cfg.wide_strip_grid, Positivity::ReA, p),
        LemmaId::PositivityReA2 => check_positivity(&cfg.oval_grid, Positivity::ReA2, p),
    }
}

/// All seven checks, in [`LemmaId::ALL`] order.
pub fn run_suite(cfg: &SuiteConfig) -> Vec<LemmaReport> {
    LemmaId::ALL.iter().map(|&id| run_lemma(id, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_deterministic_and_filtered() {
        let g = Grid2D::oval_default();
        let pts = g.points();
        assert_eq!(pts, g.points());
        assert!(!pts.is_empty() && pts.len() < 64 * 64);
        assert!(pts
            .iter()
            .all(|&(x, y)| 2.0 * (x.cosh() - y.cos()) <= 1.0 - STANDOFF && (x, y) != (0.0, 0.0)));
        let odd = Grid2D::new((-1.0, 1.0), (-1.0, 1.0), 3).excluding(Exclusion::Origin);
        assert_eq!(odd.points().len(), 8);
    }

    #[test]
    fn lemma_names_round_trip() {
        for id in LemmaId::ALL {
            assert_eq!(LemmaId::parse(id.name()), Some(id));
        }
        assert_eq!(LemmaId::parse("nope"), None);
    }

    #[test]
    fn exp_grid_shape() {
        let g = default_exp_a_grid();
        assert_eq!(g.len(), 64);
        assert!((g[0] - 0.1).abs() < 1e-15 && (g[63] - 20.0).abs() < 1e-12);
    }
}

//! Runs every acceptance criterion, prints one verdict line each, and exits
//! non-zero if any of them fails.

use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fig8_core::jones::{habiro_exact, jones_numeric, kashaev_value, recursion_residual, Shift};
use fig8_core::lab::{self, growth_rate_study, limit_study, mmr_study, shifted_gap_study};
use fig8_core::lemmas::{run_suite, CheckKind, LemmaId, SuiteConfig};
use fig8_core::mp;
use fig8_core::{ComplexParam, LaurentPolynomial};
use fig8_validation::*;
use num_rational::BigRational;

type Outcome = (bool, String);

fn param(x: f64, y: f64) -> ComplexParam {
    ComplexParam::from_f64(x, y, PRECISION).unwrap()
}

fn exact_formula() -> Outcome {
    let j2 = LaurentPolynomial::from_terms([(2, 1), (1, -1), (0, 1), (-1, -1), (-2, 1)]);
    let first = habiro_exact(2).unwrap().poly == j2;
    let bad: Vec<i64> = (1..=12)
        .filter(|&n| {
            let p = habiro_exact(n).unwrap().poly;
            !(p.is_symmetric() && p.eval_at_one() == 1.into())
        })
        .collect();
    (
        first && bad.is_empty(),
        format!("J_2 matches: {first}; asymmetric or J(1) != 1 at {bad:?}"),
    )
}

fn recursion() -> Outcome {
    let nonzero: Vec<i64> = (3..=10)
        .filter(|&n| !recursion_residual(n).unwrap().is_zero())
        .collect();
    (nonzero.is_empty(), format!("nonzero residual at {nonzero:?}"))
}

fn theorem_convergence() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (x, y) in LIMIT_POINTS {
        let r = limit_study(&param(x, y), &LIMIT_SCHEDULE, false).unwrap();
        let last = *r.relative_errors.last().unwrap();
        let pass = r.strictly_decreasing() && last < LIMIT_REL_ERROR_AT_800;
        ok &= pass;
        parts.push(format!(
            "a={}: rel(800)={last:.2e}{}",
            r.a,
            if pass { "" } else { " !" }
        ));
    }
    (
        ok,
        format!("{} (threshold {LIMIT_REL_ERROR_AT_800:.0e})", parts.join(", ")),
    )
}

fn shared_limit() -> Outcome {
    let a = param(0.5, 0.0);
    let mut ok = true;
    let mut parts = Vec::new();
    for shift in [Shift::One, Shift::Two] {
        let r = shifted_gap_study(&a, shift, &LIMIT_SCHEDULE, false).unwrap();
        let shrink = r.gaps[0] / r.gaps[r.gaps.len() - 1];
        ok &= shrink >= SHIFT_SHRINK;
        parts.push(format!("l={}: gap(100)/gap(800)={shrink:.2}", shift.get()));
    }
    (ok, parts.join(", "))
}

fn cross_check() -> Outcome {
    let floor = 8 - PRECISION as i64;
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    let mut points: Vec<(f64, f64)> = LIMIT_POINTS.to_vec();
    points.push((0.4, 0.3));
    for (x, y) in points {
        let a = param(x, y);
        for n in 1..=50u32 {
            let exact = habiro_exact(n as i64)
                .unwrap()
                .poly
                .eval(&a.exp_over(n as u64), PRECISION)
                .unwrap();
            let numeric = jones_numeric(n, &a, Shift::Zero).unwrap().value;
            let rel = mp::rel_diff(&exact, &numeric, PRECISION + mp::GUARD_BITS);
            worst = worst.max(mp::to_f64(&rel));
            if !mp::below_pow2(&rel, floor) {
                failures.push((a.to_string(), n));
            }
        }
    }
    (
        failures.is_empty(),
        format!("worst relative difference {worst:.2e} vs 2^{floor}; failures {failures:?}"),
    )
}

fn mmr() -> Outcome {
    let n_set: Vec<u32> = (2..=10).collect();
    let t = mmr_study(6, &n_set, 6).unwrap();
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let expected = vec![q(1, 1), q(0, 1), q(1, 1), q(0, 1), q(13, 12), q(0, 1), q(421, 360)];
    let ok = t.degrees_bounded() && t.diagonal == expected && t.diagonal_matches();
    let diag: Vec<String> = t.diagonal.iter().map(|c| c.to_string()).collect();
    (
        ok,
        format!(
            "degrees {:?}; diagonal [{}]; oracle agrees: {}",
            t.fitted_degree,
            diag.join(", "),
            t.diagonal_matches()
        ),
    )
}

fn growth() -> Outcome {
    let schedule: Vec<u32> = (10..=2000).collect();
    let r = growth_rate_study(&schedule, PRECISION).unwrap();
    let series = lab::volume_reference();
    let reference_ok = (series - TWO_V3).abs() < 1e-13;
    let gap = (r.rates.last().unwrap() - TWO_V3).abs() / TWO_V3;
    let k2 = mp::to_f64(&kashaev_value(2, PRECISION).unwrap());
    let k3 = kashaev_value(3, PRECISION).unwrap();
    let k3_ok = mp::below_pow2(&k3.sub(&mp::real(13.0, PRECISION), PRECISION, mp::RM), -100);
    let increasing = r.increasing();
    let ok = increasing && gap < GROWTH_REL_GAP && reference_ok && k2 == 5.0 && k3_ok;
    let mono = match r.first_non_increase {
        None => "increasing on 10..2000".to_owned(),
        Some((a, b)) => {
            let down = r.rates.windows(2).filter(|w| w[1] < w[0]).count();
            format!(
                "NOT increasing: r_{b} < r_{a}, {down} of {} steps decrease",
                r.rates.len() - 1
            )
        }
    };
    (
        ok,
        format!(
            "{mono}; r_10={:.4}, r_2000={:.4}, 2v3={TWO_V3:.6} (gap {:.2}%); K_2={k2}, K_3=13: {k3_ok}",
            r.rates[0],
            r.rates.last().unwrap(),
            gap * 100.0
        ),
    )
}

fn lemmas() -> Outcome {
    let reports = run_suite(&SuiteConfig::standard(PRECISION));
    let mut ok = true;
    let mut parts = Vec::new();
    for r in &reports {
        let mut pass = r.passed();
        if r.lemma_id == LemmaId::RegionIdentity {
            pass &= r.kind == CheckKind::Identity && r.tolerance == 2f64.powi(24 - PRECISION as i32);
        }
        if matches!(r.lemma_id, LemmaId::PositivityReA | LemmaId::PositivityReA2) {
            pass &= r.min_margin > POSITIVITY_MARGIN;
        }
        ok &= pass;
        parts.push(format!("{}={}", r.lemma_id.name(), r.violation_count));
    }
    (ok, format!("violations: {}", parts.join(" ")))
}

fn strip_timestamp(text: &str) -> String {
    text.lines()
        .filter(|l| !l.contains("\"timestamp\""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn determinism() -> Outcome {
    let configs: [&[&str]; 5] = [
        &["fig8", "limit", "--a", "0.3+0.2i", "--schedule", "25,50,100"],
        &["fig8", "shifted", "--a", "0.5", "--l", "2", "--schedule", "25,50"],
        &["fig8", "mmr", "--format", "csv"],
        &["fig8", "lemmas", "--coarse"],
        &["fig8", "growth", "--schedule", "10,20,40"],
    ];
    let mut differing = Vec::new();
    for args in configs {
        let a = fig8_cli::run_args(args.iter().copied());
        let b = fig8_cli::run_args(args.iter().copied());
        if a.code != b.code || strip_timestamp(&a.stdout) != strip_timestamp(&b.stdout) || a.stdout.is_empty() {
            differing.push(args[1]);
        }
    }
    (
        differing.is_empty(),
        format!("{} configurations, differing: {differing:?}", configs.len()),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome, Duration); 9] = [
        (1, "exact cyclotomic formula", exact_formula, BUDGET_EXACT),
        (
            2,
            "recursion residual vanishes for N = 3..10",
            recursion,
            BUDGET_RECURSION,
        ),
        (3, "convergence to 1/(3 - 2cosh a)", theorem_convergence, BUDGET_LIMIT),
        (4, "J_N and J_{N-l} share the limit", shared_limit, BUDGET_SHIFTED),
        (5, "exact and numeric evaluation agree", cross_check, BUDGET_CROSSCHECK),
        (6, "expansion degrees and diagonal", mmr, BUDGET_MMR),
        (7, "Kashaev growth rate", growth, BUDGET_GROWTH),
        (8, "lemma suite on default grids", lemmas, BUDGET_LEMMAS),
        (9, "byte-identical reports", determinism, Duration::from_secs(120)),
    ];
    let mut passed = 0;
    for (id, title, check, budget) in criteria {
        let start = Instant::now();
        let (ok, detail) = panic::catch_unwind(check).unwrap_or_else(|_| (false, "panicked".to_owned()));
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let detail = format!("{detail}; {:.2}s of {}s", elapsed.as_secs_f64(), budget.as_secs());
        if verdict(id, title, ok && in_time, &detail) {
            passed += 1;
        }
    }
    println!("acceptance: {passed}/{} criteria passed", criteria.len());
    if passed == criteria.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

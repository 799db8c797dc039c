use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Result};
use fig8_core::jones::{habiro_exact, jones_numeric, recursion_residual_from, Shift};
use fig8_core::lab::{self, DEFAULT_SCHEDULE};
use fig8_core::laurent::MIN_PRECISION;
use fig8_core::lemmas::{run_lemma, LemmaId, SuiteConfig};
use fig8_core::mp::{self, Complex};
use fig8_core::{ComplexParam, LaurentPolynomial};
use rayon::prelude::*;
use serde_json::json;

use crate::cache::Cache;
use crate::report::Report;
use crate::{schedule, Command, RunArgs};

const GROWTH_SCHEDULE: [u32; 8] = [10, 20, 50, 100, 200, 500, 1000, 2000];
const MMR_SCHEDULE: &str = "2..10";

/// Bad input on the command line; maps to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(UsageError(msg.into()))
}

pub fn exit_code(e: &anyhow::Error) -> u8 {
    if e.chain().any(|c| c.is::<std::io::Error>()) {
        3
    } else {
        2
    }
}

fn parse_param(s: &str, p: usize) -> Result<ComplexParam> {
    ComplexParam::parse(s, p).map_err(|e| usage(e.to_string()))
}

fn parse_schedule(spec: Option<&str>, default: &[u32]) -> Result<Vec<u32>> {
    match spec {
        Some(s) => schedule::parse(s).map_err(|e| usage(format!("{e:#}"))),
        None => Ok(default.to_vec()),
    }
}

fn core(e: fig8_core::Error) -> anyhow::Error {
    usage(e.to_string())
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn dec(x: &mp::Real) -> String {
    mp::to_decimal(x)
}

fn complex_fields(prefix: &str, z: &Complex) -> serde_json::Map<String, serde_json::Value> {
    let mut m = serde_json::Map::new();
    m.insert(format!("{prefix}_re"), dec(&z.re).into());
    m.insert(format!("{prefix}_im"), dec(&z.im).into());
    m
}

pub fn dispatch(cmd: Command, run: &RunArgs) -> Result<Report> {
    let p = run.precision;
    if p < MIN_PRECISION {
        return Err(usage(format!(
            "precision must be at least {MIN_PRECISION} bits, got {p}"
        )));
    }
    let cache = run.cache.as_deref().map(Cache::open).transpose()?;
    match cmd {
        Command::Eval { n, a, l, exact } => eval(n, &a, l, exact, p, cache.as_ref()),
        Command::Limit {
            a,
            schedule,
            allow_outside,
        } => limit(&a, schedule.as_deref(), allow_outside, p),
        Command::Shifted {
            a,
            l,
            schedule,
            allow_outside,
        } => shifted(&a, l, schedule.as_deref(), allow_outside, p),
        Command::Growth { schedule } => growth(schedule.as_deref(), p),
        Command::Mmr { j_max, schedule, order } => mmr(j_max, schedule.as_deref(), order, p),
        Command::Lemmas { all, lemmas, coarse } => lemma_suite(all, &lemmas, coarse, p),
        Command::Recursion { n } => recursion(&n, p, cache.as_ref()),
        Command::Region { a } => region(&a, p),
    }
}

fn exact_poly(n: u32, cache: Option<&Cache>) -> Result<LaurentPolynomial> {
    match cache {
        Some(c) => Ok(c.get(n)?.0),
        None => Ok(habiro_exact(n as i64).map_err(core)?.poly),
    }
}

fn eval(n: i64, a: &str, l: u32, exact: bool, p: usize, cache: Option<&Cache>) -> Result<Report> {
    let a = parse_param(a, p)?;
    let shift = Shift::from_u32(l).map_err(core)?;
    if n < (l + 1) as i64 || n > u32::MAX as i64 {
        return Err(usage(format!("need N >= {} for l = {l}, got {n}", l + 1)));
    }
    let n = n as u32;
    let run = jones_numeric(n, &a, shift).map_err(core)?;
    let verdict = lab::region_check(&a);
    let mut r = Report::new("eval", p);
    r.param("n", n);
    r.param("l", l);
    r.param("a", a.to_string());
    let mut row = json!({ "n": n, "l": l });
    let obj = row.as_object_mut().expect("object literal");
    obj.extend(complex_fields("value", &run.value));
    obj.insert("delta".into(), dec(&verdict.delta).into());
    obj.insert("inside".into(), verdict.inside.into());
    if exact {
        let poly = exact_poly(n - l, cache)?;
        let value = poly.eval(&a.exp_over(n as u64), p).map_err(core)?;
        let rel = mp::rel_diff(&value, &run.value, p + mp::GUARD_BITS);
        obj.extend(complex_fields("exact", &value));
        obj.insert("relative_difference".into(), mp::to_f64(&rel).into());
        r.verdict(
            "exact_matches_numeric",
            mp::below_pow2(&rel, 8 - p as i64),
            format!("tolerance 2^{}", 8 - p as i64),
        );
    }
    r.row(row);
    Ok(r)
}

fn limit(a: &str, spec: Option<&str>, allow_outside: bool, p: usize) -> Result<Report> {
    let a = parse_param(a, p)?;
    let sched = parse_schedule(spec, &DEFAULT_SCHEDULE)?;
    let rep = lab::limit_study(&a, &sched, allow_outside).map_err(core)?;
    let mut r = Report::new("limit", p);
    r.param("a", a.to_string());
    r.param("schedule", sched.clone());
    r.params.extend(complex_fields("target", &rep.target));
    r.param("delta", rep.delta);
    r.param("fitted_order", rep.fitted_order);
    r.param("exploratory", rep.exploratory);
    for (i, n) in sched.iter().enumerate() {
        let mut row = json!({ "n": n });
        let obj = row.as_object_mut().expect("object literal");
        obj.extend(complex_fields("value", &rep.values[i]));
        obj.insert("error".into(), mp::to_f64(&rep.errors[i]).into());
        obj.insert("relative_error".into(), rep.relative_errors[i].into());
        obj.insert("tail_bound".into(), rep.tail_bound[i].into());
        obj.insert("tail_ratio".into(), rep.tail_ratio[i].into());
        r.row(row);
    }
    if !rep.exploratory {
        r.verdict("errors_strictly_decreasing", rep.strictly_decreasing(), "");
        let worst = rep.tail_ratio.iter().cloned().fold(0.0, f64::max);
        r.verdict(
            "geometric_tail_bound",
            worst <= 1.0 + 1e-9,
            format!("max ratio {worst}"),
        );
    }
    Ok(r)
}

fn shifted(a: &str, l: u32, spec: Option<&str>, allow_outside: bool, p: usize) -> Result<Report> {
    let a = parse_param(a, p)?;
    let shift = Shift::from_u32(l).map_err(core)?;
    let sched = parse_schedule(spec, &DEFAULT_SCHEDULE)?;
    let rep = lab::shifted_gap_study(&a, shift, &sched, allow_outside).map_err(core)?;
    let mut r = Report::new("shifted", p);
    r.param("a", a.to_string());
    r.param("l", l);
    r.param("schedule", sched.clone());
    r.param("eps_prime", rep.eps_prime);
    r.param("c", rep.c);
    r.param("delta", rep.delta);
    r.param("exploratory", rep.exploratory);
    for (i, n) in sched.iter().enumerate() {
        r.row(json!({ "n": n, "gap": rep.gaps[i], "bound": rep.bounds[i] }));
    }
    if !rep.exploratory {
        let decreasing = rep.gaps.windows(2).all(|w| w[1] < w[0]) || rep.gaps.iter().all(|&g| g == 0.0);
        r.verdict("gaps_decreasing", decreasing, "");
        let checked: Vec<bool> = rep
            .gaps
            .iter()
            .zip(&rep.bounds)
            .filter_map(|(g, b)| b.map(|b| *g <= b))
            .collect();
        r.verdict(
            "three_term_bound",
            checked.iter().all(|&ok| ok),
            format!("{} of {} colours have an applicable bound", checked.len(), sched.len()),
        );
    }
    Ok(r)
}

fn growth(spec: Option<&str>, p: usize) -> Result<Report> {
    let sched = parse_schedule(spec, &GROWTH_SCHEDULE)?;
    let rep = lab::growth_rate_study(&sched, p).map_err(core)?;
    let mut r = Report::new("growth", p);
    r.param("schedule_len", sched.len());
    r.param("reference", rep.reference);
    r.param("fit_form", rep.fit_form);
    if let Some(e) = &rep.extrapolation {
        r.param("extrapolated_limit", e.limit);
        r.param("alpha", e.alpha);
        r.param("beta", e.beta);
    }
    for (i, n) in sched.iter().enumerate() {
        r.row(json!({ "n": n, "kashaev": dec(&rep.kashaev[i]), "rate": rep.rates[i] }));
    }
    let detail = rep
        .first_non_increase
        .map(|(a, b)| format!("r_{b} <= r_{a}"))
        .unwrap_or_default();
    r.verdict("rates_increasing", rep.increasing(), detail);
    let last = rep.rates.len() - 1;
    let gap = rep.relative_gap(last);
    r.verdict(
        "last_rate_within_5_percent",
        gap < 0.05,
        format!("relative gap {gap:.4}"),
    );
    Ok(r)
}

fn mmr(j_max: usize, spec: Option<&str>, order: Option<usize>, p: usize) -> Result<Report> {
    let sched = schedule::parse(spec.unwrap_or(MMR_SCHEDULE)).map_err(|e| usage(format!("{e:#}")))?;
    let d = order.unwrap_or(j_max);
    let t = lab::mmr_study(j_max, &sched, d).map_err(core)?;
    let mut r = Report::new("mmr", p);
    r.param("j_max", j_max);
    r.param("n_set", sched.clone());
    r.param("order", d);
    for j in 0..=j_max {
        r.row(json!({
            "j": j,
            "fitted_degree": t.fitted_degree[j],
            "diagonal": t.diagonal[j].to_string(),
            "oracle": t.oracle[j].to_string(),
            "fit": join(&t.fits[j]),
            "c": join(&t.c[j]),
        }));
    }
    r.verdict("degree_at_most_j", t.degrees_bounded(), "");
    r.verdict("odd_rows_vanish", t.odd_rows_vanish(), "");
    r.verdict("diagonal_matches_oracle", t.diagonal_matches(), "");
    Ok(r)
}

fn lemma_suite(all: bool, names: &[String], coarse: bool, p: usize) -> Result<Report> {
    let ids: Vec<LemmaId> = if all || names.is_empty() {
        LemmaId::ALL.to_vec()
    } else {
        names
            .iter()
            .map(|n| LemmaId::parse(n).ok_or_else(|| usage(format!("unknown lemma {n:?}"))))
            .collect::<Result<_>>()?
    };
    let cfg = if coarse {
        SuiteConfig::coarse(p)
    } else {
        SuiteConfig::standard(p)
    };
    let mut r = Report::new("lemmas", p);
    r.param("grids", if coarse { "coarse" } else { "standard" });
    let mut violations = serde_json::Map::new();
    for id in ids {
        let rep = run_lemma(id, &cfg);
        let w = rep.worst_witness.unwrap_or_default();
        r.row(json!({
            "lemma": id.name(),
            "kind": format!("{:?}", rep.kind).to_lowercase(),
            "samples": rep.samples,
            "min_margin": rep.min_margin,
            "tolerance": rep.tolerance,
            "worst_a_re": w.a_re,
            "worst_a_im": w.a_im,
            "worst_u": w.u,
            "worst_x": w.x,
            "worst_m": w.m,
            "certified_eps": rep.certified_eps,
            "violations": rep.violation_count,
        }));
        if !rep.violations.is_empty() {
            violations.insert(id.name().to_owned(), serde_json::to_value(&rep.violations)?);
        }
        r.verdict(
            id.name(),
            rep.passed(),
            format!("{} violations in {} samples", rep.violation_count, rep.samples),
        );
    }
    r.param("violations", violations);
    Ok(r)
}

fn recursion(spec: &str, p: usize, cache: Option<&Cache>) -> Result<Report> {
    let ns = schedule::parse(spec).map_err(|e| usage(format!("{e:#}")))?;
    if ns[0] < 3 {
        bail!(usage(format!("recursion needs N >= 3, got {}", ns[0])));
    }
    // fetch each colour once; cache files are not shared between threads
    let mut polys = BTreeMap::new();
    for &n in &ns {
        for m in n - 2..=n {
            if let std::collections::btree_map::Entry::Vacant(e) = polys.entry(m) {
                e.insert(exact_poly(m, cache)?);
            }
        }
    }
    let residuals: Vec<LaurentPolynomial> = ns
        .par_iter()
        .map(|&n| recursion_residual_from(n as i64, &polys[&n], &polys[&(n - 1)], &polys[&(n - 2)]))
        .collect::<fig8_core::Result<_>>()
        .map_err(core)?;
    let mut r = Report::new("recursion", p);
    r.param("n", ns.clone());
    for (n, res) in ns.iter().zip(&residuals) {
        let state = if res.is_zero() { "zero" } else { "nonzero" };
        r.row(json!({ "n": n, "residual": state, "terms": res.len() }));
    }
    let bad: Vec<u32> = ns
        .iter()
        .zip(&residuals)
        .filter(|(_, r)| !r.is_zero())
        .map(|(n, _)| *n)
        .collect();
    r.verdict("residual_zero", bad.is_empty(), format!("nonzero at {bad:?}"));
    Ok(r)
}

fn region(a: &str, p: usize) -> Result<Report> {
    let a = parse_param(a, p)?;
    let v = lab::region_check(&a);
    let direct = v.direct_form();
    let mut r = Report::new("region", p);
    r.param("a", a.to_string());
    let landmarks: Vec<_> = v
        .landmarks
        .iter()
        .map(|l| {
            let (re, im) = l.a.to_f64();
            json!({ "label": l.label, "re": re, "im": im })
        })
        .collect();
    r.param("landmarks", landmarks);
    r.row(json!({
        "a": a.to_string(),
        "delta": dec(&v.delta),
        "im_bound_ok": v.im_bound_ok,
        "inside": v.inside,
        "equivalent_form": dec(&v.equivalent_form),
        "direct_form": dec(&direct),
        "margin": v.margin,
    }));
    let diff = direct.sub(&v.equivalent_form, p + mp::GUARD_BITS, mp::RM);
    r.verdict(
        "forms_agree",
        mp::below_pow2(&diff, 16 - p as i64),
        format!("|cosh a - 1| vs cosh x - cos y within 2^{}", 16 - p as i64),
    );
    Ok(r)
}

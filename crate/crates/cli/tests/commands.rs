use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn fig8(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fig8"))
        .args(args)
        .env_remove("SOURCE_DATE_EPOCH")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

/// Report text with the timestamp line removed.
fn body(text: &str) -> String {
    text.lines()
        .filter(|l| !l.contains("\"timestamp\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn eval_trivial_and_kashaev_point() {
    let out = fig8(&["eval", "--n", "2", "--a", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"][0]["value_re"], "1");
    assert_eq!(v["results"][0]["value_im"], "0");

    let out = fig8(&["eval", "--n", "2", "--a", "2pi*i"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"][0]["value_re"], "5");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["eval", "--n", "0", "--a", "0"][..],
        &["eval", "--n", "2", "--a", "1+"][..],
        &["eval", "--n", "2", "--a", "0.3", "--l", "2"][..],
        &["limit", "--a", "0.5", "--schedule", "200,100"][..],
        &["limit", "--a", "1.5"][..],
        &["eval", "--n", "4", "--a", "0", "--precision", "32"][..],
        &["lemmas", "--lemma", "no_such_lemma"][..],
        &["recursion", "--n", "2..5"][..],
        &["frobnicate"][..],
    ] {
        let out = fig8(args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn io_error_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("report.json");
    let out = fig8(&["region", "--a", "0.2", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn limit_errors_decrease() {
    let out = fig8(&["limit", "--a", "0.5", "--schedule", "100,200,400,800"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let errors: Vec<f64> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["error"].as_f64().unwrap())
        .collect();
    assert_eq!(errors.len(), 4);
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
}

#[test]
fn outside_region_runs_only_when_asked() {
    let out = fig8(&["limit", "--a", "1.2", "--schedule", "10,20", "--allow-outside"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["params"]["exploratory"], true);
    assert!(v["verdicts"].as_array().unwrap().is_empty());
}

#[test]
fn recursion_range_with_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("polys");
    for _ in 0..2 {
        let out = fig8(&[
            "recursion",
            "--n",
            "3..10",
            "--format",
            "csv",
            "--cache",
            cache.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        let text = String::from_utf8(out.stdout).unwrap();
        assert_eq!(text.lines().count(), 9);
        assert!(text.lines().skip(1).all(|l| l.contains(",zero,")), "{text}");
    }
    let header = std::fs::read_to_string(cache.join("jones_fig8_N5.txt")).unwrap();
    assert!(header.starts_with("jones figure-eight N=5 v1\n"));
}

#[test]
fn cache_hit_reproduces_exact_polynomial() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let fresh = fig8(&["eval", "--n", "30", "--a", "0.4+0.3i", "--exact"]);
    let cold = fig8(&["eval", "--n", "30", "--a", "0.4+0.3i", "--exact", "--cache", cache]);
    let warm = fig8(&["eval", "--n", "30", "--a", "0.4+0.3i", "--exact", "--cache", cache]);
    for out in [&fresh, &cold, &warm] {
        assert_eq!(out.status.code(), Some(0));
    }
    let pick = |o: &Output| json(o)["results"][0]["exact_re"].clone();
    assert_eq!(pick(&fresh), pick(&cold));
    assert_eq!(pick(&cold), pick(&warm));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for (i, args) in [
        vec!["mmr", "--j-max", "4"],
        vec!["shifted", "--a", "0.5", "--l", "1", "--schedule", "20,40,80"],
        vec!["lemmas", "--coarse", "--lemma", "positivity_re_a"],
    ]
    .into_iter()
    .enumerate()
    {
        let mut bodies = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("r{i}_{run}.json"));
            let mut full = args.clone();
            full.extend([
                "--out",
                path.to_str().unwrap(),
                "--jobs",
                if run == 0 { "1" } else { "2" },
            ]);
            let out = fig8(&full);
            assert_eq!(out.status.code(), Some(0), "{args:?}");
            assert!(out.stdout.is_empty());
            bodies.push(body(&std::fs::read_to_string(&path).unwrap()));
        }
        assert_eq!(bodies[0], bodies[1], "{args:?}");
    }
}

#[test]
fn csv_has_header_and_dot_decimals() {
    let out = fig8(&[
        "shifted",
        "--a",
        "0.5",
        "--l",
        "2",
        "--schedule",
        "50,100",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,gap,bound"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert!(row[1].parse::<f64>().is_ok() && row[1].contains('.'));
}

#[test]
fn growth_report_flags_monotonicity() {
    let out = fig8(&["growth", "--schedule", "10,100,1000"]);
    let v = json(&out);
    let verdicts = v["verdicts"].as_array().unwrap();
    let find = |name: &str| {
        verdicts.iter().find(|x| x["name"] == name).unwrap()["passed"]
            .as_bool()
            .unwrap()
    };
    assert!(!find("rates_increasing"));
    assert!(find("last_rate_within_5_percent"));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cache_dir_is_created() {
    let dir = tempfile::tempdir().unwrap();
    let nested = dir.path().join("a").join("b");
    let out = fig8(&["region", "--a", "0", "--cache", nested.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(Path::new(&nested).is_dir());
}

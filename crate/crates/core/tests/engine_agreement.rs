use fig8_core::jones::{habiro_exact, jones_numeric, Shift};
use fig8_core::mp::{self, Complex};
use fig8_core::ComplexParam;

const P: usize = 128;

fn params() -> Vec<ComplexParam> {
    [(0.3, 0.0), (0.0, 0.5), (0.4, 0.3)]
        .iter()
        .map(|&(x, y)| ComplexParam::from_f64(x, y, P).unwrap())
        .collect()
}

fn close(a: &Complex, b: &Complex) -> bool {
    mp::below_pow2(&mp::rel_diff(a, b, P + 64), 8 - P as i64)
}

#[test]
fn exact_and_numeric_agree() {
    for a in params() {
        for n in 1..=50u32 {
            let t = a.exp_over(n as u64);
            let exact = habiro_exact(n as i64).unwrap().poly.eval(&t, P).unwrap();
            let numeric = jones_numeric(n, &a, Shift::Zero).unwrap().value;
            assert!(close(&exact, &numeric), "a={a} N={n}");
        }
    }
}

#[test]
fn shifted_sums_are_lower_colours() {
    // Σ_{k<N−l} Π g'_N(j; l) is J_{N−l} evaluated at exp(a/N)
    for a in params() {
        for n in [5u32, 12, 30] {
            let t = a.exp_over(n as u64);
            for shift in [Shift::One, Shift::Two] {
                let lower = habiro_exact((n - shift.get()) as i64)
                    .unwrap()
                    .poly
                    .eval(&t, P)
                    .unwrap();
                let numeric = jones_numeric(n, &a, shift).unwrap().value;
                assert!(close(&lower, &numeric), "a={a} N={n} {shift:?}");
            }
        }
    }
}

#[test]
fn partial_products_bounded_by_delta_powers() {
    for a in params() {
        let delta = mp::to_f64(&a.delta());
        let run = jones_numeric(200, &a, Shift::Zero).unwrap();
        for (k, f) in run.trace.f_values.iter().enumerate() {
            let (re, im) = f.to_f64();
            let bound = delta.powi(k as i32);
            assert!(re.hypot(im) <= bound * (1.0 + 1e-12) || bound < 1e-300, "a={a} k={k}");
        }
    }
}

//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use reverse_bernstein::constants::{constants, cross_validate, euler_number};
use reverse_bernstein::interpolation::{residual_l1, verify_zero_structure};
use reverse_bernstein::verify::{random_tail_sample, run_forward_trials, run_reverse_trials, saturation_test};
use reverse_bernstein::waves::make_j;
use reverse_bernstein::TrigSeries;

const SEED: u64 = 20_240_611;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    out.detail = format!("{}; {:.3} s", out.detail, elapsed.as_secs_f64());
    if let Some(limit) = limit {
        if elapsed > limit {
            out.passed = false;
            out.detail = format!("{} exceeds {:.0} s", out.detail, limit.as_secs_f64());
        }
    }
    out
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn closed_form_constants() -> Outcome {
    let c11 = constants(1, 1).unwrap().c_km;
    let c12 = constants(1, 2).unwrap().c_km;
    let (e1, e2) = (rel(c11, 2.0 / PI), rel(c12, 8.0 / (PI * PI)));
    outcome(e1 <= 1e-12 && e2 <= 1e-12, format!("C(1,1) rel err {e1:.1e}, C(1,2) rel err {e2:.1e}"))
}

fn euler_numbers() -> Outcome {
    let text = include_str!("fixtures/a000111.txt");
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for line in text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let mut parts = line.split_whitespace();
        let m: usize = parts.next().unwrap().parse().unwrap();
        let value: BigInt = parts.next().unwrap().parse().unwrap();
        if euler_number(m) != value {
            mismatches.push(m);
        }
        checked += 1;
    }
    outcome(checked == 28 && mismatches.is_empty(), format!("{checked} terms, mismatches at {mismatches:?}"))
}

fn dual_path_constants() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for k in 1..=8 {
        for m in 1..=10 {
            let v = cross_validate(k, m, 1e-10).unwrap();
            worst = worst.max(v.sup_norm_rel_error).max(v.resonance_rel_error);
            if !v.passed {
                failures.push((k, m));
            }
        }
    }
    outcome(failures.is_empty(), format!("80 cells, worst rel err {worst:.1e}, failures {failures:?}"))
}

fn saturation() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 1..=4 {
        for m in 1..=6 {
            worst = worst.max(saturation_test(k, m).unwrap().gap);
        }
    }
    outcome(worst <= 1e-12, format!("24 cells, worst gap {worst:.1e}"))
}

fn randomized_suite() -> Outcome {
    let mut failures = 0;
    let mut trials = 0;
    let mut worst = f64::INFINITY;
    for k in 1..=4 {
        for m in 1..=3 {
            let r = run_reverse_trials(k, m, 1000, 64, SEED, 1e-6).unwrap();
            failures += r.failures;
            trials += r.trials;
            worst = worst.min(r.min_relative_margin.unwrap());
        }
    }
    outcome(
        failures == 0 && trials == 12_000,
        format!("{trials} trials, {failures} failures, min relative margin {worst:.3e}"),
    )
}

fn l1_optimality() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 1..=5 {
        for m in 1..=5 {
            let d = constants(k, m).unwrap().d_km;
            worst = worst.max((residual_l1(k, m).unwrap() - d).abs());
        }
    }
    outcome(worst <= 1e-9, format!("25 cells, worst |‖J_m - p‖₁ - D| = {worst:.1e}"))
}

fn zero_structure() -> Outcome {
    let mut failures = Vec::new();
    for k in 1..=5 {
        for m in 1..=4 {
            let r = verify_zero_structure(k, m).unwrap();
            let ok = r.passed && r.zero_count == 2 * k && r.all_simple && r.alternating;
            if !ok {
                failures.push(format!("({k},{m}): {:?}", r.failures));
            }
        }
    }
    outcome(failures.is_empty(), format!("20 cells, failures {failures:?}"))
}

fn operator_identities() -> Outcome {
    let mut notes = Vec::new();
    // I∘d/dx = id, bit for bit, on coefficients with at most 31 significant bits
    let mut exact = true;
    for seed in 0..100u64 {
        let f = random_tail_sample(1, 48, seed).unwrap();
        let positive: Vec<Complex64> = (1..=48)
            .map(|j| {
                let c = f.coeff(j);
                Complex64::new((c.re * 1048576.0).round() / 1048576.0, (c.im * 1048576.0).round() / 1048576.0)
            })
            .collect();
        let f = TrigSeries::real_from_nonnegative(0.0, &positive);
        if f.derivative().antiderivative().unwrap() != f {
            exact = false;
        }
    }
    notes.push(format!("I∘d/dx exact: {exact}"));

    let mut adj: f64 = 0.0;
    for i in 0..100u64 {
        let a = random_tail_sample(1, 32, 2 * i).unwrap();
        let b = random_tail_sample(1, 32, 2 * i + 1).unwrap();
        let lhs = a.antiderivative().unwrap().inner_product(&b);
        let rhs = a.inner_product(&b.antiderivative().unwrap());
        adj = adj.max((lhs + rhs).norm());
    }
    notes.push(format!("max |⟨Ia,b⟩ + ⟨a,Ib⟩| {adj:.1e}"));

    let mut prim: f64 = 0.0;
    for i in 0..20u64 {
        let band = 24;
        let phi = random_tail_sample(1, band, 1000 + i).unwrap();
        for m in 1..=5 {
            let at_pi = phi.iterated_antiderivative(m).unwrap().evaluate(PI).norm();
            let kernel = make_j(m).unwrap().to_trig_series(band);
            let ip = phi.inner_product(&kernel).norm();
            prim = prim.max((at_pi - ip).abs());
        }
    }
    notes.push(format!("max ||I^m φ(π)| - |⟨φ,J_m⟩|| {prim:.1e}"));
    outcome(exact && adj <= 1e-12 && prim <= 1e-10, notes.join(", "))
}

fn forward_bernstein() -> Outcome {
    let mut failures = 0;
    let mut gap: f64 = 0.0;
    let mut worst: f64 = 0.0;
    for k in 1..=6 {
        let r = run_forward_trials(k, 500, SEED, 1e-9).unwrap();
        failures += r.failures;
        gap = gap.max(r.saturation_gap);
        worst = worst.max(r.max_ratio.unwrap());
    }
    outcome(
        failures == 0 && gap <= 1e-12,
        format!("3000 polynomials, {failures} failures, max ratio {worst:.6}, e^(ikx) gap {gap:.1e}"),
    )
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("1 closed-form constants", Some(Duration::from_secs(1)), closed_form_constants),
        ("2 Euler numbers m = 0..27", Some(Duration::from_secs(1)), euler_numbers),
        ("3 dual-path D(k,m), k ≤ 8, m ≤ 10", Some(Duration::from_secs(30)), dual_path_constants),
        ("4 saturation, k ≤ 4, m ≤ 6", None, saturation),
        ("5 randomized reverse inequality", Some(Duration::from_secs(120)), randomized_suite),
        ("6 L1 optimality, k ≤ 5, m ≤ 5", None, l1_optimality),
        ("7 zero structure, k ≤ 5, m ≤ 4", None, zero_structure),
        ("8 operator identities", None, operator_identities),
        ("9 forward Bernstein", None, forward_bernstein),
    ];
    let mut all = true;
    for (name, limit, check) in criteria {
        let out = timed(limit, check);
        all &= out.passed;
        println!("{} criterion {name}: {}", if out.passed { "PASS" } else { "FAIL" }, out.detail);
    }
    if all {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}

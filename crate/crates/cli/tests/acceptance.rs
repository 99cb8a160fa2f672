//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hyperlift::criterion::{
    antiderivative_of_zeros, gap_closed_form, quartic_closed_form, st_statistic,
};
use hyperlift::oracle::{corpus, random_zero_set, trial_rng, FuzzReport};
use hyperlift::polynomial::{root_multiplicity, RootCounter};
use hyperlift::{
    feasibility_general, feasibility_general_with, inequality_count, inequality_pairs, lift_any,
    lift_any_with, quartic_a_form, quartic_b_form, quartic_feasible, quartic_st_test,
    verify_witness, Poly, Rational, Scalar, Witness, Zeros,
};
use hyperlift_cli::report::CheckReport;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 42;
const FUZZ_TRIALS: usize = 10_000;
const FUZZ_BUDGET: Duration = Duration::from_secs(120);
const FLOAT_TOL: f64 = 1e-9;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    q(rng.random_range(-60..=60), rng.random_range(1..=12))
}

fn zeros(values: Vec<Rational>) -> Zeros<Rational> {
    Zeros::from_unsorted(values).expect("rationals are ordered")
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn run_cli(args: &[&str]) -> Result<(Option<i32>, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperlift"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot run the binary: {e}"))?;
    Ok((
        out.status.code(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    ))
}

/// Random quartets, a third of them with a repeated zero.
fn random_quartet(rng: &mut ChaCha8Rng) -> Zeros<Rational> {
    let mut v: Vec<Rational> = (0..4).map(|_| random_rational(rng)).collect();
    if rng.random_bool(1.0 / 3.0) {
        let (a, b) = (rng.random_range(0..4), rng.random_range(0..4));
        v[a] = v[b].clone();
    }
    zeros(v)
}

fn double_pair_counterexample() -> Outcome {
    let (code, out) = run_cli(&["--format", "json", "check", "--zeros", "4,4,1,1"])?;
    let report: CheckReport =
        serde_json::from_str(out.trim()).map_err(|e| format!("bad JSON: {e}"))?;
    ensure(code == Some(1), || {
        format!("exit code {code:?}, expected 1")
    })?;
    ensure(report.verdict == "infeasible", || {
        format!("verdict {}", report.verdict)
    })?;
    ensure(report.violated_pairs == [(4, 1)], || {
        format!("violated pairs {:?}", report.violated_pairs)
    })?;
    ensure(
        report.critical_values == ["64/5", "64/5", "47/10", "47/10"],
        || format!("critical values {:?}", report.critical_values),
    )?;
    Ok("infeasible, violated (4,1), critical values (64/5, 64/5, 47/10, 47/10)".into())
}

fn st_threshold_sweep() -> Outcome {
    let grid: Vec<Rational> = (-100..=100).map(|k| q(k, 100)).collect();
    let mut points = 0;
    let mut on_threshold = 0;
    for s in &grid {
        for t in &grid {
            let z = zeros(vec![q(1, 1), s.clone(), t.clone(), q(-1, 1)]);
            let general = feasibility_general(&z).map_err(|e| e.to_string())?.feasible;
            let closed = quartic_st_test(s, t);
            ensure(general == closed, || {
                format!("disagreement at s = {s}, t = {t}: general {general}, st test {closed}")
            })?;
            if st_statistic(s, t).is_zero() {
                on_threshold += 1;
                ensure(general, || {
                    format!("threshold point s = {s}, t = {t} judged infeasible")
                })?;
            }
            points += 1;
        }
    }
    let half = feasibility_general(&zeros(vec![q(1, 1), q(1, 2), q(-2, 5), q(-1, 1)]))
        .map_err(|e| e.to_string())?;
    ensure(half.feasible && half.boundary, || {
        "s = 1/2, t = -2/5 is not a feasible boundary point".into()
    })?;
    Ok(format!(
        "{points} grid points agree, {on_threshold} of them on st = -1/5"
    ))
}

fn st_identity() -> Outcome {
    let mut rng = trial_rng(SEED, 3);
    for _ in 0..1000 {
        let (s, t) = (random_rational(&mut rng), random_rational(&mut rng));
        let z = zeros(vec![q(1, 1), s.clone(), t.clone(), q(-1, 1)]);
        let p = antiderivative_of_zeros(&z);
        let lhs = Rational::from_int(60) * (p.eval(&q(1, 1)) - p.eval(&q(-1, 1)));
        let rhs = Rational::from_int(-16) * st_statistic(&s, &t);
        ensure(lhs == rhs, || {
            format!("s = {s}, t = {t}: 60(P(1) - P(-1)) = {lhs}, -16(1 + 5st) = {rhs}")
        })?;
    }
    Ok("1000 random (s, t), identity exact".into())
}

fn quadratic_forms() -> Outcome {
    let mut rng = trial_rng(SEED, 4);
    let mut infeasible = 0;
    for _ in 0..10_000 {
        let z = random_quartet(&mut rng);
        let w = z.as_slice();
        let gaps = z.gaps();
        let a = quartic_a_form(w).map_err(|e| e.to_string())?;
        let b = quartic_b_form(&gaps).map_err(|e| e.to_string())?;
        let closed = quartic_closed_form(w).map_err(|e| e.to_string())?;
        let gap_closed = gap_closed_form(&gaps).map_err(|e| e.to_string())?;
        ensure(a == b && b == closed && closed == gap_closed, || {
            format!("forms differ on {z}: A {a}, B {b}, closed {closed}, gap closed {gap_closed}")
        })?;
        let general = feasibility_general(&z).map_err(|e| e.to_string())?.feasible;
        ensure(general == !a.is_negative(), || {
            format!("sign of {a} disagrees with verdict {general} on {z}")
        })?;
        let quartic = quartic_feasible(&z).map_err(|e| e.to_string())?.feasible;
        ensure(quartic == general, || {
            format!("quartic_feasible {quartic} vs general {general} on {z}")
        })?;
        infeasible += usize::from(!general);
    }
    Ok(format!(
        "10000 quartets, forms equal, signs agree ({infeasible} infeasible)"
    ))
}

fn count_formula() -> Outcome {
    for n in 2..=40usize {
        let enumerated = inequality_pairs(n).len();
        let formula = (n - 2) * (n - 2) / 4;
        ensure(
            enumerated == formula && inequality_count(n) == formula,
            || format!("n = {n}: enumerated {enumerated}, floor((n/2 - 1)^2) = {formula}"),
        )?;
    }
    Ok("n = 2..40".into())
}

fn hyperbolic(p: &Poly<Rational>, c: &Rational) -> Result<bool, String> {
    p.shifted_down(c).is_hyperbolic().map_err(|e| e.to_string())
}

fn interval_converse() -> Outcome {
    let mut found = 0;
    let mut trial = 0;
    while found < 1000 {
        let degree = 2 + trial % 7;
        let (_, z) = random_zero_set(degree, &mut trial_rng(SEED + 6, trial));
        trial += 1;
        let report = feasibility_general(&z).map_err(|e| e.to_string())?;
        if !report.feasible {
            continue;
        }
        found += 1;
        let p = antiderivative_of_zeros(&z);
        let lo = report.c_lo.clone();
        let hi = report.c_hi.clone().ok_or("degree >= 2 has a finite c_hi")?;
        let mid = (lo.clone() + hi.clone()) / Rational::from_int(2);
        for c in [&lo, &mid, &hi] {
            ensure(hyperbolic(&p, c)?, || {
                format!("{z}: P - ({c}) is not hyperbolic")
            })?;
        }
        for c in [lo - Rational::from_int(1), hi + Rational::from_int(1)] {
            ensure(!hyperbolic(&p, &c)?, || {
                format!("{z}: P - ({c}) is hyperbolic outside the interval")
            })?;
        }
    }
    Ok(format!(
        "{found} feasible sets (degrees 2-8) from {trial} draws"
    ))
}

fn fuzz_differential() -> Outcome {
    let mut summary = Vec::new();
    let mut failures = Vec::new();
    for degree in 4..=8 {
        let start = Instant::now();
        let (code, out) = run_cli(&[
            "--format",
            "json",
            "--seed",
            &SEED.to_string(),
            "fuzz",
            "--degree",
            &degree.to_string(),
            "--trials",
            &FUZZ_TRIALS.to_string(),
        ])?;
        let elapsed = start.elapsed();
        let report: FuzzReport =
            serde_json::from_str(out.trim()).map_err(|e| format!("bad JSON: {e}"))?;
        if code != Some(0) || !report.disagreements.is_empty() || report.trials != FUZZ_TRIALS {
            failures.push(format!(
                "degree {degree}: exit {code:?}, {} disagreements, first {:?}",
                report.disagreements.len(),
                report.disagreements.first()
            ));
        }
        if elapsed > FUZZ_BUDGET {
            failures.push(format!("degree {degree} took {elapsed:.1?}"));
        }
        summary.push(format!("d{degree} {:.1}s", elapsed.as_secs_f64()));
    }
    if failures.is_empty() {
        Ok(format!(
            "0 disagreements in 5 x {FUZZ_TRIALS} trials ({})",
            summary.join(", ")
        ))
    } else {
        Err(failures.join("; "))
    }
}

fn affine_invariance() -> Outcome {
    let mut rng = trial_rng(SEED, 8);
    let mut negative = 0;
    for _ in 0..1000 {
        let z = random_quartet(&mut rng);
        let mut a = random_rational(&mut rng);
        while a.is_zero() {
            a = random_rational(&mut rng);
        }
        negative += usize::from(a.is_negative());
        let b = random_rational(&mut rng);
        let before = feasibility_general(&z).map_err(|e| e.to_string())?.feasible;
        let mapped = z.affine(&a, &b);
        let after = feasibility_general(&mapped)
            .map_err(|e| e.to_string())?
            .feasible;
        ensure(before == after, || {
            format!("{z} -> {mapped} under x -> {a}x + {b}: {before} vs {after}")
        })?;
    }
    Ok(format!("1000 maps ({negative} with a < 0)"))
}

/// Interlacing certified by exact root counts and the exact sign pattern.
fn exact_invariants(w: &Witness<Rational>) -> Result<(), String> {
    let counter = RootCounter::new(&w.q).map_err(|e| e.to_string())?;
    for (j, wj) in w.zeros.iter().enumerate() {
        let index = j + 1;
        let above = counter.above(wj);
        let at = root_multiplicity(&w.q, wj);
        // z_{j+1} <= w_j <= z_j
        ensure(above <= index && above + at >= index, || {
            format!("interlacing fails at w_{index} = {wj} of {}", w.zeros)
        })?;
        let value = w.q.eval(wj);
        let ok = if index % 2 == 1 {
            !value.is_positive()
        } else {
            !value.is_negative()
        };
        ensure(ok, || {
            format!("sign pattern fails at w_{index}: Q = {value}")
        })?;
    }
    Ok(())
}

fn float_invariants(w: &Witness<f64>) -> Result<(), String> {
    let (z, ws) = (w.roots.as_slice(), w.zeros.as_slice());
    let scale = 1f64.max(w.zeros.max_abs()).max(w.roots.max_abs());
    let spread = FLOAT_TOL * scale;
    for (j, wj) in ws.iter().enumerate() {
        let index = j + 1;
        ensure(z[j + 1] <= wj + spread && *wj <= z[j] + spread, || {
            format!("interlacing fails at w_{index} = {wj}: z = {:?}", z)
        })?;
        let value = w.q.eval(wj);
        let slack = FLOAT_TOL * w.q.abs_eval(wj).max(1.0);
        let ok = if index % 2 == 1 {
            value <= slack
        } else {
            value >= -slack
        };
        ensure(ok, || {
            format!("sign pattern fails at w_{index}: Q = {value}")
        })?;
    }
    Ok(())
}

/// Every witness the library hands out is checked independently. In exact
/// mode a witness must exist for every feasible set. In float mode the lift
/// may refuse (its own verification failing on an ill-conditioned set); a
/// refusal constructs no witness and is reported separately.
fn witness_invariants() -> Outcome {
    let mut exact = 0;
    let mut float = 0;
    let mut float_infeasible = 0;
    let mut float_refused: Vec<String> = Vec::new();
    for degree in 4..=8 {
        for z in corpus(degree, FUZZ_TRIALS, SEED) {
            if !feasibility_general(&z).map_err(|e| e.to_string())?.feasible {
                continue;
            }
            let w = lift_any(&z).map_err(|e| format!("{z}: {e}"))?;
            exact_invariants(&w).map_err(|e| format!("exact: {e}"))?;
            verify_witness(&w, &Rational::from_int(0)).map_err(|e| format!("exact: {e}"))?;
            exact += 1;

            let zf = z.convert(|v| v.as_f64());
            let report = feasibility_general_with(&zf, &FLOAT_TOL).map_err(|e| e.to_string())?;
            if !report.feasible {
                float_infeasible += 1;
                continue;
            }
            match lift_any_with(&zf, &FLOAT_TOL) {
                Ok(w) => {
                    float_invariants(&w).map_err(|e| format!("float {zf}: {e}"))?;
                    float += 1;
                }
                Err(e) => float_refused.push(format!("{zf}: {e}")),
            }
        }
    }
    ensure(float_infeasible == 0, || {
        format!("{float_infeasible} exact-feasible sets judged infeasible in float mode")
    })?;
    for r in &float_refused {
        eprintln!("float lift refused: {r}");
    }
    Ok(format!(
        "{exact} exact and {float} float witnesses verified (tau = {FLOAT_TOL:e}); {} float lifts refused",
        float_refused.len()
    ))
}

fn low_degree() -> Outcome {
    let mut checked = 0;
    for degree in [2, 3] {
        for trial in 0..1000 {
            let (_, z) = random_zero_set(degree, &mut trial_rng(SEED + 10, trial));
            let report = feasibility_general(&z).map_err(|e| e.to_string())?;
            ensure(report.feasible, || format!("{z} judged infeasible"))?;
            let hi = report.c_hi.clone().ok_or("finite c_hi expected")?;
            ensure(report.c_lo <= hi, || format!("{z}: empty interval"))?;
            lift_any(&z).map_err(|e| format!("{z}: {e}"))?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} sets of degree 2 and 3, all feasible and lifted"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("counterexample (4,4,1,1)", double_pair_counterexample),
        ("st >= -1/5 threshold sweep", st_threshold_sweep),
        ("60(P(1) - P(-1)) = -16(1 + 5st)", st_identity),
        ("quadratic forms A = B = closed form", quadratic_forms),
        ("pair count floor((n/2 - 1)^2)", count_formula),
        ("admissible interval and its converse", interval_converse),
        ("criterion vs oracle fuzz, degrees 4-8", fuzz_differential),
        ("affine invariance", affine_invariance),
        ("witness interlacing and sign pattern", witness_invariants),
        ("degree <= 3 always feasible", low_degree),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

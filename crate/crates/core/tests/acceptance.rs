//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the lines are printed on success too.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rankin_core::padic::{
    hilbert_symbol, hilbert_symbol_bruteforce, least_nonresidue, verify_gamma_properties,
    verify_matrix_identity, verify_weil_relations, PAdicContext, WeilFactor,
};
use rankin_core::whittaker::{
    verify_closed_forms, verify_factorization, verify_main_identity_all_orders,
    verify_negative_controls, verify_partial_fractions, verify_structural,
};

const PRIMES: [u64; 4] = [3, 5, 7, 11];
const ORDER: usize = 40;
const NUMERIC_TOLERANCE: f64 = 1e-9;
const CALIBRATION_TOLERANCE: f64 = 1e-9;
const VANISHING_LEVELS: [u32; 4] = [2, 3, 4, 5];
const GAMMA_INSTANCES: usize = 50;
const WEIL_TRIALS: usize = 20;
const MATRIX_SAMPLES: usize = 20;
const STRUCTURAL_RECURSION_MAX: u32 = 99;
const STRUCTURAL_CLEARED_MAX: u32 = 100;
const SEED: u64 = 20_240_601;

const MAIN_IDENTITY_BUDGET: Duration = Duration::from_secs(60);
const FACTORIZATION_BUDGET: Duration = Duration::from_secs(1);
const PARTIAL_FRACTION_BUDGET: Duration = Duration::from_secs(1);
const UNIT_INTEGRAL_BUDGET: Duration = Duration::from_secs(5);

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn within_budget(passed: bool, elapsed: Duration, budget: Duration, detail: &str) -> Outcome {
    outcome(
        passed && elapsed < budget,
        format!(
            "{detail}; {:.2}s (budget {}s)",
            elapsed.as_secs_f64(),
            budget.as_secs()
        ),
    )
}

fn wf(p: u64) -> WeilFactor {
    let ctx = PAdicContext::with_prime(p).expect("odd prime");
    WeilFactor::calibrate(ctx, CALIBRATION_TOLERANCE).expect("calibration")
}

fn main_identity() -> Outcome {
    let t = Instant::now();
    let reports = verify_main_identity_all_orders(ORDER);
    let bad = reports.iter().find(|r| !r.passed()).map(|r| r.order);
    let detail = match bad {
        None => format!("exact for every N <= {ORDER}"),
        Some(n) => format!("fails at N = {n}"),
    };
    within_budget(bad.is_none(), t.elapsed(), MAIN_IDENTITY_BUDGET, &detail)
}

fn factorization() -> Outcome {
    let t = Instant::now();
    let ok = verify_factorization();
    within_budget(
        ok,
        t.elapsed(),
        FACTORIZATION_BUDGET,
        "combined numerator factors",
    )
}

fn partial_fractions() -> Outcome {
    let t = Instant::now();
    let r = verify_partial_fractions();
    within_budget(
        r.passed(),
        t.elapsed(),
        PARTIAL_FRACTION_BUDGET,
        "both recombinations, Laurent and A-cleared",
    )
}

fn closed_forms() -> Outcome {
    let r = verify_closed_forms(ORDER);
    outcome(
        r.passed(),
        format!("closed forms vs integral series to X^{ORDER}"),
    )
}

fn unit_integral_value() -> Outcome {
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    for p in PRIMES {
        let v = wf(p).unit_integral(1).expect("m = 1");
        worst = worst.max((v - (p as f64).powf(-0.5)).norm());
    }
    within_budget(
        worst < NUMERIC_TOLERANCE,
        t.elapsed(),
        UNIT_INTEGRAL_BUDGET,
        &format!("max |J - p^-1/2| = {worst:.2e}"),
    )
}

fn vanishing() -> Outcome {
    let mut worst: f64 = 0.0;
    for p in PRIMES {
        let w = wf(p);
        for m in VANISHING_LEVELS {
            worst = worst.max(w.unit_integral(m).expect("m >= 2").norm());
        }
    }
    outcome(
        worst < NUMERIC_TOLERANCE,
        format!("max |J_m| = {worst:.2e} over m in 2..=5"),
    )
}

fn gamma_suite() -> Outcome {
    let mut worst: f64 = 0.0;
    for p in PRIMES {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ p);
        let r = verify_gamma_properties(&wf(p), GAMMA_INSTANCES, &mut rng).expect("gamma");
        worst = worst.max(r.max_residual());
    }
    outcome(
        worst < NUMERIC_TOLERANCE,
        format!("{GAMMA_INSTANCES} instances per prime, max residual {worst:.2e}"),
    )
}

fn hilbert_oracle() -> Outcome {
    let mut mismatches = 0;
    for p in PRIMES {
        let ctx = PAdicContext::with_prime(p).expect("odd prime");
        let n = least_nonresidue(p) as i64;
        let pi = p as i64;
        let reps = [1, n, pi, n * pi].map(|x| ctx.from_int(x));
        for a in &reps {
            for b in &reps {
                if hilbert_symbol(a, b).ok() != hilbert_symbol_bruteforce(a, b).ok() {
                    mismatches += 1;
                }
            }
        }
    }
    outcome(
        mismatches == 0,
        format!("{mismatches} mismatches over 4 x 16 pairs"),
    )
}

fn weil_relations() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut signs_ok = true;
    let mut special_ok = true;
    for p in PRIMES {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ (p << 8));
        let r = verify_weil_relations(&wf(p), WEIL_TRIALS, &mut rng).expect("relations");
        worst = worst.max(r.max_residual()).max(r.central_commutation);
        signs_ok &= r.passed(NUMERIC_TOLERANCE);
        let last = r.torus_signs.last().expect("special pair");
        special_ok &= last.hilbert == -1 && (last.sigma[0] + 1.0).abs() < NUMERIC_TOLERANCE;
    }
    outcome(
        worst < NUMERIC_TOLERANCE && signs_ok && special_ok,
        format!("{WEIL_TRIALS} grid functions per prime, max residual {worst:.2e}, signs match Hilbert symbol: {signs_ok}"),
    )
}

fn matrix_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut samples = Vec::new();
    while samples.len() < MATRIX_SAMPLES {
        let num: i64 = rng.gen_range(-500..=500);
        if num != 0 {
            samples.push(BigRational::new(
                num.into(),
                rng.gen_range(1i64..=500).into(),
            ));
        }
    }
    let r = verify_matrix_identity(&samples).expect("nonzero samples");
    outcome(
        r.passed() && r.samples.len() == MATRIX_SAMPLES,
        format!(
            "{} samples, symbolic {}, z-cleared {}",
            r.samples.len(),
            r.symbolic,
            r.symbolic_cleared
        ),
    )
}

fn structural() -> Outcome {
    let r = verify_structural(STRUCTURAL_RECURSION_MAX, STRUCTURAL_CLEARED_MAX, ORDER);
    outcome(
        r.passed(),
        r.first_failure
            .unwrap_or_else(|| "all structural identities hold".into()),
    )
}

fn degree(m: Option<usize>) -> String {
    m.map_or_else(|| "none".into(), |d| d.to_string())
}

fn negative_controls() -> Outcome {
    let r = verify_negative_controls(ORDER);
    outcome(
        r.passed(),
        format!(
            "perturbed L-factor first differs at degree {} (planted {}), flipped factorization at {} (planted {})",
            degree(r.perturbed_mismatch),
            r.perturbed_degree,
            degree(r.flipped_mismatch),
            r.flipped_degree
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("main identity", main_identity),
        ("factorization", factorization),
        ("partial fractions", partial_fractions),
        ("closed forms", closed_forms),
        ("unit integral m = 1", unit_integral_value),
        ("vanishing for m >= 2", vanishing),
        ("gamma property list", gamma_suite),
        ("hilbert symbol oracle", hilbert_oracle),
        ("weil representation relations", weil_relations),
        ("matrix identity", matrix_identity),
        ("structural suites", structural),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {:>2}. {name}: {}", i + 1, o.detail);
        if !o.passed {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

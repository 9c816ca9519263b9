//! Runners behind each `verify` subcommand.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::rf_expand;
use crate::padic::{
    gauss_sum, hilbert_symbol, hilbert_symbol_bruteforce, is_prime, least_nonresidue, legendre,
    random_element, verify_character_orthogonality, verify_gamma_properties,
    verify_heisenberg_group, verify_matrix_identity, verify_psi_additivity,
    verify_unit_integral_stability, verify_weil_relations, PAdicContext, PAdicElement, PAdicError,
    WeilFactor,
};
use crate::report::{CheckBuilder, CheckResult, VerificationReport};
use crate::whittaker::{
    l_ratio, verify_closed_forms, verify_closed_forms_separately, verify_factorization,
    verify_main_identity_all_orders, verify_negative_controls, verify_partial_fractions,
    verify_structural, UnramifiedDatum, DEFAULT_ORDER,
};

/// Bounds of the structural suites: recursions below this index.
pub const STRUCTURAL_RECURSION_MAX: u32 = 99;
/// Cleared Casselman-Shalika identities through this index.
pub const STRUCTURAL_CLEARED_MAX: u32 = 100;
/// Random instances for the `gamma_psi` property list, per prime.
pub const GAMMA_INSTANCES: usize = 50;
/// Random pairs for the additivity of `psi`, per prime.
pub const PSI_PAIRS: usize = 100;
/// Random grid functions for the Weil-representation relations, per prime.
pub const WEIL_TRIALS: usize = 20;
/// Random triples for the Heisenberg group law, per prime.
pub const HEISENBERG_TRIALS: usize = 50;
/// Random rational samples for the matrix identity.
pub const MATRIX_SAMPLES: usize = 20;
/// Random pairs compared against the brute-force Hilbert oracle, per prime.
pub const HILBERT_RANDOM_PAIRS: usize = 20;
/// Summation moduli above this size are skipped by the refinement check.
pub const STABILITY_MODULUS_BUDGET: u64 = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Suite {
    Algebra,
    Identity,
    Gauss,
    Hilbert,
    Weil,
    Matrix,
    All,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ConfigError {
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("at least one prime is required")]
    NoPrimes,
    #[error("--mmax must be at least 1")]
    InvalidMmax,
    #[error("tolerance must be positive and finite")]
    InvalidTolerance,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub order: usize,
    pub primes: Vec<u64>,
    pub mmax: u32,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            order: DEFAULT_ORDER,
            primes: vec![3, 5, 7, 11],
            mmax: 5,
            tolerance: 1e-9,
            seed: 0,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.primes.is_empty() {
            return Err(ConfigError::NoPrimes);
        }
        if let Some(&p) = self.primes.iter().find(|&&p| p < 3 || !is_prime(p)) {
            return Err(ConfigError::InvalidPrime(p));
        }
        if self.mmax < 1 {
            return Err(ConfigError::InvalidMmax);
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(ConfigError::InvalidTolerance);
        }
        Ok(())
    }

    fn primes(&self) -> Vec<u64> {
        let mut ps = self.primes.clone();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    /// Independent stream per check and prime, so results do not depend on
    /// which suites run or in what order.
    fn rng(&self, stream: u64, p: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream << 32 | p);
        rng
    }
}

mod streams {
    pub const SPECIALIZATION: u64 = 1;
    pub const PSI: u64 = 2;
    pub const GAMMA: u64 = 3;
    pub const HILBERT: u64 = 4;
    pub const WEIL: u64 = 5;
    pub const HEISENBERG: u64 = 6;
    pub const MATRIX: u64 = 7;
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<VerificationReport, ConfigError> {
    cfg.validate()?;
    let results = match suite {
        Suite::Algebra => algebra(cfg),
        Suite::Identity => identity(cfg),
        Suite::Gauss => gauss(cfg),
        Suite::Hilbert => hilbert(cfg),
        Suite::Weil => weil(cfg),
        Suite::Matrix => matrix(cfg),
        Suite::All => {
            let mut all = Vec::new();
            for s in [
                Suite::Algebra,
                Suite::Identity,
                Suite::Gauss,
                Suite::Hilbert,
                Suite::Weil,
                Suite::Matrix,
            ] {
                all.extend(run_suite(s, cfg)?.results);
            }
            all
        }
    };
    Ok(VerificationReport::new(results))
}

fn exact(b: CheckBuilder, ok: bool, pass: &str, fail: impl Into<String>) -> CheckResult {
    if ok {
        b.finish(true, pass, None)
    } else {
        b.finish(false, fail, None)
    }
}

pub fn algebra(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let n = cfg.order;
    let mut out = Vec::new();

    let b = CheckBuilder::new("algebra.factorization");
    out.push(exact(
        b,
        verify_factorization(),
        "combined numerator equals (1 - a1 a2 X^2)(1 + a1 X)(1 + a2 X)",
        "combined numerator does not factor as expected",
    ));

    let b = CheckBuilder::new("algebra.partial-fractions");
    let r = verify_partial_fractions();
    out.push(exact(
        b,
        r.passed(),
        "both recombinations hold in Laurent and A-cleared form",
        format!("{r:?}"),
    ));

    let b = CheckBuilder::new("algebra.closed-forms").param("order", n);
    let sum = verify_closed_forms(n);
    let (first, second) = verify_closed_forms_separately(n);
    let ok = sum.passed() && first.is_equal() && second.is_equal();
    let detail = match (&sum.comparison.mismatch, &first.mismatch, &second.mismatch) {
        (None, None, None) => format!("each closed form and their sum agree through X^{n}"),
        (Some(m), _, _) => format!("sum differs at X^{}", m.degree),
        (_, Some(m), _) => format!("first sum differs at X^{}", m.degree),
        (_, _, Some(m)) => format!("second sum differs at X^{}", m.degree),
    };
    out.push(b.finish(ok, detail, None));

    let b = CheckBuilder::new("algebra.structural")
        .param("max_cleared", STRUCTURAL_CLEARED_MAX)
        .param("max_recursion", STRUCTURAL_RECURSION_MAX)
        .param("order", n);
    let r = verify_structural(STRUCTURAL_RECURSION_MAX, STRUCTURAL_CLEARED_MAX, n);
    let detail = r.first_failure.clone().unwrap_or_else(|| {
        "recursions, cleared identities, generating function and symmetries hold".into()
    });
    out.push(b.finish(r.passed(), detail, None));

    let b = CheckBuilder::new("algebra.negative-controls").param("order", n);
    let r = verify_negative_controls(n);
    let detail = format!(
        "perturbed L-factor first fails at X^{} (planted at {}); flipped factorization first fails at X^{} (planted at {})",
        fmt_opt(r.perturbed_mismatch),
        r.perturbed_degree,
        fmt_opt(r.flipped_mismatch),
        r.flipped_degree
    );
    out.push(b.finish(r.passed(), detail, None));

    let b = CheckBuilder::new("algebra.specialization")
        .param("order", n)
        .param("seed", cfg.seed);
    let mut rng = cfg.rng(streams::SPECIALIZATION, 0);
    let datum = UnramifiedDatum::new(
        random_rational(&mut rng),
        random_rational(&mut rng),
        random_rational(&mut rng),
    )
    .expect("random rationals are nonzero");
    let symbolic = datum.specialize_series(&rf_expand(&l_ratio(), n));
    let scalar = datum.scalar_integral_series(n);
    let first_bad = symbolic.iter().zip(&scalar).position(|(a, b)| a != b);
    let detail = match first_bad {
        None => format!(
            "specialized expansion matches the scalar series at {}",
            datum_label(&datum)
        ),
        Some(k) => format!("specialized expansion differs at X^{k}"),
    };
    out.push(b.finish(first_bad.is_none(), detail, None));
    out
}

fn fmt_opt(x: Option<usize>) -> String {
    x.map_or_else(|| "none".into(), |d| d.to_string())
}

fn datum_label(d: &UnramifiedDatum) -> String {
    let [a, a1, a2] = d.values();
    format!("A={a}, a1={a1}, a2={a2}")
}

fn random_rational<R: Rng>(rng: &mut R) -> BigRational {
    loop {
        let num: i64 = rng.gen_range(-9..=9);
        if num != 0 {
            return BigRational::new(BigInt::from(num), BigInt::from(rng.gen_range(1i64..=9)));
        }
    }
}

pub fn identity(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let n = cfg.order;
    let b = CheckBuilder::new("identity.main").param("order", n);
    let reports = verify_main_identity_all_orders(n);
    let detail = match reports.iter().find(|r| !r.passed()) {
        None => format!("integral series equals the L-factor ratio exactly at every order 0..={n}"),
        Some(r) => {
            let m = r
                .comparison
                .mismatch
                .as_ref()
                .expect("failed report has a mismatch");
            format!(
                "order {} first differs at X^{}: {} vs {}",
                r.order, m.degree, m.left, m.right
            )
        }
    };
    vec![b.finish(reports.iter().all(|r| r.passed()), detail, None)]
}

fn context(p: u64) -> Result<(PAdicContext, WeilFactor), PAdicError> {
    let ctx = PAdicContext::with_prime(p)?;
    let wf = WeilFactor::calibrate(ctx, 1e-9)?;
    Ok((ctx, wf))
}

pub fn gauss(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let tol = cfg.tolerance;
    let mut out = Vec::new();
    for p in cfg.primes() {
        let b = CheckBuilder::new("gauss.legendre").param("p", p);
        let squares: Vec<u64> = (1..p).map(|x| x * x % p).collect();
        let ok = (1..p).all(|u| legendre(u, p) == Ok(if squares.contains(&u) { 1 } else { -1 }))
            && legendre(p, p).is_err();
        out.push(exact(
            b,
            ok,
            "Euler's criterion matches the enumerated squares",
            "mismatch with enumerated squares",
        ));

        let b = CheckBuilder::new("gauss.gauss-sum").param("p", p);
        let g = gauss_sum(p);
        let res = (g.norm() - (p as f64).sqrt()).abs();
        out.push(b.within(res, tol, format!("G = {:.12} {:+.12}i", g.re, g.im)));

        let (ctx, wf) = match context(p) {
            Ok(x) => x,
            Err(e) => {
                out.push(
                    CheckBuilder::new("gauss.calibration")
                        .param("p", p)
                        .error(e),
                );
                continue;
            }
        };

        let b = CheckBuilder::new("gauss.calibration").param("p", p);
        let c = wf.calibration();
        let detail =
            format!(
            "convention {:?}{}; m=1 unit integral direct {:.12}{:+.12}i, conjugate {:.12}{:+.12}i",
            c.chosen,
            if c.ambiguous { " (both conventions agree)" } else { "" },
            c.direct[0],
            c.direct[1],
            c.conjugate[0],
            c.conjugate[1]
        );
        out.push(b.finish(true, detail, None));

        let b = CheckBuilder::new("gauss.psi-additivity")
            .param("p", p)
            .param("pairs", PSI_PAIRS);
        out.push(
            match verify_psi_additivity(&ctx, PSI_PAIRS, &mut cfg.rng(streams::PSI, p)) {
                Ok(r) => b.within(
                    r.additivity.max(r.unit_modulus),
                    tol,
                    "psi(x + y) = psi(x) psi(y), |psi| = 1",
                ),
                Err(e) => b.error(e),
            },
        );

        let b = CheckBuilder::new("gauss.gamma-properties")
            .param("instances", GAMMA_INSTANCES)
            .param("p", p);
        out.push(match verify_gamma_properties(&wf, GAMMA_INSTANCES, &mut cfg.rng(streams::GAMMA, p)) {
            Ok(r) => b.within(
                r.max_residual(),
                tol,
                format!(
                    "multiplicativity {:.1e}, gamma(b^2) {:.1e}, gamma(ab^2) {:.1e}, gamma^4 {:.1e}",
                    r.multiplicativity, r.square_trivial, r.square_class, r.fourth_power
                ),
            ),
            Err(e) => b.error(e),
        });

        for m in 1..=cfg.mmax {
            let b = CheckBuilder::new("gauss.unit-integral")
                .param("m", m)
                .param("p", p);
            out.push(match wf.unit_integral(m) {
                Ok(v) => {
                    let target = if m == 1 { (p as f64).powf(-0.5) } else { 0.0 };
                    let res = (v - target).norm();
                    b.within(
                        res,
                        tol,
                        format!("{:.12} {:+.12}i, expected {target:.12}", v.re, v.im),
                    )
                }
                Err(e) => b.error(e),
            });

            if m >= 2 {
                let b = CheckBuilder::new("gauss.orthogonality")
                    .param("m", m)
                    .param("p", p);
                out.push(match verify_character_orthogonality(&ctx, m) {
                    Ok(r) => b.within(r.residual, tol, "unit character sum vanishes"),
                    Err(e) => b.error(e),
                });
            }

            if (p as f64).powi(m as i32 + 3) <= STABILITY_MODULUS_BUDGET as f64 {
                let b = CheckBuilder::new("gauss.unit-integral-stability")
                    .param("m", m)
                    .param("p", p);
                out.push(match verify_unit_integral_stability(&wf, m) {
                    Ok(r) => b.within(
                        r.difference,
                        tol,
                        format!("modulus p^{} vs p^{}", m + 2, m + 3),
                    ),
                    Err(e) => b.error(e),
                });
            }
        }
    }
    out
}

pub fn hilbert(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for p in cfg.primes() {
        let ctx = match PAdicContext::with_prime(p) {
            Ok(c) => c,
            Err(e) => {
                out.push(
                    CheckBuilder::new("hilbert.representatives")
                        .param("p", p)
                        .error(e),
                );
                continue;
            }
        };
        let n = least_nonresidue(p) as i64;
        let pi = p as i64;
        let reps = [1, n, pi, n * pi].map(|x| ctx.from_int(x));

        let b = CheckBuilder::new("hilbert.representatives").param("p", p);
        let mut table = String::new();
        let mut ok = true;
        for a in &reps {
            for c in &reps {
                match (hilbert_symbol(a, c), hilbert_symbol_bruteforce(a, c)) {
                    (Ok(x), Ok(y)) => {
                        ok &= x == y;
                        table.push(if x == 1 { '+' } else { '-' });
                    }
                    _ => ok = false,
                }
            }
            table.push(' ');
        }
        out.push(b.finish(
            ok,
            format!(
                "formula and solvability oracle agree on {{1, {n}, p, {n}p}}^2: {}",
                table.trim_end()
            ),
            None,
        ));

        let b = CheckBuilder::new("hilbert.random")
            .param("p", p)
            .param("pairs", HILBERT_RANDOM_PAIRS);
        let mut rng = cfg.rng(streams::HILBERT, p);
        let mut ok = true;
        let mut first = None;
        for i in 0..HILBERT_RANDOM_PAIRS {
            let a = random_element(&ctx, &mut rng, -3..=3, 0.0);
            let c = random_element(&ctx, &mut rng, -3..=3, 0.0);
            let d = random_element(&ctx, &mut rng, -3..=3, 0.0);
            let h = |x: PAdicElement, y: PAdicElement| hilbert_symbol(&x, &y).expect("nonzero");
            let good = h(a, c) == h(c, a)
                && h(a, c * d) == h(a, c) * h(a, d)
                && hilbert_symbol_bruteforce(&a, &c) == Ok(h(a, c));
            if !good && first.is_none() {
                first = Some(i);
            }
            ok &= good;
        }
        let detail = match first {
            None => "symmetric, bimultiplicative, and matches the oracle".to_string(),
            Some(i) => format!("sample {i} violates symmetry, bimultiplicativity or the oracle"),
        };
        out.push(b.finish(ok, detail, None));
    }
    out
}

pub fn weil(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let tol = cfg.tolerance;
    let mut out = Vec::new();
    for p in cfg.primes() {
        let b = CheckBuilder::new("weil.heisenberg-group")
            .param("p", p)
            .param("trials", HEISENBERG_TRIALS);
        match PAdicContext::with_prime(p) {
            Ok(ctx) => {
                let r = verify_heisenberg_group(
                    &ctx,
                    HEISENBERG_TRIALS,
                    &mut cfg.rng(streams::HEISENBERG, p),
                );
                let detail = format!(
                    "associativity failures {}, N_Q homomorphism failures {}",
                    r.associativity_failures, r.homomorphism_failures
                );
                out.push(b.finish(r.passed(), detail, None));
            }
            Err(e) => out.push(b.error(e)),
        }

        let b = CheckBuilder::new("weil.relations")
            .param("p", p)
            .param("trials", WEIL_TRIALS);
        let r = context(p).and_then(|(_, wf)| {
            verify_weil_relations(&wf, WEIL_TRIALS, &mut cfg.rng(streams::WEIL, p))
        });
        out.push(match r {
            Ok(r) => {
                let special = r.torus_signs.last().expect("special pair recorded");
                let signs_ok = r.torus_signs.iter().all(|s| s.consistent(tol));
                let detail = format!(
                    "heisenberg {:.1e}, torus conj {:.1e}, unipotent conj {:.1e}, additivity {:.1e}, central {:.1e}, unitarity {:.1e}; \
                     {} torus signs {}; sigma(p, n) = {:+.0} vs hilbert {:+}",
                    r.heisenberg_homomorphism,
                    r.torus_conjugation,
                    r.unipotent_conjugation,
                    r.unipotent_additivity,
                    r.central_commutation,
                    r.unitarity,
                    r.torus_signs.len(),
                    if signs_ok { "match hilbert_symbol" } else { "disagree with hilbert_symbol" },
                    special.sigma[0],
                    special.hilbert
                );
                let residual = r.max_residual();
                b.finish(r.passed(tol), detail, Some(residual))
            }
            Err(e) => b.error(e),
        });
    }
    out
}

pub fn matrix(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let b = CheckBuilder::new("matrix.identity")
        .param("samples", MATRIX_SAMPLES)
        .param("seed", cfg.seed);
    let mut rng = cfg.rng(streams::MATRIX, 0);
    let mut samples = vec![
        BigRational::from_integer(1.into()),
        BigRational::new((-3).into(), 7.into()),
    ];
    while samples.len() < MATRIX_SAMPLES {
        let num: i64 = rng.gen_range(-1000..=1000);
        let den: i64 = rng.gen_range(1..=1000);
        let z = BigRational::new(num.into(), den.into());
        if !z.is_zero() {
            samples.push(z);
        }
    }
    vec![match verify_matrix_identity(&samples) {
        Ok(r) => {
            let bad: Vec<_> = r
                .samples
                .iter()
                .filter(|s| !(s.conjugation && s.factorization))
                .map(|s| s.z.clone())
                .collect();
            let detail = format!(
                "{} rational samples exact{}; symbolic {}, z-cleared {}",
                r.samples.len(),
                if bad.is_empty() {
                    String::new()
                } else {
                    format!(" except {}", bad.join(", "))
                },
                r.symbolic,
                r.symbolic_cleared
            );
            b.finish(r.passed(), detail, None)
        }
        Err(e) => b.error(e),
    }]
}

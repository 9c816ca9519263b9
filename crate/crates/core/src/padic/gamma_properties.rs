use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::arith::pow_u64;
use super::character::compensated_sum;
use super::heisenberg::random_element;
use super::{hilbert_symbol, psi_eval, PAdicContext, PAdicError, WeilFactor};

/// Largest residual of each property of `gamma_psi` over random instances.
#[derive(Clone, Debug, Serialize)]
pub struct GammaPropertyReport {
    pub p: u64,
    pub instances: usize,
    /// `|gamma(ab) - gamma(a) gamma(b) (a, b)|`
    pub multiplicativity: f64,
    /// `|gamma(b^2) - 1|`
    pub square_trivial: f64,
    /// `|gamma(a b^2) - gamma(a)|`
    pub square_class: f64,
    /// `|gamma(a)^4 - 1|`
    pub fourth_power: f64,
    /// `||gamma(a)| - 1|`
    pub unit_modulus: f64,
}

impl GammaPropertyReport {
    pub fn max_residual(&self) -> f64 {
        [
            self.multiplicativity,
            self.square_trivial,
            self.square_class,
            self.fourth_power,
            self.unit_modulus,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn passed(&self, tolerance: f64) -> bool {
        self.max_residual() < tolerance
    }
}

pub fn verify_gamma_properties<R: Rng>(
    wf: &WeilFactor,
    instances: usize,
    rng: &mut R,
) -> Result<GammaPropertyReport, PAdicError> {
    let ctx = wf.context();
    let mut r = GammaPropertyReport {
        p: ctx.p(),
        instances,
        multiplicativity: 0.0,
        square_trivial: 0.0,
        square_class: 0.0,
        fourth_power: 0.0,
        unit_modulus: 0.0,
    };
    let one = Complex64::new(1.0, 0.0);
    for _ in 0..instances {
        let a = random_element(ctx, rng, -3..=3, 0.0);
        let b = random_element(ctx, rng, -3..=3, 0.0);
        let c = random_element(ctx, rng, -2..=2, 0.0);
        let (ga, gb) = (wf.gamma(&a)?, wf.gamma(&b)?);
        let h = f64::from(hilbert_symbol(&a, &b)?);
        r.multiplicativity = r
            .multiplicativity
            .max((wf.gamma(&(a * b))? - ga * gb * h).norm());
        r.square_trivial = r.square_trivial.max((wf.gamma(&(c * c))? - one).norm());
        r.square_class = r.square_class.max((wf.gamma(&(a * c * c))? - ga).norm());
        r.fourth_power = r.fourth_power.max((ga.powi(4) - one).norm());
        r.unit_modulus = r.unit_modulus.max((ga.norm() - 1.0).abs());
    }
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiAdditivityReport {
    pub p: u64,
    pub pairs: usize,
    /// `|psi(x + y) - psi(x) psi(y)|`
    pub additivity: f64,
    /// `||psi(x)| - 1|`
    pub unit_modulus: f64,
}

impl PsiAdditivityReport {
    pub fn passed(&self, tolerance: f64) -> bool {
        self.additivity < tolerance && self.unit_modulus < tolerance
    }
}

pub fn verify_psi_additivity<R: Rng>(
    ctx: &PAdicContext,
    pairs: usize,
    rng: &mut R,
) -> Result<PsiAdditivityReport, PAdicError> {
    let mut r = PsiAdditivityReport {
        p: ctx.p(),
        pairs,
        additivity: 0.0,
        unit_modulus: 0.0,
    };
    for _ in 0..pairs {
        let x = random_element(ctx, rng, -4..=4, 0.05);
        let y = random_element(ctx, rng, -4..=4, 0.05);
        let (px, py) = (psi_eval(&x)?, psi_eval(&y)?);
        r.additivity = r.additivity.max((psi_eval(&(x + y))? - px * py).norm());
        r.unit_modulus = r.unit_modulus.max((px.norm() - 1.0).abs());
    }
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct OrthogonalityReport {
    pub p: u64,
    pub m: u32,
    /// `|sum_{u mod p^m, p does not divide u} psi(p^-m u)|`
    pub residual: f64,
}

/// The unit character sum that vanishes for `m >= 2`.
pub fn verify_character_orthogonality(
    ctx: &PAdicContext,
    m: u32,
) -> Result<OrthogonalityReport, PAdicError> {
    if m < 2 {
        return Err(PAdicError::InvalidExponent(m));
    }
    let p = ctx.p();
    let terms: Vec<Complex64> = (1..pow_u64(p, m))
        .filter(|u| u % p != 0)
        .map(|u| psi_eval(&ctx.from_int(u as i64).shift(-(m as i32))))
        .collect::<Result<_, _>>()?;
    let acc = compensated_sum(terms);
    Ok(OrthogonalityReport {
        p,
        m,
        residual: acc.norm(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub p: u64,
    pub m: u32,
    pub base: [f64; 2],
    pub refined: [f64; 2],
    pub difference: f64,
}

/// Unit integral at summation modulus `p^(m+2)` against `p^(m+3)`.
pub fn verify_unit_integral_stability(
    wf: &WeilFactor,
    m: u32,
) -> Result<StabilityReport, PAdicError> {
    let base = wf.unit_integral_at_level(m, m + 2)?;
    let refined = wf.unit_integral_at_level(m, m + 3)?;
    Ok(StabilityReport {
        p: wf.context().p(),
        m,
        base: [base.re, base.im],
        refined: [refined.re, refined.im],
        difference: (base - refined).norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gamma_properties_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in [3u64, 5, 7] {
            let wf = WeilFactor::calibrate(PAdicContext::with_prime(p).unwrap(), 1e-9).unwrap();
            let r = verify_gamma_properties(&wf, 30, &mut rng).unwrap();
            assert!(r.passed(1e-9), "{r:?}");
        }
    }

    #[test]
    fn conjugate_convention_also_multiplicative() {
        // Conjugation preserves the property list, so only the unit integral
        // distinguishes the two conventions.
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let ctx = PAdicContext::with_prime(7).unwrap();
        let wf = WeilFactor::with_convention(ctx, crate::padic::Convention::Conjugate).unwrap();
        assert!(verify_gamma_properties(&wf, 20, &mut rng)
            .unwrap()
            .passed(1e-9));
    }

    #[test]
    fn psi_is_additive() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ctx = PAdicContext::with_prime(5).unwrap();
        assert!(verify_psi_additivity(&ctx, 100, &mut rng)
            .unwrap()
            .passed(1e-12));
    }

    #[test]
    fn orthogonality_and_stability() {
        let ctx = PAdicContext::with_prime(3).unwrap();
        for m in 2..=4 {
            assert!(verify_character_orthogonality(&ctx, m).unwrap().residual < 1e-9);
        }
        assert!(verify_character_orthogonality(&ctx, 1).is_err());
        let wf = WeilFactor::calibrate(ctx, 1e-9).unwrap();
        for m in 1..=3 {
            assert!(verify_unit_integral_stability(&wf, m).unwrap().difference < 1e-9);
        }
    }
}

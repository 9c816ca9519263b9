//! The Weil factor `gamma_psi` as a normalized oscillator sum, and the unit
//! integrals `int_{O^x} gamma_psi(p^m u^-1)^-1 psi(p^-m u) du`.

use num_complex::Complex64;
use serde::Serialize;

use super::arith::{inv_mod, pow_u64};
use super::character::{psi_eval, root_of_unity, ComplexApprox};
use super::{PAdicContext, PAdicElement, PAdicError};

/// Agreement required between successive oscillator sums.
pub const STABILIZATION_TOLERANCE: f64 = 1e-9;
/// Number of refinements tried beyond the first nondegenerate level.
pub const MAX_REFINEMENTS: u32 = 8;

/// Which of the two complex-conjugate normalizations is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `gamma_psi(a)` is the normalized sum of `psi(a x^2)` itself.
    Direct,
    /// `gamma_psi(a)` is its complex conjugate.
    Conjugate,
}

/// `sum_{y mod p^n} exp(2 pi i u y^2 / p^n)`.
fn oscillator_sum(u: u64, p: u64, n: u32) -> Complex64 {
    let m = pow_u64(p, n);
    let u = u % m;
    (0..m)
        .map(|y| {
            let r = ((u as u128 * y as u128 % m as u128) * y as u128 % m as u128) as u64;
            root_of_unity(r, p, n)
        })
        .sum()
}

/// Normalized oscillator integral of `psi(a x^2)` over `p^-M O`.
///
/// With `a = p^alpha w` and `x = p^-M y` this is the normalized sum of
/// `exp(2 pi i w y^2 / p^n)` over `y mod p^n`, `n = 2M - alpha`; for `n <= 0`
/// the integrand is identically one.
fn oscillator_at(a: &PAdicElement, big_m: i32) -> Result<Complex64, PAdicError> {
    let alpha = a.valuation().ok_or(PAdicError::ZeroInput)?;
    let n = 2 * big_m - alpha;
    if n <= 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let n = n as u32;
    if n > a.precision() {
        return Err(PAdicError::InsufficientPrecision {
            valuation: alpha,
            precision: a.precision(),
        });
    }
    let s = oscillator_sum(a.unit(), a.p(), n);
    Ok(s / s.norm())
}

/// Stabilized normalized oscillator sum and the number of unit digits of `a`
/// it actually read.
///
/// Starts at the smallest `M` with `2M - ord(a) >= 0` and refines one step at
/// a time until two successive values agree.
pub fn oscillator_weil_index(a: &PAdicElement) -> Result<(Complex64, u32), PAdicError> {
    let alpha = a.valuation().ok_or(PAdicError::ZeroInput)?;
    let m0 = (alpha + 1).div_euclid(2);
    let mut prev = oscillator_at(a, m0)?;
    for j in 1..=MAX_REFINEMENTS as i32 {
        let cur = oscillator_at(a, m0 + j)?;
        if (cur - prev).norm() < STABILIZATION_TOLERANCE {
            let digits = (2 * (m0 + j) - alpha).max(0) as u32;
            return Ok((cur, digits));
        }
        prev = cur;
    }
    Err(PAdicError::NonStabilization {
        valuation: alpha,
        refinements: MAX_REFINEMENTS,
    })
}

/// Values of the unit integral under both conventions, used to pick one.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Calibration {
    pub target: f64,
    pub direct: [f64; 2],
    pub conjugate: [f64; 2],
    pub chosen: Convention,
    /// Both conventions reproduce the target (all values real).
    pub ambiguous: bool,
}

/// `gamma_psi` on `Q_p` with a calibrated convention.
#[derive(Clone, Debug)]
pub struct WeilFactor {
    ctx: PAdicContext,
    convention: Convention,
    calibration: Calibration,
}

impl WeilFactor {
    /// Chooses the convention for which the `m = 1` unit integral equals
    /// `q^{-1/2}`.
    pub fn calibrate(ctx: PAdicContext, tolerance: f64) -> Result<Self, PAdicError> {
        let target = (ctx.q() as f64).powf(-0.5);
        let direct = sum_over_units(&ctx, Convention::Direct, 1, 3)?;
        let conjugate = sum_over_units(&ctx, Convention::Conjugate, 1, 3)?;
        let hit = |z: Complex64| (z - Complex64::new(target, 0.0)).norm() < tolerance;
        let (chosen, ambiguous) = match (hit(direct), hit(conjugate)) {
            (true, b) => (Convention::Direct, b),
            (false, true) => (Convention::Conjugate, false),
            (false, false) => {
                return Err(PAdicError::CalibrationFailed {
                    p: ctx.p(),
                    direct: direct.re,
                    conjugate: conjugate.re,
                })
            }
        };
        Ok(Self {
            ctx,
            convention: chosen,
            calibration: Calibration {
                target,
                direct: [direct.re, direct.im],
                conjugate: [conjugate.re, conjugate.im],
                chosen,
                ambiguous,
            },
        })
    }

    pub fn with_convention(ctx: PAdicContext, convention: Convention) -> Result<Self, PAdicError> {
        let target = (ctx.q() as f64).powf(-0.5);
        let direct = sum_over_units(&ctx, Convention::Direct, 1, 3)?;
        let conjugate = sum_over_units(&ctx, Convention::Conjugate, 1, 3)?;
        Ok(Self {
            ctx,
            convention,
            calibration: Calibration {
                target,
                direct: [direct.re, direct.im],
                conjugate: [conjugate.re, conjugate.im],
                chosen: convention,
                ambiguous: false,
            },
        })
    }

    pub fn context(&self) -> &PAdicContext {
        &self.ctx
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn calibration(&self) -> &Calibration {
        &self.calibration
    }

    /// `gamma_psi(a)` for nonzero `a`.
    pub fn gamma(&self, a: &PAdicElement) -> Result<ComplexApprox, PAdicError> {
        gamma_with(self.convention, a).map(|(g, _)| g)
    }

    /// `int_{O^x} gamma_psi(p^m u^-1)^-1 psi(p^-m u) du` summed over units
    /// modulo `p^{m+2}`.
    pub fn unit_integral(&self, m: u32) -> Result<ComplexApprox, PAdicError> {
        self.unit_integral_at_level(m, m + 2)
    }

    /// Same integral summed over units modulo `p^level`, each with weight
    /// `p^-level`.
    pub fn unit_integral_at_level(&self, m: u32, level: u32) -> Result<ComplexApprox, PAdicError> {
        sum_over_units(&self.ctx, self.convention, m, level)
    }
}

fn gamma_with(convention: Convention, a: &PAdicElement) -> Result<(Complex64, u32), PAdicError> {
    let (g, digits) = oscillator_weil_index(a)?;
    let g = match convention {
        Convention::Direct => g,
        Convention::Conjugate => g.conj(),
    };
    Ok((g, digits))
}

fn sum_over_units(
    ctx: &PAdicContext,
    convention: Convention,
    m: u32,
    level: u32,
) -> Result<Complex64, PAdicError> {
    if m < 1 {
        return Err(PAdicError::InvalidExponent(m));
    }
    if level < m {
        return Err(PAdicError::InvalidExponent(level));
    }
    let p = ctx.p();
    let modulus = pow_u64(p, level);

    // gamma_psi(p^m w) reads only the first few digits of w. Tabulate it on
    // units mod p^d, where d is the number of digits the oscillator sum
    // actually consumed, and confirm d is uniform over the table.
    let d = {
        let probe = ctx.element(m as i32, 1)?;
        gamma_with(convention, &probe)?.1.max(1).min(level)
    };
    let pd = pow_u64(p, d);
    let mut gamma_inv = vec![Complex64::new(0.0, 0.0); pd as usize];
    for r in 1..pd {
        if r % p == 0 {
            continue;
        }
        let w = inv_mod(r, pd).expect("unit");
        let (g, used) = gamma_with(convention, &ctx.element(m as i32, w)?)?;
        if used > d {
            return Err(PAdicError::NonStabilization {
                valuation: m as i32,
                refinements: used,
            });
        }
        gamma_inv[r as usize] = g.inv();
    }

    let pm = pow_u64(p, m);
    let psi_table: Vec<Complex64> = (0..pm)
        .map(|r| psi_eval(&ctx.from_int(r as i64).shift(-(m as i32))))
        .collect::<Result<_, _>>()?;

    let mut acc = Complex64::new(0.0, 0.0);
    for u in 1..modulus {
        if u % p == 0 {
            continue;
        }
        acc += gamma_inv[(u % pd) as usize] * psi_table[(u % pm) as usize];
    }
    Ok(acc / modulus as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_of_one_is_one() {
        for p in [3u64, 5, 7, 11] {
            let ctx = PAdicContext::with_prime(p).unwrap();
            let wf = WeilFactor::calibrate(ctx, 1e-9).unwrap();
            assert!((wf.gamma(&ctx.one()).unwrap() - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn calibration_prefers_direct_sum() {
        // p = 3 mod 4: the two conventions differ and only one reproduces
        // q^{-1/2}; p = 1 mod 4: everything is real.
        let wf = WeilFactor::calibrate(PAdicContext::with_prime(7).unwrap(), 1e-9).unwrap();
        assert_eq!(wf.convention(), Convention::Direct);
        assert!(!wf.calibration().ambiguous);
        assert!((wf.calibration().conjugate[0] + 7f64.powf(-0.5)).abs() < 1e-9);
        let wf = WeilFactor::calibrate(PAdicContext::with_prime(5).unwrap(), 1e-9).unwrap();
        assert!(wf.calibration().ambiguous);
    }

    #[test]
    fn uniformizer_value_is_normalized_gauss_sum() {
        // gamma(p) = G(1, p) / sqrt(p), the classical quadratic Gauss sum.
        let ctx = PAdicContext::with_prime(7).unwrap();
        let wf = WeilFactor::calibrate(ctx, 1e-9).unwrap();
        let g = wf.gamma(&ctx.uniformizer()).unwrap();
        let expected = crate::padic::gauss_sum(7) / 7f64.sqrt();
        assert!((g - expected).norm() < 1e-12);
    }

    #[test]
    fn zero_rejected() {
        let ctx = PAdicContext::with_prime(3).unwrap();
        let wf = WeilFactor::calibrate(ctx, 1e-9).unwrap();
        assert_eq!(wf.gamma(&ctx.zero()), Err(PAdicError::ZeroInput));
        assert_eq!(wf.unit_integral(0), Err(PAdicError::InvalidExponent(0)));
    }

    #[test]
    fn unit_integrals_small() {
        let ctx = PAdicContext::with_prime(3).unwrap();
        let wf = WeilFactor::calibrate(ctx, 1e-9).unwrap();
        let j1 = wf.unit_integral(1).unwrap();
        assert!((j1 - 3f64.powf(-0.5)).norm() < 1e-9);
        let ctx = PAdicContext::with_prime(5).unwrap();
        let wf = WeilFactor::calibrate(ctx, 1e-9).unwrap();
        assert!(wf.unit_integral(2).unwrap().norm() < 1e-9);
    }
}

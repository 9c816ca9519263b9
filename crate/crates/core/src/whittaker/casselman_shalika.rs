//! Unramified Whittaker function values at torus elements of valuation `k`,
//! with the `|a|` powers stripped off (they are carried by `X^k`).

use crate::algebra::{LaurentPoly, Var};

use super::WhittakerError;

/// Complete homogeneous symmetric polynomial `p_k(a1, a2) = sum_{i+j=k} a1^i a2^j`.
pub fn hcp(k: u32) -> LaurentPoly {
    let k = k as i32;
    (0..=k).fold(LaurentPoly::zero(), |acc, i| {
        &acc + &LaurentPoly::mono([0, i, k - i])
    })
}

/// `GL2` value `W(diag(a, 1)) / |a|^{1/2}` for `ord(a) = k >= 0`.
///
/// Equal to `p_k(a1, a2)`; the Weyl-character quotient is never divided out.
pub fn cs_gl2_value(k: i64) -> Result<LaurentPoly, WhittakerError> {
    let k = nonneg(k)?;
    Ok(hcp(k))
}

/// `SL2` value `W(diag(a, a^-1)) / |a|` for `ord(a) = k >= 0`, namely
/// `sum_{j=-k}^{k} A^j`.
pub fn cs_sl2_value(k: i64) -> Result<LaurentPoly, WhittakerError> {
    let k = nonneg(k)? as i32;
    Ok((-k..=k).fold(LaurentPoly::zero(), |acc, j| {
        &acc + &LaurentPoly::var_pow(Var::A, j)
    }))
}

/// Coefficient of `J_1(a)` at valuation `k`.
pub fn j1_coeff(k: u32) -> LaurentPoly {
    hcp(k)
}

/// Coefficient of `J_2(a)` at valuation `k >= 1`: `p_{k-1}(a1, a2) a1 a2`.
///
/// The accompanying extra power of `X` is the caller's business. Valuation
/// zero contributes nothing and is rejected here so the caller has to say so.
pub fn j2_coeff(k: i64) -> Result<LaurentPoly, WhittakerError> {
    if k <= 0 {
        return Err(WhittakerError::NonPositiveValuation(k));
    }
    Ok(hcp(k as u32 - 1).shift([0, 1, 1]))
}

fn nonneg(k: i64) -> Result<u32, WhittakerError> {
    u32::try_from(k).map_err(|_| WhittakerError::NegativeValuation(k))
}

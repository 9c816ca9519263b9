//! Casselman-Shalika values, the series form of the unramified zeta integral
//! for `SL2 x GL2`, the relevant L-factors, and the checks relating them.
//!
//! Throughout, `A`, `a1`, `a2` are the Satake parameters and
//! `X = q^{-(s+1/2)}`. The absolute-value prefactors of the Whittaker values
//! are absorbed into powers of `X`, so everything here lives in
//! `Q[A^±1, a1^±1, a2^±1][X]`.

mod casselman_shalika;
mod lfactors;
mod zeta;

pub use casselman_shalika::{cs_gl2_value, cs_sl2_value, hcp, j1_coeff, j2_coeff};
pub use lfactors::{
    a_trinomial, closed_form_denominator, closed_form_first, closed_form_first_numerator,
    closed_form_second, closed_form_second_numerator, combined_numerator, factored_numerator,
    l_ratio, l_sym2_inverse, l_tensor_inverse,
};
pub use zeta::{
    check_factorization, factorization_mismatch, first_partial_fraction_sides, first_sum_series,
    integral_series, second_partial_fraction_sides, second_sum_series, verify_closed_forms,
    verify_closed_forms_separately, verify_factorization, verify_main_identity,
    verify_main_identity_all_orders, verify_negative_controls, verify_partial_fractions,
    verify_series_identity, verify_structural, IdentityReport, NegativeControlReport,
    PartialFractionReport, StructuralReport, UnramifiedDatum,
};

use thiserror::Error;

/// Default truncation order for the identity checks.
pub const DEFAULT_ORDER: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WhittakerError {
    #[error("valuation {0} is negative; the Whittaker function vanishes there")]
    NegativeValuation(i64),
    #[error("valuation {0} is not positive; J_2 only contributes for ord(a) >= 1")]
    NonPositiveValuation(i64),
    #[error("Satake parameters must be nonzero")]
    ZeroSatakeParameter,
}

//! Finite-precision `p`-adic numerics for odd `p`: the character `psi`,
//! Hilbert symbols, the Weil factor, unit integrals and a finite Schwartz
//! model of the Weil representation.

mod arith;
mod character;
mod element;
mod gamma_properties;
mod heisenberg;
mod hilbert;
mod matrix;
mod relations;
mod schwartz;
mod weil_factor;

use thiserror::Error;

pub use arith::is_prime;
pub use character::{gauss_sum, least_nonresidue, legendre, psi_eval, ComplexApprox};
pub use element::{PAdicContext, PAdicElement};
pub use gamma_properties::{
    verify_character_orthogonality, verify_gamma_properties, verify_psi_additivity,
    verify_unit_integral_stability, GammaPropertyReport, OrthogonalityReport, PsiAdditivityReport,
    StabilityReport,
};
pub use heisenberg::{
    mat4_mul, random_element, random_heisenberg, verify_heisenberg_group, HeisenbergElement,
    HeisenbergReport,
};
pub use hilbert::{hilbert_symbol, hilbert_symbol_bruteforce};
pub use matrix::{verify_matrix_identity, MatrixIdentityReport, MatrixSample};
pub use relations::{verify_weil_relations, TorusSign, WeilRelationsReport};
pub use schwartz::{
    weil_action, weil_action_inverse, weil_action_signed, SchwartzGridFn, WeilElement,
};
pub use weil_factor::{
    oscillator_weil_index, Calibration, Convention, WeilFactor, MAX_REFINEMENTS,
    STABILIZATION_TOLERANCE,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PAdicError {
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("precision {precision} outside 2..={max}")]
    InvalidPrecision { precision: u32, max: u32 },
    #[error("grid parameters must be positive (reach {reach}, fineness {fineness})")]
    InvalidGrid { reach: u32, fineness: u32 },
    #[error("{value} is divisible by {p}")]
    NotAUnit { value: u64, p: u64 },
    #[error("zero is not allowed here")]
    ZeroInput,
    #[error("valuation {valuation} exceeds working precision {precision}")]
    InsufficientPrecision { valuation: i32, precision: u32 },
    #[error("valuation {valuation} lies outside the lattice of valuation >= {bound}")]
    OutOfLattice { valuation: i32, bound: i32 },
    #[error("oscillator sum for valuation {valuation} did not stabilize after {refinements} refinements")]
    NonStabilization { valuation: i32, refinements: u32 },
    #[error("neither convention reproduces q^(-1/2) for p = {p} (direct {direct}, conjugate {conjugate})")]
    CalibrationFailed { p: u64, direct: f64, conjugate: f64 },
    #[error("invalid exponent {0}")]
    InvalidExponent(u32),
    #[error("result needs a p^-{reach} O / p^{fineness} O grid, have p^-{have_reach} O / p^{have_fineness} O")]
    GridOverflow {
        reach: i32,
        fineness: i32,
        have_reach: u32,
        have_fineness: u32,
    },
    #[error("operands live on different contexts")]
    ContextMismatch,
}

//! Series form of the unramified local zeta integral and the checks that tie
//! it to the L-factor ratio.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{
    rf_expand, series_eq, LaurentPoly, PolyInX, RationalFunctionInX, SeriesComparison,
    TruncatedSeries, Var,
};

use super::casselman_shalika::{cs_sl2_value, hcp, j1_coeff, j2_coeff};
use super::lfactors::{
    a_trinomial, closed_form_first, closed_form_first_numerator, closed_form_second,
    closed_form_second_numerator, combined_numerator, factored_numerator, l_ratio, l_sym2_inverse,
    l_tensor_inverse,
};
use super::WhittakerError;

fn sl2(k: usize) -> LaurentPoly {
    cs_sl2_value(k as i64).expect("nonnegative valuation")
}

/// `sum_{k=0}^{N} W_pi(k) J_1(k) X^k`.
pub fn first_sum_series(order: usize) -> TruncatedSeries {
    let coeffs = (0..=order).map(|k| &sl2(k) * &j1_coeff(k as u32)).collect();
    TruncatedSeries::from_coeffs(coeffs, order)
}

/// `sum_{k>=1} W_pi(k) J_2(k) X^{k+1}` truncated after `X^N`.
pub fn second_sum_series(order: usize) -> TruncatedSeries {
    let mut coeffs = vec![LaurentPoly::zero(); order + 1];
    for k in 1..order {
        let j2 = j2_coeff(k as i64).expect("positive valuation");
        coeffs[k + 1] = &sl2(k) * &j2;
    }
    TruncatedSeries::from_coeffs(coeffs, order)
}

/// The local integral as a series in `X`, assembled term by term.
pub fn integral_series(order: usize) -> TruncatedSeries {
    &first_sum_series(order) + &second_sum_series(order)
}

/// Result of comparing the integral series with a rational function.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub order: usize,
    pub comparison: SeriesComparison,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.comparison.is_equal()
    }
}

/// Compare `integral_series(N)` with the expansion of `f`.
pub fn verify_series_identity(f: &RationalFunctionInX, order: usize) -> IdentityReport {
    let comparison = series_eq(&integral_series(order), &rf_expand(f, order))
        .expect("both series built at the same order");
    IdentityReport { order, comparison }
}

/// The main identity: integral series against the L-factor ratio.
pub fn verify_main_identity(order: usize) -> IdentityReport {
    verify_series_identity(&l_ratio(), order)
}

/// Check the identity at every order `0..=max_order` from one expansion of
/// each side; a lower-order expansion is the prefix of a higher one.
pub fn verify_main_identity_all_orders(max_order: usize) -> Vec<IdentityReport> {
    let lhs = integral_series(max_order);
    let rhs = rf_expand(&l_ratio(), max_order);
    (0..=max_order)
        .map(|n| IdentityReport {
            order: n,
            comparison: series_eq(&lhs.truncate(n), &rhs.truncate(n)).expect("same order"),
        })
        .collect()
}

/// Sum of the two closed forms compared with the integral series.
pub fn verify_closed_forms(order: usize) -> IdentityReport {
    verify_series_identity(&(&closed_form_first() + &closed_form_second()), order)
}

/// Each closed form compared against its own term-by-term sum.
pub fn verify_closed_forms_separately(order: usize) -> (SeriesComparison, SeriesComparison) {
    let first = series_eq(
        &first_sum_series(order),
        &rf_expand(&closed_form_first(), order),
    )
    .expect("same order");
    let second = series_eq(
        &second_sum_series(order),
        &rf_expand(&closed_form_second(), order),
    )
    .expect("same order");
    (first, second)
}

/// Whether `lhs` equals `(1 - a1 a2 X^2)(1 + a1 X)(1 + a2 X)`.
pub fn check_factorization(lhs: &PolyInX) -> bool {
    lhs == &factored_numerator()
}

/// The factorization of the combined numerator.
pub fn verify_factorization() -> bool {
    check_factorization(&combined_numerator())
}

/// Lowest degree where `lhs` differs from `(1 - a1 a2 X^2)(1 + a1 X)(1 + a2 X)`.
pub fn factorization_mismatch(lhs: &PolyInX) -> Option<usize> {
    let rhs = factored_numerator();
    let top = lhs.coeffs().len().max(rhs.coeffs().len());
    (0..top).find(|&k| lhs.coeff(k) != rhs.coeff(k))
}

/// Expected and observed first mismatches of the two deliberately broken
/// inputs.
#[derive(Clone, Debug, Serialize)]
pub struct NegativeControlReport {
    pub order: usize,
    pub perturbed_degree: usize,
    pub perturbed_mismatch: Option<usize>,
    pub flipped_degree: usize,
    pub flipped_mismatch: Option<usize>,
}

impl NegativeControlReport {
    /// Both controls fail, each exactly where the defect was planted.
    pub fn passed(&self) -> bool {
        self.perturbed_mismatch == Some(self.perturbed_degree)
            && self.flipped_mismatch == Some(self.flipped_degree)
    }
}

/// Negates the `X^2` coefficient of the symmetric-square factor and the `X^3`
/// coefficient of the combined numerator. With unit constant terms on both
/// sides, each change first shows up at its own degree.
pub fn verify_negative_controls(order: usize) -> NegativeControlReport {
    let perturbed_degree = 2;
    let flipped_degree = 3;
    let broken = RationalFunctionInX::new(
        l_sym2_inverse().flip_sign_at(perturbed_degree),
        l_tensor_inverse(),
    )
    .expect("normalized denominator");
    let perturbed_mismatch = verify_series_identity(&broken, order)
        .comparison
        .mismatch
        .map(|m| m.degree);
    let flipped_mismatch =
        factorization_mismatch(&combined_numerator().flip_sign_at(flipped_degree));
    NegativeControlReport {
        order,
        perturbed_degree,
        perturbed_mismatch,
        flipped_degree,
        flipped_mismatch,
    }
}

/// The two partial-fraction recombinations, each checked once in Laurent form
/// and once after clearing the `A` denominator.
#[derive(Clone, Debug, Serialize)]
pub struct PartialFractionReport {
    pub first_laurent: bool,
    pub first_cleared: bool,
    pub second_laurent: bool,
    pub second_cleared: bool,
}

impl PartialFractionReport {
    pub fn passed(&self) -> bool {
        self.first_laurent && self.first_cleared && self.second_laurent && self.second_cleared
    }
}

fn poly_is_polynomial_in_a(p: &PolyInX) -> bool {
    p.coeffs()
        .iter()
        .all(|c| c.degree_range(Var::A).is_none_or(|(lo, _)| lo >= 0))
}

fn a_minus_one() -> PolyInX {
    PolyInX::constant(&LaurentPoly::var(Var::A) - &LaurentPoly::one())
}

fn c(exps: [i32; 3]) -> PolyInX {
    PolyInX::constant(LaurentPoly::mono(exps))
}

fn lin(exps: [i32; 3]) -> PolyInX {
    PolyInX::one_minus(LaurentPoly::mono(exps), 1)
}

/// Both sides of the first recombination:
/// `A (1 - A^-1 a1 X)(1 - A^-1 a2 X) - (1 - A a1 X)(1 - A a2 X)` and
/// `(A - 1) [1 + (a1 + a2) X - (A + 1 + A^-1) a1 a2 X^2]`.
pub fn first_partial_fraction_sides() -> (PolyInX, PolyInX) {
    let lhs = &(&c([1, 0, 0]) * &(&lin([-1, 1, 0]) * &lin([-1, 0, 1])))
        - &(&lin([1, 1, 0]) * &lin([1, 0, 1]));
    let rhs = &a_minus_one() * &closed_form_first_numerator();
    (lhs, rhs)
}

/// Both sides of the second recombination:
/// `a1 a2 A^3 X^2 (1 - A^-1 a1 X)(1 - A^-1 a2 X) - a1 a2 X^2 (1 - A a1 X)(1 - A a2 X)`
/// and `A (A - 1) [second numerator]`.
pub fn second_partial_fraction_sides() -> (PolyInX, PolyInX) {
    let x2 = PolyInX::term(LaurentPoly::one(), 2);
    let lhs = &(&(&c([3, 1, 1]) * &x2) * &(&lin([-1, 1, 0]) * &lin([-1, 0, 1])))
        - &(&(&c([0, 1, 1]) * &x2) * &(&lin([1, 1, 0]) * &lin([1, 0, 1])));
    let rhs = &(&c([1, 0, 0]) * &a_minus_one()) * &closed_form_second_numerator();
    (lhs, rhs)
}

pub fn verify_partial_fractions() -> PartialFractionReport {
    let a = c([1, 0, 0]);
    let (l1, r1) = first_partial_fraction_sides();
    let (l1c, r1c) = (&a * &l1, &a * &r1);
    let (l2, r2) = second_partial_fraction_sides();
    let (l2c, r2c) = (&a * &l2, &a * &r2);
    PartialFractionReport {
        first_laurent: l1 == r1,
        first_cleared: l1c == r1c && poly_is_polynomial_in_a(&l1c) && poly_is_polynomial_in_a(&r1c),
        second_laurent: l2 == r2,
        second_cleared: l2c == r2c
            && poly_is_polynomial_in_a(&l2c)
            && poly_is_polynomial_in_a(&r2c),
    }
}

/// The structural identities satisfied by the Casselman-Shalika values.
#[derive(Clone, Debug, Serialize)]
pub struct StructuralReport {
    pub hcp_recursion: bool,
    pub sl2_step: bool,
    pub chebyshev_recursion: bool,
    pub gl2_cleared: bool,
    pub sl2_cleared: bool,
    pub generating_function: bool,
    pub symmetries: bool,
    pub first_failure: Option<String>,
}

impl StructuralReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Recursions for `k < max_recursion`, cleared identities for `k <= max_cleared`,
/// generating function and symmetries through `order`.
pub fn verify_structural(max_recursion: u32, max_cleared: u32, order: usize) -> StructuralReport {
    let mut failures: Vec<String> = Vec::new();
    let a = LaurentPoly::var(Var::A);
    let a_inv = LaurentPoly::var_pow(Var::A, -1);
    let e1 = &LaurentPoly::var(Var::A1) + &LaurentPoly::var(Var::A2);
    let e2 = LaurentPoly::mono([0, 1, 1]);

    let mut hcp_rec = true;
    let mut step = true;
    let mut cheb = true;
    let sym_a = |k: i32| &LaurentPoly::var_pow(Var::A, k) + &LaurentPoly::var_pow(Var::A, -k);
    for k in 1..=max_recursion {
        let lhs = hcp(k + 1);
        let rhs = &(&e1 * &hcp(k)) - &(&e2 * &hcp(k - 1));
        if lhs != rhs {
            hcp_rec = false;
            failures.push(format!("hcp recursion at k={k}"));
        }
        let diff = &sl2(k as usize) - &sl2(k as usize - 1);
        if diff != sym_a(k as i32) {
            step = false;
            failures.push(format!("sl2 step at k={k}"));
        }
        let next = &(&(&a + &a_inv) * &sym_a(k as i32)) - &sym_a(k as i32 - 1);
        if next != sym_a(k as i32 + 1) {
            cheb = false;
            failures.push(format!("A^k + A^-k recursion at k={k}"));
        }
    }

    let mut gl2_ok = true;
    let mut sl2_ok = true;
    for k in 0..=max_cleared {
        let ki = k as i32;
        let lhs = &(&LaurentPoly::var(Var::A1) - &LaurentPoly::var(Var::A2)) * &hcp(k);
        let rhs = &LaurentPoly::var_pow(Var::A1, ki + 1) - &LaurentPoly::var_pow(Var::A2, ki + 1);
        if lhs != rhs {
            gl2_ok = false;
            failures.push(format!("gl2 cleared identity at k={k}"));
        }
        let lhs = &(&a - &LaurentPoly::one()) * &sl2(k as usize);
        let rhs = &LaurentPoly::var_pow(Var::A, ki + 1) - &LaurentPoly::var_pow(Var::A, -ki);
        if lhs != rhs {
            sl2_ok = false;
            failures.push(format!("sl2 cleared identity at k={k}"));
        }
    }

    let gf_den = &PolyInX::one_minus(LaurentPoly::var(Var::A1), 1)
        * &PolyInX::one_minus(LaurentPoly::var(Var::A2), 1);
    let gf = rf_expand(
        &RationalFunctionInX::new(PolyInX::one(), gf_den).expect("normalized"),
        order,
    );
    let generating = (0..=order).all(|k| gf.coeff(k) == &hcp(k as u32));
    if !generating {
        failures.push("generating function".into());
    }

    let series = integral_series(order);
    let mut symmetric = series
        .coeffs()
        .iter()
        .all(|c| c.swap_a1_a2() == *c && c.invert_a() == *c);
    symmetric &= (0..=order as u32).all(|k| {
        let s = sl2(k as usize);
        hcp(k).swap_a1_a2() == hcp(k) && s.invert_a() == s
    });
    let ratio = l_ratio();
    symmetric &= ratio.den().swap_a1_a2() == *ratio.den() && ratio.den().invert_a() == *ratio.den();
    symmetric &= ratio.num().swap_a1_a2() == *ratio.num();
    symmetric &= a_trinomial().invert_a() == a_trinomial();
    if !symmetric {
        failures.push("a1 <-> a2 / A <-> A^-1 symmetry".into());
    }

    StructuralReport {
        hcp_recursion: hcp_rec,
        sl2_step: step,
        chebyshev_recursion: cheb,
        gl2_cleared: gl2_ok,
        sl2_cleared: sl2_ok,
        generating_function: generating,
        symmetries: symmetric,
        first_failure: failures.into_iter().next(),
    }
}

/// A numeric specialization of the Satake parameters `(A, a1, a2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnramifiedDatum {
    values: [BigRational; 3],
}

impl UnramifiedDatum {
    pub fn new(a: BigRational, a1: BigRational, a2: BigRational) -> Result<Self, WhittakerError> {
        if a.is_zero() || a1.is_zero() || a2.is_zero() {
            return Err(WhittakerError::ZeroSatakeParameter);
        }
        Ok(Self {
            values: [a, a1, a2],
        })
    }

    pub fn values(&self) -> &[BigRational; 3] {
        &self.values
    }

    pub fn specialize(&self, p: &LaurentPoly) -> BigRational {
        p.evaluate(&self.values)
    }

    pub fn specialize_series(&self, s: &TruncatedSeries) -> Vec<BigRational> {
        s.coeffs().iter().map(|c| self.specialize(c)).collect()
    }

    /// Series coefficients of the integral computed directly in `Q`, without
    /// building any Laurent polynomial.
    pub fn scalar_integral_series(&self, order: usize) -> Vec<BigRational> {
        let [a, a1, a2] = &self.values;
        let pow = |b: &BigRational, e: i32| -> BigRational { num_traits::pow::Pow::pow(b, e) };
        let sl2 = |k: i32| (-k..=k).fold(BigRational::zero(), |acc, j| acc + pow(a, j));
        let gl2 = |k: i32| {
            (0..=k).fold(BigRational::zero(), |acc, i| {
                acc + pow(a1, i) * pow(a2, k - i)
            })
        };
        let mut out = vec![BigRational::zero(); order + 1];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot += sl2(k as i32) * gl2(k as i32);
        }
        for k in 1..order {
            let ki = k as i32;
            out[k + 1] += sl2(ki) * gl2(ki - 1) * a1 * a2;
        }
        out
    }
}

impl Default for UnramifiedDatum {
    fn default() -> Self {
        Self {
            values: [BigRational::one(), BigRational::one(), BigRational::one()],
        }
    }
}

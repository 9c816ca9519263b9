//! Inverse local L-factors as polynomials in `X = q^{-(s+1/2)}`, and the
//! closed forms of the two sums in the series expansion of the zeta integral.

use crate::algebra::{LaurentPoly, PolyInX, RationalFunctionInX, Var};

fn lin(exps: [i32; 3]) -> PolyInX {
    PolyInX::one_minus(LaurentPoly::mono(exps), 1)
}

/// `(1 - A a1 X)(1 - A a2 X)(1 - a1 X)(1 - a2 X)(1 - A^-1 a1 X)(1 - A^-1 a2 X)`,
/// the inverse of the tensor product factor at `s + 1/2`.
pub fn l_tensor_inverse() -> PolyInX {
    let mut factors = Vec::with_capacity(6);
    for e_a in [1, 0, -1] {
        factors.push(lin([e_a, 1, 0]));
        factors.push(lin([e_a, 0, 1]));
    }
    PolyInX::product(&factors)
}

/// `(1 - a1^2 X^2)(1 - a1 a2 X^2)(1 - a2^2 X^2)`, the inverse of the symmetric
/// square factor at `2s + 1`.
pub fn l_sym2_inverse() -> PolyInX {
    let factors: Vec<PolyInX> = [[0, 2, 0], [0, 1, 1], [0, 0, 2]]
        .into_iter()
        .map(|e| PolyInX::one_minus(LaurentPoly::mono(e), 2))
        .collect();
    PolyInX::product(&factors)
}

/// `L(pi x tau, s + 1/2) / L(tau, Sym^2, 2s + 1)`.
pub fn l_ratio() -> RationalFunctionInX {
    RationalFunctionInX::new(l_sym2_inverse(), l_tensor_inverse())
        .expect("L-factor denominators are normalized")
}

/// `D = (1 - A a1 X)(1 - A a2 X)(1 - A^-1 a1 X)(1 - A^-1 a2 X)`.
pub fn closed_form_denominator() -> PolyInX {
    PolyInX::product(&[
        lin([1, 1, 0]),
        lin([1, 0, 1]),
        lin([-1, 1, 0]),
        lin([-1, 0, 1]),
    ])
}

/// `A + 1 + A^-1`, the Laurent form of `(A^2 + A + 1) / A`.
pub fn a_trinomial() -> LaurentPoly {
    [-1, 0, 1].into_iter().fold(LaurentPoly::zero(), |acc, e| {
        &acc + &LaurentPoly::var_pow(Var::A, e)
    })
}

fn a1a2() -> LaurentPoly {
    LaurentPoly::mono([0, 1, 1])
}

/// Numerator `1 + (a1 + a2) X - (A + 1 + A^-1) a1 a2 X^2` of the first sum.
pub fn closed_form_first_numerator() -> PolyInX {
    PolyInX::from_coeffs(vec![
        LaurentPoly::one(),
        &LaurentPoly::var(Var::A1) + &LaurentPoly::var(Var::A2),
        -&(&a_trinomial() * &a1a2()),
    ])
}

/// Numerator `(A + 1 + A^-1) a1 a2 X^2 - a1 a2 (a1 + a2) X^3 - a1^2 a2^2 X^4`
/// of the second sum.
pub fn closed_form_second_numerator() -> PolyInX {
    let s = &LaurentPoly::var(Var::A1) + &LaurentPoly::var(Var::A2);
    PolyInX::from_coeffs(vec![
        LaurentPoly::zero(),
        LaurentPoly::zero(),
        &a_trinomial() * &a1a2(),
        -&(&a1a2() * &s),
        -&a1a2().pow(2),
    ])
}

pub fn closed_form_first() -> RationalFunctionInX {
    RationalFunctionInX::new(closed_form_first_numerator(), closed_form_denominator())
        .expect("normalized denominator")
}

pub fn closed_form_second() -> RationalFunctionInX {
    RationalFunctionInX::new(closed_form_second_numerator(), closed_form_denominator())
        .expect("normalized denominator")
}

/// `1 + (a1 + a2) X - a1 a2 (a1 + a2) X^3 - a1^2 a2^2 X^4`, the combined
/// numerator before factorization.
pub fn combined_numerator() -> PolyInX {
    &closed_form_first_numerator() + &closed_form_second_numerator()
}

/// `(1 - a1 a2 X^2)(1 + a1 X)(1 + a2 X)`.
pub fn factored_numerator() -> PolyInX {
    let plus = |v: Var| PolyInX::from_coeffs(vec![LaurentPoly::one(), LaurentPoly::var(v)]);
    PolyInX::product(&[PolyInX::one_minus(a1a2(), 2), plus(Var::A1), plus(Var::A2)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn tensor_factor_shape() {
        let p = l_tensor_inverse();
        assert_eq!(p.degree(), Some(6));
        assert!(p.coeff(0).is_one());
        assert_eq!(p.swap_a1_a2(), p);
        assert_eq!(p.invert_a(), p);
        let x1 = -&(&a_trinomial() * &(&LaurentPoly::var(Var::A1) + &LaurentPoly::var(Var::A2)));
        assert_eq!(p.coeff(1), x1);
    }

    #[test]
    fn tensor_factor_at_trivial_parameters_is_sixth_power() {
        let p = l_tensor_inverse();
        // (1 - X)^6 = 1 - 6X + 15X^2 - 20X^3 + 15X^4 - 6X^5 + X^6
        let binom = [1, -6, 15, -20, 15, -6, 1].map(q).to_vec();
        assert_eq!(p.evaluate_coeffs(&[q(1), q(1), q(1)]), binom);
    }

    #[test]
    fn sym2_factor_shape() {
        let p = l_sym2_inverse();
        assert_eq!(p.degree(), Some(6));
        assert!(p.coeff(0).is_one());
        for k in [1, 3, 5] {
            assert!(p.coeff(k).is_zero());
        }
        let x2 = -&(&(&LaurentPoly::mono([0, 2, 0]) + &LaurentPoly::mono([0, 1, 1]))
            + &LaurentPoly::mono([0, 0, 2]));
        assert_eq!(p.coeff(2), x2);
        assert_eq!(p.swap_a1_a2(), p);
    }

    #[test]
    fn ratio_basics() {
        let r = l_ratio();
        assert!(r.at_zero().is_one());
        let spec = r.partial_evaluate(&[(Var::A1, q(0)), (Var::A2, q(0))]);
        assert_eq!(spec.num(), &PolyInX::one());
        assert_eq!(spec.den(), &PolyInX::one());
    }

    #[test]
    fn first_closed_form_degenerates_to_one() {
        let f = closed_form_first().partial_evaluate(&[(Var::A1, q(0)), (Var::A2, q(0))]);
        assert_eq!(f.num(), &PolyInX::one());
        assert_eq!(f.den(), &PolyInX::one());
    }

    #[test]
    fn factorization_at_two_and_three() {
        let vals = [q(1), q(2), q(3)];
        let expected = [1, 5, 0, -30, -36].map(q).to_vec();
        assert_eq!(combined_numerator().evaluate_coeffs(&vals), expected);
        assert_eq!(factored_numerator().evaluate_coeffs(&vals), expected);
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::{LaurentPoly, Var};
use super::AlgebraError;

/// Polynomial in `X` with [`LaurentPoly`] coefficients.
///
/// Trailing zero coefficients are trimmed, so the zero polynomial has an empty
/// coefficient list.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PolyInX {
    coeffs: Vec<LaurentPoly>,
}

impl PolyInX {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(LaurentPoly::one())
    }

    pub fn constant(c: LaurentPoly) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<LaurentPoly>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    /// `c * X^d`.
    pub fn term(c: LaurentPoly, d: usize) -> Self {
        let mut coeffs = vec![LaurentPoly::zero(); d + 1];
        coeffs[d] = c;
        Self::from_coeffs(coeffs)
    }

    /// The factor `1 - c * X^d`.
    pub fn one_minus(c: LaurentPoly, d: usize) -> Self {
        &Self::one() - &Self::term(c, d)
    }

    /// Product of a list of factors.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a PolyInX>) -> Self {
        factors.into_iter().fold(Self::one(), |acc, f| &acc * f)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(LaurentPoly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> LaurentPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn map_coeffs(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn swap_a1_a2(&self) -> Self {
        self.map_coeffs(LaurentPoly::swap_a1_a2)
    }

    pub fn invert_a(&self) -> Self {
        self.map_coeffs(LaurentPoly::invert_a)
    }

    pub fn partial_evaluate(&self, assignments: &[(Var, BigRational)]) -> Self {
        self.map_coeffs(|c| c.partial_evaluate(assignments))
    }

    /// Coefficients after substituting exact values for `(A, a1, a2)`.
    pub fn evaluate_coeffs(&self, values: &[BigRational; 3]) -> Vec<BigRational> {
        self.coeffs.iter().map(|c| c.evaluate(values)).collect()
    }

    /// Negate the coefficient of `X^k`.
    pub fn flip_sign_at(&self, k: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        if let Some(c) = coeffs.get_mut(k) {
            *c = -&*c;
        }
        Self::from_coeffs(coeffs)
    }
}

impl<'a> Add<&'a PolyInX> for &'a PolyInX {
    type Output = PolyInX;
    fn add(self, rhs: &PolyInX) -> PolyInX {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyInX::from_coeffs((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a PolyInX> for &'a PolyInX {
    type Output = PolyInX;
    fn sub(self, rhs: &PolyInX) -> PolyInX {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyInX::from_coeffs((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl Neg for &PolyInX {
    type Output = PolyInX;
    fn neg(self) -> PolyInX {
        self.map_coeffs(|c| -c)
    }
}

impl<'a> Mul<&'a PolyInX> for &'a PolyInX {
    type Output = PolyInX;
    fn mul(self, rhs: &PolyInX) -> PolyInX {
        if self.is_zero() || rhs.is_zero() {
            return PolyInX::zero();
        }
        let mut out = vec![LaurentPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        PolyInX::from_coeffs(out)
    }
}

impl Add for PolyInX {
    type Output = PolyInX;
    fn add(self, rhs: PolyInX) -> PolyInX {
        &self + &rhs
    }
}

impl Sub for PolyInX {
    type Output = PolyInX;
    fn sub(self, rhs: PolyInX) -> PolyInX {
        &self - &rhs
    }
}

impl Mul for PolyInX {
    type Output = PolyInX;
    fn mul(self, rhs: PolyInX) -> PolyInX {
        &self * &rhs
    }
}

impl Neg for PolyInX {
    type Output = PolyInX;
    fn neg(self) -> PolyInX {
        -&self
    }
}

impl Zero for PolyInX {
    fn zero() -> Self {
        PolyInX::zero()
    }
    fn is_zero(&self) -> bool {
        PolyInX::is_zero(self)
    }
}

impl One for PolyInX {
    fn one() -> Self {
        PolyInX::one()
    }
}

impl fmt::Display for PolyInX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c}) X^{k}")?;
        }
        Ok(())
    }
}

/// Quotient `num / den` of polynomials in `X` whose denominator has constant
/// term exactly one, so the power series expansion in `X` always exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunctionInX {
    num: PolyInX,
    den: PolyInX,
}

impl RationalFunctionInX {
    pub fn new(num: PolyInX, den: PolyInX) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        let c0 = den.coeff(0);
        if !c0.is_one() {
            return Err(AlgebraError::DenominatorNotNormalized {
                constant_term: c0.to_string(),
            });
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(p: PolyInX) -> Self {
        Self {
            num: p,
            den: PolyInX::one(),
        }
    }

    pub fn num(&self) -> &PolyInX {
        &self.num
    }

    pub fn den(&self) -> &PolyInX {
        &self.den
    }

    /// Value at `X = 0`.
    pub fn at_zero(&self) -> LaurentPoly {
        self.num.coeff(0)
    }

    pub fn partial_evaluate(&self, assignments: &[(Var, BigRational)]) -> Self {
        Self {
            num: self.num.partial_evaluate(assignments),
            den: self.den.partial_evaluate(assignments),
        }
    }
}

impl<'a> Add<&'a RationalFunctionInX> for &'a RationalFunctionInX {
    type Output = RationalFunctionInX;
    fn add(self, rhs: &RationalFunctionInX) -> RationalFunctionInX {
        if self.den == rhs.den {
            return RationalFunctionInX {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            };
        }
        // Product of two denominators with constant term one keeps that property.
        RationalFunctionInX {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl<'a> Mul<&'a RationalFunctionInX> for &'a RationalFunctionInX {
    type Output = RationalFunctionInX;
    fn mul(self, rhs: &RationalFunctionInX) -> RationalFunctionInX {
        RationalFunctionInX {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x_poly(c: LaurentPoly) -> PolyInX {
        PolyInX::from_coeffs(vec![LaurentPoly::one(), c])
    }

    fn a1() -> LaurentPoly {
        LaurentPoly::var(Var::A1)
    }
    fn a2() -> LaurentPoly {
        LaurentPoly::var(Var::A2)
    }

    #[test]
    fn product_of_linear_factors() {
        let p = &x_poly(a1()) * &x_poly(a2());
        let expected = PolyInX::from_coeffs(vec![LaurentPoly::one(), &a1() + &a2(), &a1() * &a2()]);
        assert_eq!(p, expected);
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn factorization_product_expands_as_displayed() {
        let a1a2 = &a1() * &a2();
        let lhs = PolyInX::product([
            &PolyInX::one_minus(a1a2.clone(), 2),
            &x_poly(a1()),
            &x_poly(a2()),
        ]);
        let expected = PolyInX::from_coeffs(vec![
            LaurentPoly::one(),
            &a1() + &a2(),
            LaurentPoly::zero(),
            -&(&a1a2 * &(&a1() + &a2())),
            -&(&a1a2 * &a1a2),
        ]);
        assert_eq!(lhs, expected);
    }

    #[test]
    fn multiplying_by_zero_gives_zero() {
        let p = x_poly(a1());
        assert!((&p * &PolyInX::zero()).is_zero());
        assert_eq!((&PolyInX::zero() * &p).degree(), None);
    }

    #[test]
    fn degree_is_additive() {
        let p = PolyInX::one_minus(a1(), 3);
        let q = PolyInX::one_minus(a2(), 2);
        assert_eq!((&p * &q).degree(), Some(5));
    }

    #[test]
    fn rational_function_rejects_bad_denominators() {
        let bad = PolyInX::from_coeffs(vec![LaurentPoly::zero(), LaurentPoly::one()]);
        assert!(matches!(
            RationalFunctionInX::new(PolyInX::one(), bad),
            Err(AlgebraError::DenominatorNotNormalized { .. })
        ));
        assert_eq!(
            RationalFunctionInX::new(PolyInX::one(), PolyInX::zero()),
            Err(AlgebraError::ZeroDenominator)
        );
        let two = PolyInX::constant(LaurentPoly::from_int(2));
        assert!(RationalFunctionInX::new(PolyInX::one(), two).is_err());
    }
}

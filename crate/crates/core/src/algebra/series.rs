use std::ops::{Add, Mul, Sub};

use serde::Serialize;

use super::laurent::LaurentPoly;
use super::poly::{PolyInX, RationalFunctionInX};
use super::AlgebraError;

/// Power series in `X` truncated after `X^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<LaurentPoly>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![LaurentPoly::zero(); order + 1],
        }
    }

    /// Pads or truncates `coeffs` to exactly `order + 1` entries.
    pub fn from_coeffs(mut coeffs: Vec<LaurentPoly>, order: usize) -> Self {
        coeffs.resize(order + 1, LaurentPoly::zero());
        Self { coeffs }
    }

    pub fn from_poly(p: &PolyInX, order: usize) -> Self {
        Self::from_coeffs(p.coeffs().iter().take(order + 1).cloned().collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &LaurentPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn check_orders(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.order() != other.order() {
            return Err(AlgebraError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_orders(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_orders(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_orders(other)?;
        let n = self.order();
        let mut out = vec![LaurentPoly::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Ok(Self { coeffs: out })
    }
}

impl<'a> Add<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    /// Panics on order mismatch; use [`TruncatedSeries::try_add`] otherwise.
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.try_add(rhs).expect("series orders differ")
    }
}

impl<'a> Sub<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.try_sub(rhs).expect("series orders differ")
    }
}

impl<'a> Mul<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.try_mul(rhs).expect("series orders differ")
    }
}

/// Expansion of `1 / (1 - c X)` through `X^order`.
pub fn geom_expand(c: &LaurentPoly, order: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut power = LaurentPoly::one();
    for _ in 0..=order {
        let next = &power * c;
        coeffs.push(power);
        power = next;
    }
    TruncatedSeries { coeffs }
}

/// Expansion of `num / den` through `X^order`.
///
/// Uses `c_n = num_n - sum_{i>=1} den_i c_{n-i}`, valid because `den_0 = 1`.
pub fn rf_expand(f: &RationalFunctionInX, order: usize) -> TruncatedSeries {
    let den = f.den().coeffs();
    let num = f.num();
    let mut coeffs: Vec<LaurentPoly> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut c = num.coeff(n);
        for (i, d) in den.iter().enumerate().skip(1).take(n) {
            if !d.is_zero() {
                c -= &(d * &coeffs[n - i]);
            }
        }
        coeffs.push(c);
    }
    TruncatedSeries { coeffs }
}

/// Checked form of [`rf_expand`] for denominators that have not been
/// validated by [`RationalFunctionInX::new`].
pub fn rf_expand_checked(
    num: &PolyInX,
    den: &PolyInX,
    order: usize,
) -> Result<TruncatedSeries, AlgebraError> {
    let f = RationalFunctionInX::new(num.clone(), den.clone())?;
    Ok(rf_expand(&f, order))
}

/// First disagreement between two series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub degree: usize,
    pub left: String,
    pub right: String,
}

/// Outcome of a coefficient-wise comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesComparison {
    pub order: usize,
    pub mismatch: Option<Mismatch>,
}

impl SeriesComparison {
    pub fn is_equal(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Exact coefficient-wise comparison, reporting the lowest mismatching degree.
pub fn series_eq(
    u: &TruncatedSeries,
    v: &TruncatedSeries,
) -> Result<SeriesComparison, AlgebraError> {
    u.check_orders(v)?;
    let mismatch = u
        .coeffs
        .iter()
        .zip(&v.coeffs)
        .position(|(a, b)| a != b)
        .map(|k| Mismatch {
            degree: k,
            left: u.coeffs[k].to_string(),
            right: v.coeffs[k].to_string(),
        });
    Ok(SeriesComparison {
        order: u.order(),
        mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Var;

    fn a1() -> LaurentPoly {
        LaurentPoly::var(Var::A1)
    }
    fn a2() -> LaurentPoly {
        LaurentPoly::var(Var::A2)
    }
    fn ints(v: &[i64]) -> Vec<LaurentPoly> {
        v.iter().map(|&c| LaurentPoly::from_int(c)).collect()
    }

    #[test]
    fn geometric_series_of_one() {
        let s = geom_expand(&LaurentPoly::one(), 3);
        assert_eq!(s, TruncatedSeries::from_coeffs(ints(&[1, 1, 1, 1]), 3));
    }

    #[test]
    fn geometric_series_of_monomial() {
        let c = &LaurentPoly::var(Var::A) * &a1();
        let s = geom_expand(&c, 2);
        assert_eq!(s.coeff(0), &LaurentPoly::one());
        assert_eq!(s.coeff(1), &c);
        assert_eq!(s.coeff(2), &LaurentPoly::mono([2, 2, 0]));
    }

    #[test]
    fn geometric_series_of_binomial() {
        let c = &a1() + &a2();
        let s = geom_expand(&c, 2);
        // (a1 + a2)^2 written out by hand.
        let square = &(&LaurentPoly::mono([0, 2, 0]) + &LaurentPoly::mono([0, 0, 2]))
            + &LaurentPoly::from_int(2).shift([0, 1, 1]);
        assert_eq!(s.coeff(2), &square);
    }

    #[test]
    fn inverse_square_of_one_minus_x() {
        let den = PolyInX::from_coeffs(ints(&[1, -2, 1]));
        let f = RationalFunctionInX::new(PolyInX::one(), den).unwrap();
        assert_eq!(
            rf_expand(&f, 2),
            TruncatedSeries::from_coeffs(ints(&[1, 2, 3]), 2)
        );
    }

    #[test]
    fn complete_homogeneous_generating_function() {
        let den = &PolyInX::one_minus(a1(), 1) * &PolyInX::one_minus(a2(), 1);
        let f = RationalFunctionInX::new(PolyInX::one(), den).unwrap();
        let s = rf_expand(&f, 3);
        let p3 = [[0, 3, 0], [0, 2, 1], [0, 1, 2], [0, 0, 3]]
            .into_iter()
            .fold(LaurentPoly::zero(), |acc, e| &acc + &LaurentPoly::mono(e));
        assert_eq!(s.coeff(3), &p3);
    }

    #[test]
    fn checked_expansion_rejects_vanishing_constant_term() {
        let den = PolyInX::from_coeffs(ints(&[0, 1]));
        assert!(matches!(
            rf_expand_checked(&PolyInX::one(), &den, 3),
            Err(AlgebraError::DenominatorNotNormalized { .. })
        ));
    }

    #[test]
    fn expansion_times_denominator_recovers_numerator() {
        let num = PolyInX::from_coeffs(vec![LaurentPoly::one(), a1(), LaurentPoly::zero(), a2()]);
        let den = &PolyInX::one_minus(&a1() * &a2(), 2) * &PolyInX::one_minus(a2(), 1);
        let f = RationalFunctionInX::new(num.clone(), den.clone()).unwrap();
        let n = 12;
        let prod = &rf_expand(&f, n) * &TruncatedSeries::from_poly(&den, n);
        assert_eq!(prod, TruncatedSeries::from_poly(&num, n));
    }

    #[test]
    fn comparison_reports_first_mismatch() {
        let u = geom_expand(&LaurentPoly::one(), 4);
        assert!(series_eq(&u, &u.clone()).unwrap().is_equal());
        let mut coeffs = u.coeffs().to_vec();
        coeffs[2] = LaurentPoly::from_int(5);
        coeffs[3] = LaurentPoly::from_int(7);
        let v = TruncatedSeries::from_coeffs(coeffs, 4);
        let cmp = series_eq(&u, &v).unwrap();
        let m = cmp.mismatch.unwrap();
        assert_eq!(m.degree, 2);
        assert_eq!(m.right, "5 * A^0 a1^0 a2^0");
    }

    #[test]
    fn comparison_rejects_order_mismatch() {
        let u = geom_expand(&LaurentPoly::one(), 4);
        let v = geom_expand(&LaurentPoly::one(), 3);
        assert_eq!(
            series_eq(&u, &v),
            Err(AlgebraError::OrderMismatch { left: 4, right: 3 })
        );
    }
}

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The three generators of the coefficient ring.
///
/// `A` carries the Satake parameter of the `SL2` side, `A1` and `A2` the two
/// Satake parameters of the `GL2` side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    A,
    A1,
    A2,
}

impl Var {
    fn slot(self) -> usize {
        match self {
            Var::A => 0,
            Var::A1 => 1,
            Var::A2 => 2,
        }
    }
}

/// Exponent triple `(e_A, e_a1, e_a2)`.
pub type Exponents = [i32; 3];

/// Exact Laurent polynomial in `A, a1, a2` with rational coefficients.
///
/// Terms are kept in a sorted map and zero coefficients are never stored, so
/// structural equality is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponents, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(c: BigRational, exps: Exponents) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { terms }
    }

    /// Monomial with coefficient one.
    pub fn mono(exps: Exponents) -> Self {
        Self::monomial(BigRational::one(), exps)
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        let mut exps = [0; 3];
        exps[v.slot()] = e;
        Self::mono(exps)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&[0, 0, 0]).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in exponent-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &Exponents) -> BigRational {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Constant term, i.e. the coefficient of `A^0 a1^0 a2^0`.
    pub fn constant_term(&self) -> BigRational {
        self.coeff(&[0, 0, 0])
    }

    fn add_term(&mut self, exps: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiply by the monomial `A^i a1^j a2^k`.
    pub fn shift(&self, exps: Exponents) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| ([e[0] + exps[0], e[1] + exps[1], e[2] + exps[2]], v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Apply an exponent substitution to every term.
    pub fn map_exponents(&self, f: impl Fn(Exponents) -> Exponents) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(f(*e), c.clone());
        }
        out
    }

    /// The image under `a1 <-> a2`.
    pub fn swap_a1_a2(&self) -> Self {
        self.map_exponents(|[a, b, c]| [a, c, b])
    }

    /// The image under `A <-> A^-1`.
    pub fn invert_a(&self) -> Self {
        self.map_exponents(|[a, b, c]| [-a, b, c])
    }

    /// Smallest and largest exponent of `v` over all terms.
    pub fn degree_range(&self, v: Var) -> Option<(i32, i32)> {
        let s = v.slot();
        let mut it = self.terms.keys().map(|e| e[s]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Evaluate at exact nonzero rational values of `(A, a1, a2)`.
    ///
    /// Panics if a value is zero and a negative exponent is present.
    pub fn evaluate(&self, values: &[BigRational; 3]) -> BigRational {
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &ei) in e.iter().enumerate() {
                t *= rational_pow(&values[i], ei);
            }
            total += t;
        }
        total
    }

    /// Substitute exact values for a subset of the variables.
    pub fn partial_evaluate(&self, assignments: &[(Var, BigRational)]) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut exps = *e;
            let mut coeff = c.clone();
            for (v, val) in assignments {
                let s = v.slot();
                coeff *= rational_pow(val, exps[s]);
                exps[s] = 0;
            }
            out.add_term(exps, coeff);
        }
        out
    }
}

pub(crate) fn rational_pow(base: &BigRational, e: i32) -> BigRational {
    if e == 0 {
        return BigRational::one();
    }
    assert!(
        !(base.is_zero() && e < 0),
        "negative power of zero in Laurent evaluation"
    );
    num_traits::pow::Pow::pow(base, e)
}

impl From<BigRational> for LaurentPoly {
    fn from(c: BigRational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

/// Renders as `coeff * A^i a1^j a2^k` terms joined by ` + `, in
/// exponent-lexicographic order; the zero polynomial renders as `0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{} * A^{} a1^{} a2^{}", c, e[0], e[1], e[2])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> LaurentPoly {
        LaurentPoly::var(Var::A)
    }
    fn a1() -> LaurentPoly {
        LaurentPoly::var(Var::A1)
    }
    fn a2() -> LaurentPoly {
        LaurentPoly::var(Var::A2)
    }

    #[test]
    fn inverse_monomials_cancel() {
        let p = &a() * &LaurentPoly::var_pow(Var::A, -1);
        assert_eq!(p, LaurentPoly::one());
        assert!(p.is_one());
    }

    #[test]
    fn difference_of_squares() {
        let lhs = &(&a1() + &a2()) * &(&a1() - &a2());
        let rhs = &a1().pow(2) - &a2().pow(2);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.num_terms(), 2);
    }

    #[test]
    fn telescoping_product_in_a() {
        // (A - 1)(A^2 + A + 1 + A^-1 + A^-2) = A^3 - A^-2
        let mut s = LaurentPoly::zero();
        for e in -2..=2 {
            s += &LaurentPoly::var_pow(Var::A, e);
        }
        let lhs = &(&a() - &LaurentPoly::one()) * &s;
        let expected = &LaurentPoly::var_pow(Var::A, 3) - &LaurentPoly::var_pow(Var::A, -2);
        assert_eq!(lhs, expected);
    }

    #[test]
    fn zero_terms_are_dropped() {
        let p = &a1() - &a1();
        assert!(p.is_zero());
        assert_eq!(p, LaurentPoly::zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn display_is_sorted_lexicographically() {
        let p = &(&a2() + &LaurentPoly::var_pow(Var::A, -1)) - &LaurentPoly::from_int(2);
        assert_eq!(
            p.to_string(),
            "1 * A^-1 a1^0 a2^0 + -2 * A^0 a1^0 a2^0 + 1 * A^0 a1^0 a2^1"
        );
    }

    #[test]
    fn evaluation_and_symmetries() {
        let p = &(&a() * &a1()) + &LaurentPoly::var_pow(Var::A2, -2);
        let vals = [
            BigRational::from_integer(2.into()),
            BigRational::from_integer(3.into()),
            BigRational::from_integer(4.into()),
        ];
        assert_eq!(p.evaluate(&vals), BigRational::new(97.into(), 16.into()));
        assert_eq!(p.swap_a1_a2().swap_a1_a2(), p);
        assert_eq!(
            p.invert_a(),
            &(&LaurentPoly::var_pow(Var::A, -1) * &a1()) + &LaurentPoly::var_pow(Var::A2, -2)
        );
        let partial = p.partial_evaluate(&[(Var::A, vals[0].clone())]);
        assert_eq!(
            partial,
            &(&a1() * &LaurentPoly::from_int(2)) + &LaurentPoly::var_pow(Var::A2, -2)
        );
    }

    #[test]
    fn pow_matches_repeated_product() {
        let base = &(&a() + &a1()) - &LaurentPoly::var_pow(Var::A2, -1);
        let mut acc = LaurentPoly::one();
        for n in 0..6 {
            assert_eq!(base.pow(n), acc);
            acc = &acc * &base;
        }
    }
}

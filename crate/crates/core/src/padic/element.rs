use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::arith::{inv_mod, is_prime, pow_u64};
use super::PAdicError;

/// Field `Q_p` for an odd prime `p`, at a fixed working precision.
///
/// `precision` is the number of `p`-adic digits carried by unit parts; `reach`
/// and `fineness` describe the Schwartz grid `p^-reach O / p^fineness O`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PAdicContext {
    p: u64,
    precision: u32,
    reach: u32,
    fineness: u32,
}

impl PAdicContext {
    /// Largest precision whose modulus fits comfortably in 62 bits.
    pub fn max_precision(p: u64) -> u32 {
        let mut k = 0;
        let mut m: u128 = 1;
        while m * (p as u128) < (1u128 << 62) {
            m *= p as u128;
            k += 1;
        }
        k
    }

    pub fn new(p: u64, precision: u32, reach: u32, fineness: u32) -> Result<Self, PAdicError> {
        if p < 3 || !is_prime(p) {
            return Err(PAdicError::InvalidPrime(p));
        }
        if precision < 2 || precision > Self::max_precision(p) {
            return Err(PAdicError::InvalidPrecision {
                precision,
                max: Self::max_precision(p),
            });
        }
        if reach < 1 || fineness < 1 {
            return Err(PAdicError::InvalidGrid { reach, fineness });
        }
        Ok(Self {
            p,
            precision,
            reach,
            fineness,
        })
    }

    /// Maximal precision with a `p^-2 O / p^2 O` grid.
    pub fn with_prime(p: u64) -> Result<Self, PAdicError> {
        if p < 3 || !is_prime(p) {
            return Err(PAdicError::InvalidPrime(p));
        }
        Self::new(p, Self::max_precision(p), 2, 2)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The residue field cardinality `q`, equal to `p` here.
    pub fn q(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn reach(&self) -> u32 {
        self.reach
    }

    pub fn fineness(&self) -> u32 {
        self.fineness
    }

    pub fn modulus(&self) -> u64 {
        pow_u64(self.p, self.precision)
    }

    pub fn zero(&self) -> PAdicElement {
        PAdicElement::zero(self.p, self.precision)
    }

    pub fn one(&self) -> PAdicElement {
        self.from_int(1)
    }

    /// The uniformizer `p`.
    pub fn uniformizer(&self) -> PAdicElement {
        self.from_int(self.p as i64)
    }

    pub fn from_int(&self, n: i64) -> PAdicElement {
        self.from_rational(n, 1).expect("nonzero denominator")
    }

    /// `num / den` as a `p`-adic number.
    pub fn from_rational(&self, num: i64, den: i64) -> Result<PAdicElement, PAdicError> {
        if den == 0 {
            return Err(PAdicError::ZeroInput);
        }
        if num == 0 {
            return Ok(self.zero());
        }
        let (vn, un) = split_i128(num as i128, self.p);
        let (vd, ud) = split_i128(den as i128, self.p);
        let m = self.modulus();
        let un = un.rem_euclid(m as i128) as u64;
        let ud = ud.rem_euclid(m as i128) as u64;
        let unit = mul_mod(un, inv_mod(ud, m).expect("unit"), m);
        Ok(PAdicElement {
            p: self.p,
            valuation: vn - vd,
            unit,
            prec: self.precision,
        })
    }

    /// `p^valuation * unit` with the unit reduced to the working precision.
    pub fn element(&self, valuation: i32, unit: u64) -> Result<PAdicElement, PAdicError> {
        if unit % self.p == 0 {
            return Err(PAdicError::NotAUnit {
                value: unit,
                p: self.p,
            });
        }
        Ok(PAdicElement {
            p: self.p,
            valuation,
            unit: unit % self.modulus(),
            prec: self.precision,
        })
    }
}

fn split_i128(mut n: i128, p: u64) -> (i32, i128) {
    let mut v = 0;
    while n % p as i128 == 0 {
        n /= p as i128;
        v += 1;
    }
    (v, n)
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// A `p`-adic number `p^valuation * unit` known to `prec` relative digits,
/// or exact zero.
///
/// Arithmetic tracks precision the usual capped-relative way: sums keep the
/// smaller absolute precision, products the smaller relative one. Equality
/// compares digits up to the common precision.
#[derive(Clone, Copy, Debug)]
pub struct PAdicElement {
    p: u64,
    valuation: i32,
    /// Zero encodes the zero element.
    unit: u64,
    prec: u32,
}

impl PAdicElement {
    pub(crate) fn zero(p: u64, prec: u32) -> Self {
        Self {
            p,
            valuation: 0,
            unit: 0,
            prec,
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.unit == 0
    }

    /// `None` for zero.
    pub fn valuation(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.valuation)
    }

    /// Unit part, meaningful modulo `p^precision()`.
    pub fn unit(&self) -> u64 {
        self.unit
    }

    /// Relative precision in digits.
    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Absolute precision: the element is known modulo `p^abs_precision`.
    pub fn abs_precision(&self) -> i64 {
        if self.is_zero() {
            self.prec as i64
        } else {
            self.valuation as i64 + self.prec as i64
        }
    }

    /// `|x| = p^-ord(x)`; zero for zero.
    pub fn norm(&self) -> f64 {
        match self.valuation() {
            None => 0.0,
            Some(v) => (self.p as f64).powi(-v),
        }
    }

    fn modulus(&self) -> u64 {
        pow_u64(self.p, self.prec)
    }

    fn from_parts(p: u64, valuation: i32, unit: u64, prec: u32) -> Self {
        if unit == 0 || prec == 0 {
            return Self::zero(p, prec);
        }
        Self {
            p,
            valuation,
            unit,
            prec,
        }
    }

    pub fn inverse(&self) -> Result<Self, PAdicError> {
        if self.is_zero() {
            return Err(PAdicError::ZeroInput);
        }
        let m = self.modulus();
        Ok(Self {
            p: self.p,
            valuation: -self.valuation,
            unit: inv_mod(self.unit, m).expect("unit part is invertible"),
            prec: self.prec,
        })
    }

    /// Multiply by `p^k`.
    pub fn shift(&self, k: i32) -> Self {
        let mut out = *self;
        if !out.is_zero() {
            out.valuation += k;
        }
        out
    }

    /// Whether the element is a nonzero square in `Q_p` (odd `p`).
    pub fn is_square(&self) -> bool {
        !self.is_zero()
            && self.valuation % 2 == 0
            && super::character::legendre(self.unit, self.p) == Ok(1)
    }

    /// The principal part as `(r, n)`, meaning `x = r / p^n (mod O)` with
    /// `0 <= r < p^n`. Integral elements give `(0, 0)`.
    pub fn principal_part(&self) -> Result<(u64, u32), PAdicError> {
        if self.is_zero() || self.valuation >= 0 {
            return Ok((0, 0));
        }
        let n = (-self.valuation) as u32;
        if n > self.prec {
            return Err(PAdicError::InsufficientPrecision {
                valuation: self.valuation,
                precision: self.prec,
            });
        }
        Ok((self.unit % pow_u64(self.p, n), n))
    }

    /// The class of `p^shift * x` in `Z / p^digits`, for `x` with
    /// `ord(x) >= -shift`.
    pub fn residue_at(&self, shift: i32, digits: u32) -> Result<u64, PAdicError> {
        let m = pow_u64(self.p, digits);
        if self.is_zero() {
            return Ok(0);
        }
        let v = self.valuation + shift;
        if v < 0 {
            return Err(PAdicError::OutOfLattice {
                valuation: self.valuation,
                bound: -shift,
            });
        }
        if v as u32 >= digits {
            return Ok(0);
        }
        let need = digits - v as u32;
        if need > self.prec {
            return Err(PAdicError::InsufficientPrecision {
                valuation: self.valuation,
                precision: self.prec,
            });
        }
        Ok(mul_mod(
            pow_u64(self.p, v as u32),
            self.unit % pow_u64(self.p, need),
            m,
        ))
    }
}

impl PartialEq for PAdicElement {
    fn eq(&self, other: &Self) -> bool {
        if self.p != other.p {
            return false;
        }
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (true, false) | (false, true) => false,
            (false, false) => {
                let prec = self.prec.min(other.prec);
                let m = pow_u64(self.p, prec);
                self.valuation == other.valuation && self.unit % m == other.unit % m
            }
        }
    }
}

impl Add for PAdicElement {
    type Output = PAdicElement;
    fn add(self, rhs: PAdicElement) -> PAdicElement {
        debug_assert_eq!(self.p, rhs.p);
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (lo, hi) = if self.valuation <= rhs.valuation {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let d = (hi.valuation - lo.valuation) as u32;
        let prec = lo.prec.min(d.saturating_add(hi.prec));
        if d >= prec {
            return Self::from_parts(lo.p, lo.valuation, lo.unit % pow_u64(lo.p, prec), prec);
        }
        let m = pow_u64(lo.p, prec);
        let shifted = mul_mod(pow_u64(lo.p, d), hi.unit % m, m);
        let mut s = ((lo.unit % m) as u128 + shifted as u128) % m as u128;
        if s == 0 {
            return Self::zero(lo.p, prec);
        }
        let mut t = 0;
        while s % lo.p as u128 == 0 {
            s /= lo.p as u128;
            t += 1;
        }
        Self::from_parts(lo.p, lo.valuation + t as i32, s as u64, prec - t)
    }
}

impl Neg for PAdicElement {
    type Output = PAdicElement;
    fn neg(self) -> PAdicElement {
        if self.is_zero() {
            return self;
        }
        let m = self.modulus();
        Self {
            unit: (m - self.unit % m) % m,
            ..self
        }
    }
}

impl Sub for PAdicElement {
    type Output = PAdicElement;
    fn sub(self, rhs: PAdicElement) -> PAdicElement {
        self + (-rhs)
    }
}

impl Mul for PAdicElement {
    type Output = PAdicElement;
    fn mul(self, rhs: PAdicElement) -> PAdicElement {
        debug_assert_eq!(self.p, rhs.p);
        let prec = self.prec.min(rhs.prec);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.p, prec);
        }
        let m = pow_u64(self.p, prec);
        Self::from_parts(
            self.p,
            self.valuation + rhs.valuation,
            mul_mod(self.unit % m, rhs.unit % m, m),
            prec,
        )
    }
}

impl fmt::Display for PAdicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        write!(
            f,
            "{}^{} * {} + O({}^{})",
            self.p,
            self.valuation,
            self.unit,
            self.p,
            self.abs_precision()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64) -> PAdicContext {
        PAdicContext::with_prime(p).unwrap()
    }

    #[test]
    fn context_validation() {
        assert_eq!(
            PAdicContext::with_prime(4),
            Err(PAdicError::InvalidPrime(4))
        );
        assert_eq!(
            PAdicContext::with_prime(2),
            Err(PAdicError::InvalidPrime(2))
        );
        assert!(PAdicContext::new(5, 1, 1, 1).is_err());
        assert!(PAdicContext::new(5, 10, 0, 1).is_err());
        assert!(PAdicContext::new(5, 100, 1, 1).is_err());
        assert_eq!(PAdicContext::max_precision(3), 39);
    }

    #[test]
    fn rational_embedding() {
        let c = ctx(5);
        let x = c.from_rational(3, 25).unwrap();
        assert_eq!(x.valuation(), Some(-2));
        assert_eq!(x.principal_part().unwrap(), (3, 2));
        let y = c.from_rational(1, 3).unwrap();
        assert_eq!(y * c.from_int(3), c.one());
        assert_eq!(c.from_int(50).valuation(), Some(2));
    }

    #[test]
    fn sums_and_cancellation() {
        let c = ctx(7);
        let a = c.from_rational(5, 49).unwrap();
        let b = c.from_rational(2, 49).unwrap();
        let s = a + b;
        assert_eq!(s, c.from_rational(1, 7).unwrap());
        assert_eq!(s.valuation(), Some(-1));
        assert!((a - a).is_zero());
        assert_eq!(a + c.zero(), a);
        assert_eq!(-(-a), a);
        assert_eq!(c.from_int(3) - c.from_int(10), c.from_int(-7));
    }

    #[test]
    fn inverse_and_norm() {
        let c = ctx(11);
        let x = c.from_rational(22, 3).unwrap();
        assert_eq!(x * x.inverse().unwrap(), c.one());
        assert!((x.norm() - 1.0 / 11.0).abs() < 1e-15);
        assert!(c.zero().inverse().is_err());
    }

    #[test]
    fn principal_part_needs_precision() {
        let c = PAdicContext::new(3, 4, 1, 1).unwrap();
        let x = c.element(-5, 2).unwrap();
        assert!(matches!(
            x.principal_part(),
            Err(PAdicError::InsufficientPrecision { .. })
        ));
        assert_eq!(c.element(-4, 2).unwrap().principal_part().unwrap(), (2, 4));
    }

    #[test]
    fn residues() {
        let c = ctx(5);
        let x = c.from_rational(7, 5).unwrap();
        // 5 * (7/5) = 7 = 2 mod 5
        assert_eq!(x.residue_at(1, 1).unwrap(), 2);
        assert_eq!(x.residue_at(2, 2).unwrap(), 10);
        assert!(x.residue_at(0, 2).is_err());
    }

    #[test]
    fn squares() {
        let c = ctx(5);
        assert!(c.from_int(4).is_square());
        assert!(!c.from_int(2).is_square());
        assert!(c.from_rational(4, 25).unwrap().is_square());
        assert!(!c.from_int(5).is_square());
    }
}

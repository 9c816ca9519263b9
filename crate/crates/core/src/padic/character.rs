use std::f64::consts::TAU;

use num_complex::Complex64;

use super::arith::{pow_mod, pow_u64};
use super::{PAdicElement, PAdicError};

/// Complex values produced by the numeric routines.
pub type ComplexApprox = Complex64;

/// `exp(2 pi i r / p^n)`.
pub(crate) fn root_of_unity(r: u64, p: u64, n: u32) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let m = pow_u64(p, n);
    Complex64::from_polar(1.0, TAU * ((r % m) as f64 / m as f64))
}

/// Neumaier-compensated sum; long runs of roots of unity have large partial
/// sums that swamp plain accumulation.
pub(crate) fn compensated_sum(terms: impl IntoIterator<Item = Complex64>) -> Complex64 {
    fn step(sum: &mut f64, comp: &mut f64, x: f64) {
        let t = *sum + x;
        *comp += if sum.abs() >= x.abs() {
            (*sum - t) + x
        } else {
            (x - t) + *sum
        };
        *sum = t;
    }
    let (mut re, mut cre, mut im, mut cim) = (0.0, 0.0, 0.0, 0.0);
    for z in terms {
        step(&mut re, &mut cre, z.re);
        step(&mut im, &mut cim, z.im);
    }
    Complex64::new(re + cre, im + cim)
}

/// The standard unramified character `psi(x) = exp(2 pi i {x}_p)`, where
/// `{x}_p` is the principal part of `x`.
pub fn psi_eval(x: &PAdicElement) -> Result<ComplexApprox, PAdicError> {
    let (r, n) = x.principal_part()?;
    Ok(root_of_unity(r, x.p(), n))
}

/// Quadratic residue symbol `(u / p)` by Euler's criterion.
pub fn legendre(u: u64, p: u64) -> Result<i8, PAdicError> {
    if u % p == 0 {
        return Err(PAdicError::NotAUnit { value: u, p });
    }
    Ok(if pow_mod(u, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    })
}

/// Smallest quadratic non-residue modulo `p`.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p)
        .find(|&n| legendre(n, p) == Ok(-1))
        .expect("odd prime has a non-residue")
}

/// Quadratic Gauss sum `sum_{x mod p} exp(2 pi i x^2 / p)`.
pub fn gauss_sum(p: u64) -> ComplexApprox {
    (0..p).map(|x| root_of_unity(x * x % p, p, 1)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PAdicContext;

    #[test]
    fn legendre_small_cases() {
        assert_eq!(legendre(4, 5), Ok(1));
        // Squares mod 5 are {1, 4}.
        let squares: Vec<u64> = (1..5u64).map(|x| x * x % 5).collect();
        assert!(!squares.contains(&2));
        assert_eq!(legendre(2, 5), Ok(-1));
        assert!(legendre(10, 5).is_err());
        assert_eq!(least_nonresidue(7), 3);
    }

    #[test]
    fn gauss_sum_modulus() {
        for p in [3u64, 5, 7, 11, 13] {
            assert!((gauss_sum(p).norm() - (p as f64).sqrt()).abs() < 1e-9);
        }
        // p = 1 mod 4 gives a real sum, p = 3 mod 4 a purely imaginary one.
        assert!((gauss_sum(5) - Complex64::new(5f64.sqrt(), 0.0)).norm() < 1e-12);
        assert!((gauss_sum(7) - Complex64::new(0.0, 7f64.sqrt())).norm() < 1e-12);
    }

    #[test]
    fn psi_basic_values() {
        let c = PAdicContext::with_prime(5).unwrap();
        assert!((psi_eval(&c.from_int(17)).unwrap() - 1.0).norm() < 1e-15);
        let v = psi_eval(&c.from_rational(1, 5).unwrap()).unwrap();
        assert!((v - Complex64::from_polar(1.0, TAU / 5.0)).norm() < 1e-15);
        assert!((psi_eval(&c.zero()).unwrap() - 1.0).norm() < 1e-15);
    }
}

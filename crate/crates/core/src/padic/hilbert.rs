use super::arith::pow_u64;
use super::character::legendre;
use super::element::mul_mod;
use super::{PAdicElement, PAdicError};

fn split(x: &PAdicElement) -> Result<(i32, u64), PAdicError> {
    let v = x.valuation().ok_or(PAdicError::ZeroInput)?;
    Ok((v, x.unit() % x.p()))
}

/// Hilbert symbol `(a, b)` over `Q_p`, `p` odd, by the closed formula
/// `(-1)^{ab (p-1)/2} (u/p)^beta (v/p)^alpha` for `a = p^alpha u`, `b = p^beta v`.
pub fn hilbert_symbol(a: &PAdicElement, b: &PAdicElement) -> Result<i8, PAdicError> {
    let p = a.p();
    let (alpha, u) = split(a)?;
    let (beta, v) = split(b)?;
    let mut sign = 1i8;
    if (alpha * beta).rem_euclid(2) == 1 && ((p - 1) / 2) % 2 == 1 {
        sign = -sign;
    }
    if beta.rem_euclid(2) == 1 {
        sign *= legendre(u, p)?;
    }
    if alpha.rem_euclid(2) == 1 {
        sign *= legendre(v, p)?;
    }
    Ok(sign)
}

/// Hilbert symbol decided by searching for a nontrivial zero of
/// `a x^2 + b y^2 - z^2`.
///
/// After scaling `a` and `b` by squares so their valuations lie in `{0, 1}`,
/// every primitive `p`-adic zero has a partial derivative of valuation at most
/// one, so it suffices to find a primitive zero modulo `p^3` whose gradient
/// has valuation `t <= 1` (Hensel's lemma then lifts it, since `3 >= 2t + 1`).
pub fn hilbert_symbol_bruteforce(a: &PAdicElement, b: &PAdicElement) -> Result<i8, PAdicError> {
    let p = a.p();
    const LEVEL: u32 = 3;
    let n = pow_u64(p, LEVEL);
    let reduce = |x: &PAdicElement| -> Result<u64, PAdicError> {
        let v = x.valuation().ok_or(PAdicError::ZeroInput)?;
        let u = x.unit() % n;
        Ok(if v.rem_euclid(2) == 1 {
            mul_mod(u, p, n)
        } else {
            u
        })
    };
    let ar = reduce(a)?;
    let br = reduce(b)?;

    let mut roots: Vec<Vec<u64>> = vec![Vec::new(); n as usize];
    for z in 0..n {
        roots[mul_mod(z, z, n) as usize].push(z);
    }
    let val = |x: u64| -> u32 {
        if x == 0 {
            return LEVEL;
        }
        let mut x = x;
        let mut v = 0;
        while x % p == 0 {
            x /= p;
            v += 1;
        }
        v
    };

    for x in 0..n {
        let ax2 = mul_mod(ar, mul_mod(x, x, n), n);
        let gx = val(mul_mod(2 * ar % n, x, n));
        for y in 0..n {
            let r = (ax2 + mul_mod(br, mul_mod(y, y, n), n)) % n;
            let primitive_xy = x % p != 0 || y % p != 0;
            let gxy = gx.min(val(mul_mod(2 * br % n, y, n)));
            for &z in &roots[r as usize] {
                if !(primitive_xy || z % p != 0) {
                    continue;
                }
                let t = gxy.min(val(2 * z % n));
                if 2 * t < LEVEL {
                    return Ok(1);
                }
            }
        }
    }
    Ok(-1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{least_nonresidue, PAdicContext};

    #[test]
    fn units_pair_trivially() {
        for p in [3u64, 5, 7] {
            let c = PAdicContext::with_prime(p).unwrap();
            let n = least_nonresidue(p);
            for (x, y) in [(1, n), (n, n), (1, 1)] {
                let a = c.from_int(x as i64);
                let b = c.from_int(y as i64);
                assert_eq!(hilbert_symbol_bruteforce(&a, &b).unwrap(), 1);
                assert_eq!(hilbert_symbol(&a, &b).unwrap(), 1);
            }
        }
    }

    #[test]
    fn uniformizer_against_nonresidue() {
        for p in [3u64, 5, 7] {
            let c = PAdicContext::with_prime(p).unwrap();
            let n = c.from_int(least_nonresidue(p) as i64);
            let pi = c.uniformizer();
            assert_eq!(hilbert_symbol_bruteforce(&pi, &n).unwrap(), -1);
            assert_eq!(hilbert_symbol(&pi, &n).unwrap(), -1);
        }
    }

    #[test]
    fn uniformizer_with_itself() {
        // (p, p) = (p, -1) = (-1 / p)
        for p in [3u64, 5, 7, 11, 13] {
            let c = PAdicContext::with_prime(p).unwrap();
            let pi = c.uniformizer();
            let expected = if p % 4 == 1 { 1 } else { -1 };
            assert_eq!(hilbert_symbol(&pi, &pi).unwrap(), expected);
            assert_eq!(hilbert_symbol_bruteforce(&pi, &pi).unwrap(), expected);
        }
    }

    #[test]
    fn zero_rejected() {
        let c = PAdicContext::with_prime(5).unwrap();
        assert_eq!(
            hilbert_symbol(&c.zero(), &c.one()),
            Err(PAdicError::ZeroInput)
        );
        assert!(hilbert_symbol_bruteforce(&c.one(), &c.zero()).is_err());
    }
}

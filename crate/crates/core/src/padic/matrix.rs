use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::heisenberg::mat4_mul;
use super::PAdicError;
use crate::algebra::{LaurentPoly, Var};

type Mat4<T> = [[T; 4]; 4];

fn identity<T: Zero + One>() -> Mat4<T> {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { T::one() } else { T::zero() }))
}

fn with_entries<T: Zero + One + Clone>(entries: &[(usize, usize, T)]) -> Mat4<T> {
    let mut m = identity::<T>();
    for (i, j, v) in entries {
        m[*i][*j] = v.clone();
    }
    m
}

fn neg<T: Zero + One + Clone + std::ops::Sub<Output = T>>(x: T) -> T {
    T::zero() - x
}

/// The Weyl-type element mixing the Klingen unipotent radical with the
/// Siegel Levi, and its inverse (its transpose).
fn gamma<T: Zero + One + Clone + std::ops::Sub<Output = T>>() -> (Mat4<T>, Mat4<T>) {
    let (o, i) = (T::zero(), T::one());
    let m = |r: [[T; 4]; 4]| r;
    let g = m([
        [o.clone(), i.clone(), o.clone(), o.clone()],
        [o.clone(), o.clone(), o.clone(), neg(i.clone())],
        [i.clone(), o.clone(), o.clone(), o.clone()],
        [o.clone(), o.clone(), i.clone(), o.clone()],
    ]);
    let t = std::array::from_fn(|r| std::array::from_fn(|c| g[c][r].clone()));
    (g, t)
}

/// Sides of `gamma u(0,0,z) gamma^-1 = L = D W U` for given `z`, `z^-1`.
struct Sides<T> {
    conjugate: Mat4<T>,
    lower: Mat4<T>,
    factored: Mat4<T>,
}

fn sides<T>(z: T, z_inv: T) -> Sides<T>
where
    T: Zero + One + Clone + std::ops::Sub<Output = T>,
{
    let (g, g_inv) = gamma::<T>();
    let u = with_entries(&[(0, 3, z.clone())]);
    let conjugate = mat4_mul(&mat4_mul(&g, &u), &g_inv);
    let lower = with_entries(&[(2, 1, neg(z.clone()))]);
    let d = with_entries(&[(1, 1, z_inv.clone()), (1, 2, neg(T::one())), (2, 2, z)]);
    let w = with_entries(&[
        (1, 1, T::zero()),
        (1, 2, T::one()),
        (2, 1, neg(T::one())),
        (2, 2, T::zero()),
    ]);
    let upper = with_entries(&[(1, 2, neg(z_inv))]);
    let factored = mat4_mul(&mat4_mul(&d, &w), &upper);
    Sides {
        conjugate,
        lower,
        factored,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixSample {
    pub z: String,
    pub conjugation: bool,
    pub factorization: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixIdentityReport {
    pub samples: Vec<MatrixSample>,
    /// Identity with `z` a Laurent variable.
    pub symbolic: bool,
    /// Identity multiplied through by `z^2`, all entries polynomial in `z`.
    pub symbolic_cleared: bool,
}

impl MatrixIdentityReport {
    pub fn passed(&self) -> bool {
        self.symbolic
            && self.symbolic_cleared
            && self
                .samples
                .iter()
                .all(|s| s.conjugation && s.factorization)
    }
}

/// Checks the factorization of `gamma u(0,0,z) gamma^-1` exactly at each
/// sample and symbolically in `z`.
pub fn verify_matrix_identity(samples: &[BigRational]) -> Result<MatrixIdentityReport, PAdicError> {
    let mut out = Vec::with_capacity(samples.len());
    for z in samples {
        if z.is_zero() {
            return Err(PAdicError::ZeroInput);
        }
        let s = sides(z.clone(), z.recip());
        out.push(MatrixSample {
            z: z.to_string(),
            conjugation: s.conjugate == s.lower,
            factorization: s.lower == s.factored,
        });
    }

    let z = LaurentPoly::var(Var::A);
    let s = sides(z.clone(), LaurentPoly::var_pow(Var::A, -1));
    let symbolic = s.conjugate == s.lower && s.lower == s.factored;

    // z D and z U have polynomial entries; (z D) W (z U) = z^2 L.
    let poly = |m: &Mat4<LaurentPoly>| {
        m.iter()
            .flatten()
            .all(|e| e.degree_range(Var::A).is_none_or(|(lo, _)| lo >= 0))
    };
    let d = with_entries(&[
        (0, 0, z.clone()),
        (1, 1, LaurentPoly::one()),
        (1, 2, -z.clone()),
        (2, 2, z.pow(2)),
        (3, 3, z.clone()),
    ]);
    let w = with_entries(&[
        (1, 1, LaurentPoly::zero()),
        (1, 2, LaurentPoly::one()),
        (2, 1, -LaurentPoly::one()),
        (2, 2, LaurentPoly::zero()),
    ]);
    let u = with_entries(&[
        (0, 0, z.clone()),
        (1, 1, z.clone()),
        (1, 2, -LaurentPoly::one()),
        (2, 2, z.clone()),
        (3, 3, z.clone()),
    ]);
    let z2_lower = with_entries(&[
        (0, 0, z.pow(2)),
        (1, 1, z.pow(2)),
        (2, 1, -z.pow(3)),
        (2, 2, z.pow(2)),
        (3, 3, z.pow(2)),
    ]);
    let symbolic_cleared =
        poly(&d) && poly(&u) && poly(&z2_lower) && mat4_mul(&mat4_mul(&d, &w), &u) == z2_lower;

    Ok(MatrixIdentityReport {
        samples: out,
        symbolic,
        symbolic_cleared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn identity_at_named_points() {
        let r = verify_matrix_identity(&[q(1, 1), q(-3, 7)]).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(
            verify_matrix_identity(&[q(0, 1)]).unwrap_err(),
            PAdicError::ZeroInput
        );
    }

    #[test]
    fn wrong_sign_detected() {
        let z = q(2, 1);
        let s = sides(z.clone(), z.recip());
        let mut bad = s.lower.clone();
        bad[2][1] = z;
        assert_ne!(bad, s.factored);
    }
}

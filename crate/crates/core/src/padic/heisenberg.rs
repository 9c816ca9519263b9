use std::ops::{Add, Mul};

use rand::Rng;
use serde::Serialize;

use super::{PAdicContext, PAdicElement};

/// Element `(x, y, z)` of the three-dimensional Heisenberg group with law
/// `(x1, y1, z1)(x2, y2, z2) = (x1 + x2, y1 + y2, z1 + z2 + x1 y2 - x2 y1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HeisenbergElement {
    pub x: PAdicElement,
    pub y: PAdicElement,
    pub z: PAdicElement,
}

impl HeisenbergElement {
    pub fn new(x: PAdicElement, y: PAdicElement, z: PAdicElement) -> Self {
        Self { x, y, z }
    }

    pub fn identity(ctx: &PAdicContext) -> Self {
        Self::new(ctx.zero(), ctx.zero(), ctx.zero())
    }

    pub fn central(ctx: &PAdicContext, z: PAdicElement) -> Self {
        Self::new(ctx.zero(), ctx.zero(), z)
    }

    pub fn inverse(&self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }

    /// Right action of `SL2`: `(x, y, z) . g = ((x, y) g, z)`, where `g` is
    /// given by rows `[[g11, g12], [g21, g22]]`.
    pub fn act(&self, g: &[[PAdicElement; 2]; 2]) -> Self {
        Self::new(
            self.x * g[0][0] + self.y * g[1][0],
            self.x * g[0][1] + self.y * g[1][1],
            self.z,
        )
    }

    /// The matrix `u(x, y, z)` in the unipotent radical of the Klingen parabolic.
    pub fn to_nq_matrix(&self, ctx: &PAdicContext) -> [[PAdicElement; 4]; 4] {
        let (o, i) = (ctx.zero(), ctx.one());
        [
            [i, self.x, self.y, self.z],
            [o, i, o, self.y],
            [o, o, i, -self.x],
            [o, o, o, i],
        ]
    }

    /// Inverse of [`Self::to_nq_matrix`]; `None` if `m` does not have the
    /// `u(x, y, z)` shape.
    pub fn from_nq_matrix(ctx: &PAdicContext, m: &[[PAdicElement; 4]; 4]) -> Option<Self> {
        let h = Self::new(m[0][1], m[0][2], m[0][3]);
        (h.to_nq_matrix(ctx) == *m).then_some(h)
    }
}

impl Mul for HeisenbergElement {
    type Output = HeisenbergElement;
    fn mul(self, rhs: HeisenbergElement) -> HeisenbergElement {
        HeisenbergElement::new(
            self.x + rhs.x,
            self.y + rhs.y,
            self.z + rhs.z + self.x * rhs.y - rhs.x * self.y,
        )
    }
}

/// 4x4 product over any ring-like type without needing a zero constant.
pub fn mat4_mul<T>(a: &[[T; 4]; 4], b: &[[T; 4]; 4]) -> [[T; 4]; 4]
where
    T: Clone + Add<Output = T> + Mul<Output = T>,
{
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (1..4).fold(a[i][0].clone() * b[0][j].clone(), |acc, k| {
                acc + a[i][k].clone() * b[k][j].clone()
            })
        })
    })
}

/// Random element with the given valuation range, or zero with probability
/// `zero_weight`.
pub fn random_element<R: Rng>(
    ctx: &PAdicContext,
    rng: &mut R,
    valuations: std::ops::RangeInclusive<i32>,
    zero_weight: f64,
) -> PAdicElement {
    if zero_weight > 0.0 && rng.gen_bool(zero_weight) {
        return ctx.zero();
    }
    let v = rng.gen_range(valuations);
    let m = ctx.modulus();
    loop {
        let u = rng.gen_range(1..m);
        if u % ctx.p() != 0 {
            return ctx.element(v, u).expect("unit");
        }
    }
}

pub fn random_heisenberg<R: Rng>(ctx: &PAdicContext, rng: &mut R) -> HeisenbergElement {
    HeisenbergElement::new(
        random_element(ctx, rng, -3..=3, 0.1),
        random_element(ctx, rng, -3..=3, 0.1),
        random_element(ctx, rng, -3..=3, 0.1),
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct HeisenbergReport {
    pub trials: usize,
    pub identity_neutral: bool,
    pub associativity_failures: usize,
    pub homomorphism_failures: usize,
}

impl HeisenbergReport {
    pub fn passed(&self) -> bool {
        self.identity_neutral && self.associativity_failures == 0 && self.homomorphism_failures == 0
    }
}

/// Associativity of the group law and multiplicativity of the map
/// `u(x, y, z) -> (x, y, z)`, on `trials` random samples each.
pub fn verify_heisenberg_group<R: Rng>(
    ctx: &PAdicContext,
    trials: usize,
    rng: &mut R,
) -> HeisenbergReport {
    let e = HeisenbergElement::identity(ctx);
    let mut identity_neutral = true;
    let mut associativity_failures = 0;
    let mut homomorphism_failures = 0;
    for _ in 0..trials {
        let (a, b, c) = (
            random_heisenberg(ctx, rng),
            random_heisenberg(ctx, rng),
            random_heisenberg(ctx, rng),
        );
        identity_neutral &= e * a == a && a * e == a && a * a.inverse() == e;
        if (a * b) * c != a * (b * c) {
            associativity_failures += 1;
        }
        let prod = mat4_mul(&a.to_nq_matrix(ctx), &b.to_nq_matrix(ctx));
        match HeisenbergElement::from_nq_matrix(ctx, &prod) {
            Some(h) if h == a * b => {}
            _ => homomorphism_failures += 1,
        }
    }
    HeisenbergReport {
        trials,
        identity_neutral,
        associativity_failures,
        homomorphism_failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn law_on_rationals() {
        let c = PAdicContext::with_prime(5).unwrap();
        let h = |x, y, z| HeisenbergElement::new(c.from_int(x), c.from_int(y), c.from_int(z));
        // z = 3 + 7 + 1*5 - 4*2 = 7
        assert_eq!(h(1, 2, 3) * h(4, 5, 7), h(5, 7, 7));
        assert_eq!(h(1, 2, 3) * HeisenbergElement::identity(&c), h(1, 2, 3));
    }

    #[test]
    fn nq_shape_is_checked() {
        let c = PAdicContext::with_prime(3).unwrap();
        let mut m = HeisenbergElement::identity(&c).to_nq_matrix(&c);
        m[2][3] = c.one();
        assert!(HeisenbergElement::from_nq_matrix(&c, &m).is_none());
    }

    #[test]
    fn random_checks_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [3u64, 11] {
            let c = PAdicContext::with_prime(p).unwrap();
            let r = verify_heisenberg_group(&c, 50, &mut rng);
            assert!(r.passed(), "{r:?}");
        }
    }
}

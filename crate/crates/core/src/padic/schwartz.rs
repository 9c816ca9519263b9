use num_complex::Complex64;
use rand::Rng;

use super::arith::pow_u64;
use super::character::psi_eval;
use super::heisenberg::HeisenbergElement;
use super::{PAdicContext, PAdicElement, PAdicError, WeilFactor};

/// Relative size below which a grid value counts as zero.
const ZERO_THRESHOLD: f64 = 1e-12;

/// A Schwartz function on `Q_p` supported in `p^-M O` and constant on cosets
/// of `p^K' O`, stored by its values on `p^-M O / p^K' O`.
///
/// Index `j` stands for the coset of `xi = p^-M j`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchwartzGridFn {
    ctx: PAdicContext,
    values: Vec<Complex64>,
}

impl SchwartzGridFn {
    pub fn zeros(ctx: &PAdicContext) -> Self {
        let n = pow_u64(ctx.p(), ctx.reach() + ctx.fineness()) as usize;
        Self {
            ctx: *ctx,
            values: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn from_fn(ctx: &PAdicContext, f: impl Fn(&PAdicElement) -> Complex64) -> Self {
        let mut out = Self::zeros(ctx);
        for j in 0..out.values.len() {
            out.values[j] = f(&out.point(j));
        }
        out
    }

    /// The characteristic function of `O`.
    pub fn indicator_of_integers(ctx: &PAdicContext) -> Self {
        let step = pow_u64(ctx.p(), ctx.reach()) as usize;
        let mut out = Self::zeros(ctx);
        for j in (0..out.values.len()).step_by(step) {
            out.values[j] = Complex64::new(1.0, 0.0);
        }
        out
    }

    /// Random function supported in `p^-(M-1) O` and constant on cosets of
    /// `p^(K'-1) O`, so every generator with small valuations stays on the grid.
    pub fn random_interior<R: Rng>(ctx: &PAdicContext, rng: &mut R) -> Self {
        let p = ctx.p() as usize;
        let period = pow_u64(ctx.p(), ctx.reach() + ctx.fineness() - 1) as usize;
        let table: Vec<Complex64> = (0..period)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let mut out = Self::zeros(ctx);
        for j in (0..out.values.len()).step_by(p) {
            out.values[j] = table[j % period];
        }
        out
    }

    pub fn context(&self) -> &PAdicContext {
        &self.ctx
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The grid point `p^-M j`.
    pub fn point(&self, j: usize) -> PAdicElement {
        self.ctx
            .from_int(j as i64)
            .shift(-(self.ctx.reach() as i32))
    }

    /// Value at `xi`; zero outside `p^-M O`.
    pub fn eval(&self, xi: &PAdicElement) -> Result<Complex64, PAdicError> {
        match xi.valuation() {
            Some(v) if v < -(self.ctx.reach() as i32) => Ok(Complex64::new(0.0, 0.0)),
            _ => Ok(self.values[self.index_of(xi)?]),
        }
    }

    fn index_of(&self, xi: &PAdicElement) -> Result<usize, PAdicError> {
        let r = self.ctx.reach();
        Ok(xi.residue_at(r as i32, r + self.ctx.fineness())? as usize)
    }

    fn threshold(&self) -> f64 {
        let max = self.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        max * ZERO_THRESHOLD
    }

    /// Smallest `s` with support in `p^-s O`; `None` for the zero function.
    pub fn support_reach(&self) -> Option<i32> {
        let t = self.threshold();
        let r = self.ctx.reach() as i32;
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.norm() > t)
            .map(|(j, _)| {
                if j == 0 {
                    -(self.ctx.fineness() as i32)
                } else {
                    -self.point(j).valuation().unwrap_or(-r)
                }
            })
            .max()
    }

    /// Smallest `c` such that the function is constant on cosets of `p^c O`.
    pub fn smoothness(&self) -> i32 {
        let t = self.threshold();
        let n = self.values.len();
        let (r, f) = (self.ctx.reach() as i32, self.ctx.fineness() as i32);
        for c in -r..f {
            let period = pow_u64(self.ctx.p(), (r + c) as u32) as usize;
            if (0..n).all(|j| (self.values[j] - self.values[(j + period) % n]).norm() <= t) {
                return c;
            }
        }
        f
    }

    /// Weighted `l^2` norm with Haar weight `p^-K'` per coset.
    pub fn norm(&self) -> f64 {
        self.inner(self).re.max(0.0).sqrt()
    }

    /// `sum conj(self) * other * p^-K'`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let w = (self.ctx.p() as f64).powi(-(self.ctx.fineness() as i32));
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            * w
    }

    pub fn distance(&self, other: &Self) -> Result<f64, PAdicError> {
        if self.ctx != other.ctx {
            return Err(PAdicError::ContextMismatch);
        }
        Ok(self.sub(other).norm())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            ctx: self.ctx,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        Self {
            ctx: self.ctx,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    fn overflow(&self, reach: i32, fineness: i32) -> Result<(), PAdicError> {
        if reach > self.ctx.reach() as i32 || fineness > self.ctx.fineness() as i32 {
            return Err(PAdicError::GridOverflow {
                reach,
                fineness,
                have_reach: self.ctx.reach(),
                have_fineness: self.ctx.fineness(),
            });
        }
        Ok(())
    }

    /// `xi -> c * Phi(xi a)`.
    fn dilate(&self, a: &PAdicElement, c: Complex64) -> Result<Self, PAdicError> {
        let alpha = a.valuation().ok_or(PAdicError::ZeroInput)?;
        if let Some(s) = self.support_reach() {
            self.overflow(s + alpha, self.smoothness() - alpha)?;
        }
        let mut out = Self::zeros(&self.ctx);
        for j in 0..out.values.len() {
            let v = self.eval(&(self.point(j) * *a))?;
            out.values[j] = c * v;
        }
        Ok(out)
    }

    /// `xi -> psi(b xi^2) Phi(xi)`.
    fn twist(&self, b: &PAdicElement) -> Result<Self, PAdicError> {
        let Some(beta) = b.valuation() else {
            return Ok(self.clone());
        };
        if let Some(s) = self.support_reach() {
            // psi(b xi^2) must be constant on cosets of p^K' O inside the support.
            self.overflow(s, (s - beta).max((-beta + 1).div_euclid(2)))?;
        }
        let mut out = self.clone();
        for (j, v) in out.values.iter_mut().enumerate() {
            if v.norm() == 0.0 {
                continue;
            }
            let xi = self.point(j);
            *v *= psi_eval(&(*b * xi * xi))?;
        }
        Ok(out)
    }

    /// `xi -> psi(z + 2 xi y + x y) Phi(xi + x)`.
    fn heisenberg(&self, h: &HeisenbergElement) -> Result<Self, PAdicError> {
        let (r, k) = (self.ctx.reach() as i32, self.ctx.fineness() as i32);
        if let Some(vx) = h.x.valuation() {
            if vx < -r {
                self.overflow(-vx, k)?;
            }
        }
        if let Some(vy) = h.y.valuation() {
            if vy < -k {
                self.overflow(r, -vy)?;
            }
        }
        let n = self.values.len();
        let shift = h.x.residue_at(r, (r + k) as u32)? as usize;
        let two_y = self.ctx.from_int(2) * h.y;
        let c0 = h.z + h.x * h.y;
        let mut out = Self::zeros(&self.ctx);
        for j in 0..n {
            let v = self.values[(j + shift) % n];
            if v.norm() == 0.0 {
                continue;
            }
            out.values[j] = v * psi_eval(&(c0 + two_y * self.point(j)))?;
        }
        Ok(out)
    }
}

/// Generators whose Weil-representation action has a closed formula.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WeilElement {
    /// `t(a) = diag(a, a^-1)`.
    Torus(PAdicElement),
    /// `n(b) = [[1, b], [0, 1]]`.
    Unipotent(PAdicElement),
    Heisenberg(HeisenbergElement),
}

/// `omega_psi(g) Phi` for a generator `g` (with trivial cover sign).
pub fn weil_action(
    wf: &WeilFactor,
    g: &WeilElement,
    phi: &SchwartzGridFn,
) -> Result<SchwartzGridFn, PAdicError> {
    weil_action_signed(wf, g, 1, phi)
}

/// `omega_psi((g, eps)) Phi`, the cover sign `eps` acting as a scalar.
pub fn weil_action_signed(
    wf: &WeilFactor,
    g: &WeilElement,
    eps: i8,
    phi: &SchwartzGridFn,
) -> Result<SchwartzGridFn, PAdicError> {
    if wf.context() != phi.context() {
        return Err(PAdicError::ContextMismatch);
    }
    let out = match g {
        WeilElement::Torus(a) => {
            let c = wf.gamma(a)? * a.norm().sqrt();
            phi.dilate(a, c)?
        }
        WeilElement::Unipotent(b) => phi.twist(b)?,
        WeilElement::Heisenberg(h) => phi.heisenberg(h)?,
    };
    Ok(if eps < 0 {
        out.scale(Complex64::new(-1.0, 0.0))
    } else {
        out
    })
}

/// `omega_psi(g)^-1 Phi`.
pub fn weil_action_inverse(
    wf: &WeilFactor,
    g: &WeilElement,
    phi: &SchwartzGridFn,
) -> Result<SchwartzGridFn, PAdicError> {
    if wf.context() != phi.context() {
        return Err(PAdicError::ContextMismatch);
    }
    match g {
        WeilElement::Torus(a) => {
            let c = (wf.gamma(a)? * a.norm().sqrt()).inv();
            phi.dilate(&a.inverse()?, c)
        }
        WeilElement::Unipotent(b) => phi.twist(&-*b),
        WeilElement::Heisenberg(h) => phi.heisenberg(&h.inverse()),
    }
}

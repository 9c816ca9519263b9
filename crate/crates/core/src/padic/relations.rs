use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::heisenberg::{random_element, HeisenbergElement};
use super::schwartz::{weil_action, weil_action_inverse, SchwartzGridFn, WeilElement};
use super::{hilbert_symbol, least_nonresidue, Convention, PAdicElement, PAdicError, WeilFactor};

/// Central operators are scalars, so their commutators vanish to rounding.
pub const CENTRAL_TOLERANCE: f64 = 1e-12;

/// Observed scalar in `omega(t(a1)) omega(t(a2)) = sigma omega(t(a1 a2))`.
#[derive(Clone, Debug, Serialize)]
pub struct TorusSign {
    pub a1: String,
    pub a2: String,
    pub sigma: [f64; 2],
    pub hilbert: i8,
    pub residual: f64,
}

impl TorusSign {
    pub fn consistent(&self, tolerance: f64) -> bool {
        let s = Complex64::new(self.sigma[0], self.sigma[1]);
        (s.norm() - 1.0).abs() < tolerance
            && (s - f64::from(self.hilbert)).norm() < tolerance
            && self.residual < tolerance
    }
}

/// Largest weighted `l^2` residual seen for each relation.
#[derive(Clone, Debug, Serialize)]
pub struct WeilRelationsReport {
    pub p: u64,
    pub trials: usize,
    pub convention: Convention,
    pub heisenberg_homomorphism: f64,
    pub torus_conjugation: f64,
    pub unipotent_conjugation: f64,
    pub unipotent_additivity: f64,
    pub central_commutation: f64,
    pub unitarity: f64,
    pub torus_signs: Vec<TorusSign>,
}

impl WeilRelationsReport {
    pub fn max_residual(&self) -> f64 {
        [
            self.heisenberg_homomorphism,
            self.torus_conjugation,
            self.unipotent_conjugation,
            self.unipotent_additivity,
            self.unitarity,
        ]
        .into_iter()
        .chain(self.torus_signs.iter().map(|s| s.residual))
        .fold(0.0, f64::max)
    }

    pub fn passed(&self, tolerance: f64) -> bool {
        self.max_residual() < tolerance
            && self.central_commutation < CENTRAL_TOLERANCE
            && self.torus_signs.iter().all(|s| s.consistent(tolerance))
    }
}

fn random_unit<R: Rng>(
    wf: &WeilFactor,
    rng: &mut R,
    valuations: std::ops::RangeInclusive<i32>,
) -> PAdicElement {
    random_element(wf.context(), rng, valuations, 0.0)
}

/// Heisenberg element whose conjugates by torus elements of valuation at
/// most one in absolute value and by integral unipotents stay on the grid.
fn random_grid_heisenberg<R: Rng>(wf: &WeilFactor, rng: &mut R) -> HeisenbergElement {
    let ctx = wf.context();
    let (r, k) = (ctx.reach() as i32, ctx.fineness() as i32);
    HeisenbergElement::new(
        random_element(ctx, rng, (1 - r)..=2, 0.1),
        random_element(ctx, rng, (1 - k)..=2, 0.1),
        random_element(ctx, rng, -3..=3, 0.1),
    )
}

fn torus_sign(
    wf: &WeilFactor,
    a1: PAdicElement,
    a2: PAdicElement,
    phi: &SchwartzGridFn,
) -> Result<TorusSign, PAdicError> {
    let lhs = weil_action(
        wf,
        &WeilElement::Torus(a1),
        &weil_action(wf, &WeilElement::Torus(a2), phi)?,
    )?;
    let rhs = weil_action(wf, &WeilElement::Torus(a1 * a2), phi)?;
    let sigma = rhs.inner(&lhs) / rhs.inner(&rhs);
    let residual = lhs.distance(&rhs.scale(sigma))?;
    Ok(TorusSign {
        a1: a1.to_string(),
        a2: a2.to_string(),
        sigma: [sigma.re, sigma.im],
        hilbert: hilbert_symbol(&a1, &a2)?,
        residual,
    })
}

/// Checks the defining relations of the Weil representation on `trials`
/// random interior grid functions:
/// Heisenberg homomorphism, conjugation of `H` by torus and unipotent
/// generators, additivity in `n(b)`, the torus cocycle against the Hilbert
/// symbol, central commutation and unitarity.
pub fn verify_weil_relations<R: Rng>(
    wf: &WeilFactor,
    trials: usize,
    rng: &mut R,
) -> Result<WeilRelationsReport, PAdicError> {
    let ctx = *wf.context();
    let mut report = WeilRelationsReport {
        p: ctx.p(),
        trials,
        convention: wf.convention(),
        heisenberg_homomorphism: 0.0,
        torus_conjugation: 0.0,
        unipotent_conjugation: 0.0,
        unipotent_additivity: 0.0,
        central_commutation: 0.0,
        unitarity: 0.0,
        torus_signs: Vec::new(),
    };
    let act = |g: WeilElement, phi: &SchwartzGridFn| weil_action(wf, &g, phi);

    for _ in 0..trials {
        let phi = SchwartzGridFn::random_interior(&ctx, rng);

        let h1 = random_grid_heisenberg(wf, rng);
        let h2 = random_grid_heisenberg(wf, rng);
        let lhs = act(
            WeilElement::Heisenberg(h1),
            &act(WeilElement::Heisenberg(h2), &phi)?,
        )?;
        let rhs = act(WeilElement::Heisenberg(h1 * h2), &phi)?;
        report.heisenberg_homomorphism = report.heisenberg_homomorphism.max(lhs.distance(&rhs)?);

        // omega(g) omega(h) omega(g)^-1 = omega(h . g^-1)
        let a = random_unit(wf, rng, -1..=1);
        let b = random_element(&ctx, rng, 0..=2, 0.1);
        let one = ctx.one();
        let zero = ctx.zero();
        for (g, g_inv, slot) in [
            (
                WeilElement::Torus(a),
                [[a.inverse()?, zero], [zero, a]],
                &mut report.torus_conjugation,
            ),
            (
                WeilElement::Unipotent(b),
                [[one, -b], [zero, one]],
                &mut report.unipotent_conjugation,
            ),
        ] {
            let inner = weil_action_inverse(wf, &g, &phi)?;
            let lhs = weil_action(wf, &g, &act(WeilElement::Heisenberg(h1), &inner)?)?;
            let rhs = act(WeilElement::Heisenberg(h1.act(&g_inv)), &phi)?;
            *slot = slot.max(lhs.distance(&rhs)?);
        }

        let b1 = random_element(&ctx, rng, -1..=2, 0.1);
        let b2 = random_element(&ctx, rng, -1..=2, 0.1);
        let lhs = act(
            WeilElement::Unipotent(b1),
            &act(WeilElement::Unipotent(b2), &phi)?,
        )?;
        let rhs = act(WeilElement::Unipotent(b1 + b2), &phi)?;
        report.unipotent_additivity = report.unipotent_additivity.max(lhs.distance(&rhs)?);

        let c = WeilElement::Heisenberg(HeisenbergElement::central(
            &ctx,
            random_unit(wf, rng, -3..=3),
        ));
        for g in [
            WeilElement::Torus(a),
            WeilElement::Unipotent(b1),
            WeilElement::Heisenberg(h1),
        ] {
            let lhs = act(c, &act(g, &phi)?)?;
            let rhs = act(g, &act(c, &phi)?)?;
            report.central_commutation = report.central_commutation.max(lhs.distance(&rhs)?);
        }

        let norm = phi.norm();
        for g in [WeilElement::Torus(a), WeilElement::Unipotent(b1)] {
            report.unitarity = report.unitarity.max((act(g, &phi)?.norm() - norm).abs());
        }

        let alpha1: i32 = rng.gen_range(-1..=1);
        let alpha2 = if alpha1 == 0 {
            rng.gen_range(-1..=1)
        } else {
            rng.gen_range(-1..=0) * alpha1.signum()
        };
        let a1 = random_unit(wf, rng, alpha1..=alpha1);
        let a2 = random_unit(wf, rng, alpha2..=alpha2);
        report.torus_signs.push(torus_sign(wf, a1, a2, &phi)?);
    }

    // The pair (p, n) with n a non-residue, where the cocycle is -1.
    let phi = SchwartzGridFn::random_interior(&ctx, rng);
    let n = ctx.from_int(least_nonresidue(ctx.p()) as i64);
    report
        .torus_signs
        .push(torus_sign(wf, ctx.uniformizer(), n, &phi)?);
    Ok(report)
}

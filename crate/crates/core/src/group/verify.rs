//! Sampled numerical verification of the group-level identities.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::catalog::sample_many;
use super::{
    coboundary_from_lambda, extended_coadjoint, gamma_from_xi, group_coboundary, lambda_gradient,
    left_invariant_forms, noether_differential, noether_invariants,
    symplectic_coboundary_of_lambda, theta_for, Action, Deformation, GroupElement,
    GroupRealization, Mat,
};
use crate::error::Result;

/// Relative tolerance for derivatives at the identity.
pub const DIFFERENTIAL_TOL: f64 = 1e-4;
/// Tolerance for `Θ` comparisons, which involve two finite differences.
pub const THETA_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub samples: usize,
    pub max_residual: f64,
    pub tol: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, samples: usize, max_residual: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            samples,
            max_residual,
            tol,
            passed: max_residual.is_finite() && max_residual < tol,
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn times(m: &Mat, v: &[f64]) -> Vec<f64> {
    (m * DVector::from_column_slice(v)).as_slice().to_vec()
}

/// A smooth random cochain `g ↦ Σ_w a_w sin(k_w·g + φ_w)`.
#[derive(Debug, Clone)]
pub struct RandomCochain {
    waves: Vec<(Vec<f64>, f64, Vec<f64>)>,
}

impl RandomCochain {
    pub fn new<R: Rng>(rng: &mut R, dim: usize, out: usize) -> Self {
        let waves = (0..3)
            .map(|_| {
                let k = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let phase = rng.gen_range(-3.0..3.0);
                let a = (0..out).map(|_| rng.gen_range(-1.0..1.0)).collect();
                (k, phase, a)
            })
            .collect();
        Self { waves }
    }

    pub fn eval(&self, g: &[f64]) -> Vec<f64> {
        let out = self.waves[0].2.len();
        let mut v = vec![0.0; out];
        for (k, phase, a) in &self.waves {
            let s = (k.iter().zip(g).map(|(x, y)| x * y).sum::<f64>() + phase).sin();
            for (vi, ai) in v.iter_mut().zip(a) {
                *vi += ai * s;
            }
        }
        v
    }
}

pub fn verify_group_axioms(
    r: &GroupRealization,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<Vec<Check>> {
    let mut rng = rng(seed);
    let e = r.identity();
    let mut id = 0.0f64;
    let mut inv = 0.0f64;
    let mut hom = 0.0f64;
    let draws = sample_many(r, &mut rng, samples, |rng| {
        let (gp, g) = (r.sample(rng), r.sample(rng));
        let prod = r.law(&gp, &g)?;
        let ginv = r.inverse(&g)?;
        Ok((gp, g, prod, ginv))
    })?;
    for (gp, g, prod, ginv) in &draws {
        id = id
            .max(max_diff(&r.law(&e, g)?.coords, &g.coords))
            .max(max_diff(&r.law(g, &e)?.coords, &g.coords));
        inv = inv.max(max_diff(&r.law(ginv, g)?.coords, &e.coords));
        hom = hom.max((r.ad(prod)? - r.ad(gp)? * r.ad(g)?).amax());
    }
    Ok(vec![
        Check::new("law_identity", samples, id, 1e-12),
        Check::new("law_inverse", samples, inv, 1e-12),
        Check::new("ad_homomorphism", samples, hom, tol.max(1e-9)),
    ])
}

/// `(δξ)(g₁,g₂,g₃) = 0` with the trivial action.
pub fn verify_group_two_cocycle(
    r: &GroupRealization,
    xi: &dyn Fn(&[f64], &[f64]) -> f64,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<Check> {
    let mut rng = rng(seed);
    let vals = sample_many(r, &mut rng, samples, |rng| {
        let t = [r.sample(rng), r.sample(rng), r.sample(rng)];
        group_coboundary(
            r,
            Action::Trivial,
            2,
            &|gs| Ok(vec![xi(&gs[0].coords, &gs[1].coords)]),
            &t,
        )
    })?;
    let worst = vals.iter().map(|v| v[0].abs()).fold(0.0, f64::max);
    Ok(Check::new("two_cocycle_identity", samples, worst, tol))
}

/// `δ(δγ) = 0` for random smooth 1-cochains.
pub fn verify_nilpotency(
    r: &GroupRealization,
    action: Action,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<Check> {
    let mut rng = rng(seed);
    let out = match action {
        Action::Trivial => 1,
        Action::Coad => r.dim(),
    };
    let vals = sample_many(r, &mut rng, samples, |rng| {
        let cochain = RandomCochain::new(rng, r.dim(), out);
        let gamma1 = |gs: &[GroupElement]| Ok(cochain.eval(&gs[0].coords));
        let delta = |gs: &[GroupElement]| group_coboundary(r, action, 1, &gamma1, gs);
        let t = [r.sample(rng), r.sample(rng), r.sample(rng)];
        group_coboundary(r, action, 2, &delta, &t)
    })?;
    let worst = vals.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max);
    let name = match action {
        Action::Trivial => "nilpotency_trivial",
        Action::Coad => "nilpotency_coad",
    };
    Ok(Check::new(name, samples, worst, tol))
}

/// `Δ_μ(g) = Coad(g)μ − μ` is a Coad-valued 1-cocycle.
pub fn verify_coboundaries_closed(
    r: &GroupRealization,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<Check> {
    let mut rng = rng(seed);
    let vals = sample_many(r, &mut rng, samples, |rng| {
        let mu: Vec<f64> = (0..r.dim()).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let delta = |gs: &[GroupElement]| symplectic_coboundary_of_lambda(r, &mu, &gs[0]);
        let pair = [r.sample(rng), r.sample(rng)];
        group_coboundary(r, Action::Coad, 1, &delta, &pair)
    })?;
    let worst = vals.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max);
    Ok(Check::new("coboundary_closed", samples, worst, tol))
}

/// `Γ₀` against the antisymmetrized second derivative of `ξ` at `(e, e)`.
pub fn verify_gamma0(r: &GroupRealization, cocycle: &str) -> Result<Check> {
    let c = r.cocycle(cocycle)?;
    let xi = c.xi;
    let res = (gamma_from_xi(r, &|a, b| xi(a, b)) - c.gamma0.matrix().to_f64()).amax();
    Ok(Check::new("gamma0_matches_xi", 1, res, THETA_TOL))
}

/// `F(g'g) = Coad(g')F(g) + F(g')`.
pub fn verify_noether_cocycle(
    r: &GroupRealization,
    cocycle: &str,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<Check> {
    let mut rng = rng(seed);
    let vals = sample_many(r, &mut rng, samples, |rng| {
        let (gp, g) = (r.sample(rng), r.sample(rng));
        let prod = r.law(&gp, &g)?;
        let lhs = noether_invariants(r, cocycle, &prod)?;
        let moved = times(&r.coad(&gp)?, &noether_invariants(r, cocycle, &g)?);
        let fp = noether_invariants(r, cocycle, &gp)?;
        let rhs: Vec<f64> = moved.iter().zip(&fp).map(|(a, b)| a + b).collect();
        Ok(max_diff(&lhs, &rhs))
    })?;
    Ok(Check::new(
        "noether_cocycle",
        samples,
        vals.into_iter().fold(0.0, f64::max),
        tol,
    ))
}

/// `∂F_i/∂g^j(e)` reproduces `Γ₀` (relative error) and is antisymmetric.
pub fn verify_noether_differential(r: &GroupRealization, cocycle: &str) -> Result<Vec<Check>> {
    let c = r.cocycle(cocycle)?;
    let d = noether_differential(r, &|g| noether_invariants(r, cocycle, g))?;
    let g0 = c.gamma0.matrix().to_f64();
    let mut rel = 0.0f64;
    for (a, b) in d.iter().zip(g0.iter()) {
        rel = rel.max((a - b).abs() / b.abs().max(1.0));
    }
    let anti = (&d + d.transpose()).amax();
    Ok(vec![
        Check::new("noether_differential_is_gamma0", 1, rel, DIFFERENTIAL_TOL),
        Check::new(
            "noether_differential_antisymmetric",
            1,
            anti,
            DIFFERENTIAL_TOL,
        ),
    ])
}

/// `θ` for `ξ + ξ_λ` equals `θ` for `ξ` plus `λ⁰_i θ^{L(i)} − dλ`.
pub fn verify_theta_additivity(
    r: &GroupRealization,
    cocycle: &str,
    lambda: &dyn Fn(&[f64]) -> f64,
    samples: usize,
    seed: u64,
) -> Result<Check> {
    let c = r.cocycle(cocycle)?;
    let xi = c.xi;
    let lambda0 = lambda_gradient(r, lambda).value;
    let sum = |a: &[f64], b: &[f64]| -> f64 {
        let coboundary = coboundary_from_lambda(
            r,
            lambda,
            &GroupElement::new(a.to_vec()),
            &GroupElement::new(b.to_vec()),
        )
        .unwrap_or(f64::NAN);
        xi(a, b) + coboundary
    };
    let mut rng = rng(seed);
    let vals = sample_many(r, &mut rng, samples, |rng| {
        let g = r.sample(rng);
        let lhs = theta_for(r, &sum, &g)?.dual_components;
        let base = theta_for(r, &|a, b| xi(a, b), &g)?.dual_components;
        let forms = left_invariant_forms(r, &g)?;
        let dl = theta_gradient(lambda, &g.coords);
        let rhs: Vec<f64> = (0..r.dim())
            .map(|k| {
                base[k]
                    + (0..r.dim())
                        .map(|i| lambda0[i] * forms[(i, k)])
                        .sum::<f64>()
                    - dl[k]
            })
            .collect();
        Ok(max_diff(&lhs, &rhs))
    })?;
    Ok(Check::new(
        "theta_additivity",
        samples,
        vals.into_iter().fold(0.0, f64::max),
        THETA_TOL,
    ))
}

fn theta_gradient(f: &dyn Fn(&[f64]) -> f64, at: &[f64]) -> Vec<f64> {
    (0..at.len())
        .map(|i| {
            let mut p = at.to_vec();
            let mut m = at.to_vec();
            p[i] += super::FD_STEP;
            m[i] -= super::FD_STEP;
            (f(&p) - f(&m)) / (2.0 * super::FD_STEP)
        })
        .collect()
}

/// Action axiom of the extended coadjoint action, and agreement of its
/// `μ_ζ = 1` leaf with `Coad_γ` for `γ = F`.
pub fn verify_extended_coadjoint(
    r: &GroupRealization,
    cocycle: &str,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<Vec<Check>> {
    let deformation = Deformation::named(r, cocycle)?;
    let mut rng = rng(seed);
    let vals = sample_many(r, &mut rng, samples, |rng| {
        let (gp, g) = (r.sample(rng), r.sample(rng));
        let mu: Vec<f64> = (0..r.dim()).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let zeta = rng.gen_range(-2.0..2.0);
        let prod = r.law(&gp, &g)?;
        let (inner, z) = extended_coadjoint(r, cocycle, &g, &mu, zeta)?;
        let (twice, _) = extended_coadjoint(r, cocycle, &gp, &inner, z)?;
        let (once, _) = extended_coadjoint(r, cocycle, &prod, &mu, zeta)?;
        let (leaf, _) = extended_coadjoint(r, cocycle, &g, &mu, 1.0)?;
        let deformed = deformation.act(r, &r.matrix(&g.coords), &mu)?;
        Ok((max_diff(&twice, &once), max_diff(&leaf, &deformed)))
    })?;
    Ok(vec![
        Check::new(
            "extended_coadjoint_action",
            samples,
            vals.iter().map(|v| v.0).fold(0.0, f64::max),
            tol,
        ),
        Check::new(
            "extended_leaf_is_deformed_coad",
            samples,
            vals.iter().map(|v| v.1).fold(0.0, f64::max),
            tol,
        ),
    ])
}

/// `γ_λ` depends on `λ` only through `λ⁰`.
pub fn verify_lambda_independence(
    r: &GroupRealization,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<Check> {
    let mut rng = rng(seed);
    let n = r.dim();
    let c: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
    let lin = c.clone();
    let linear = move |g: &[f64]| lin.iter().zip(g).map(|(a, b)| a * b).sum::<f64>();
    let bent = {
        let c = c.clone();
        move |g: &[f64]| {
            let l: f64 = c.iter().zip(g).map(|(a, b)| a * b).sum();
            l + g.iter().map(|x| x * x).sum::<f64>() + g[0].sin().powi(2)
        }
    };
    let la = lambda_gradient(r, &linear).value;
    let lb = lambda_gradient(r, &bent).value;
    let vals = sample_many(r, &mut rng, samples, |rng| {
        let g = r.sample(rng);
        Ok(max_diff(
            &symplectic_coboundary_of_lambda(r, &la, &g)?,
            &symplectic_coboundary_of_lambda(r, &lb, &g)?,
        ))
    })?;
    Ok(Check::new(
        "gamma_lambda_depends_on_gradient_only",
        samples,
        vals.into_iter().fold(0.0, f64::max),
        tol,
    ))
}

pub fn verify_ad_equivariance(
    r: &GroupRealization,
    lambda0: &[f64],
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<Check> {
    let mut rng = rng(seed);
    let vals = sample_many(r, &mut rng, samples, |rng| {
        let g = r.sample(rng);
        super::ad_equivariance_check(r, lambda0, &g)
    })?;
    Ok(Check::new(
        "ad_equivariance",
        samples,
        vals.into_iter().fold(0.0, f64::max),
        tol,
    ))
}

/// `Coad_{γ+Δ_μ}(g)(μ₀) + μ = Coad_γ(g)(μ + μ₀)`.
pub fn verify_translation_identity(
    r: &GroupRealization,
    deformation: &Deformation,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<Check> {
    let mut rng = rng(seed);
    let n = r.dim();
    let vals = sample_many(r, &mut rng, samples, |rng| {
        let g = r.sample(rng);
        let h = r.matrix(&g.coords);
        let mu: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let mu0: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let mut shifted = deformation.clone();
        let base = shifted.shift.take().unwrap_or_else(|| vec![0.0; n]);
        shifted.shift = Some(base.iter().zip(&mu).map(|(a, b)| a + b).collect());
        let lhs: Vec<f64> = shifted
            .act(r, &h, &mu0)?
            .iter()
            .zip(&mu)
            .map(|(a, b)| a + b)
            .collect();
        let sum: Vec<f64> = mu.iter().zip(&mu0).map(|(a, b)| a + b).collect();
        let rhs = deformation.act(r, &h, &sum)?;
        Ok(max_diff(&lhs, &rhs))
    })?;
    Ok(Check::new(
        "translation_identity",
        samples,
        vals.into_iter().fold(0.0, f64::max),
        tol,
    ))
}

/// `exp(T·X) = e` in the defining representation for each compact datum.
pub fn verify_periods(r: &GroupRealization) -> Vec<Check> {
    r.compact_data
        .iter()
        .map(|d| {
            let m = (r.algebra_matrix(&d.generator.to_f64_vec()) * d.period).exp();
            let n = m.nrows();
            Check::new("compact_period", 1, (m - Mat::identity(n, n)).amax(), 1e-9)
        })
        .collect()
}

/// Everything above, for one realization.
pub fn verify_all(r: &GroupRealization, samples: usize, seed: u64, tol: f64) -> Result<Vec<Check>> {
    let mut out = verify_group_axioms(r, samples, seed, tol)?;
    out.push(verify_nilpotency(r, Action::Trivial, samples, seed, tol)?);
    out.push(verify_nilpotency(r, Action::Coad, samples, seed, tol)?);
    out.push(verify_coboundaries_closed(r, samples, seed, tol)?);
    out.push(verify_lambda_independence(r, samples, seed, tol)?);
    let mut lrng = rng(seed);
    let lambda0: Vec<f64> = (0..r.dim()).map(|_| lrng.gen_range(-2.0..2.0)).collect();
    out.push(verify_ad_equivariance(r, &lambda0, samples, seed, tol)?);
    out.extend(verify_periods(r));
    out.push(verify_translation_identity(
        r,
        &Deformation::none(),
        samples,
        seed,
        tol,
    )?);
    for c in &r.cocycles {
        let prefix = |mut ch: Check| {
            ch.name = format!("{}/{}", c.name, ch.name);
            ch
        };
        let xi = c.xi;
        out.push(prefix(verify_group_two_cocycle(
            r,
            &|a, b| xi(a, b),
            samples,
            seed,
            tol,
        )?));
        out.push(prefix(verify_gamma0(r, c.name)?));
        out.push(prefix(verify_noether_cocycle(
            r, c.name, samples, seed, tol,
        )?));
        out.extend(
            verify_noether_differential(r, c.name)?
                .into_iter()
                .map(prefix),
        );
        let mut trng = rng(seed);
        let w: Vec<f64> = (0..r.dim()).map(|_| trng.gen_range(-1.0..1.0)).collect();
        let lambda = move |g: &[f64]| {
            let s: f64 = w.iter().zip(g).map(|(a, b)| a * b).sum();
            s.sin() + 0.5 * s * s
        };
        out.push(prefix(verify_theta_additivity(
            r, c.name, &lambda, samples, seed,
        )?));
        out.extend(
            verify_extended_coadjoint(r, c.name, samples, seed, tol)?
                .into_iter()
                .map(prefix),
        );
        out.push(prefix(verify_translation_identity(
            r,
            &Deformation::named(r, c.name)?,
            samples,
            seed,
            tol,
        )?));
    }
    Ok(out)
}

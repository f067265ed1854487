//! Orbit equivalence under the (deformed) coadjoint action: an invariant
//! screen, then a witness search over products of one-parameter subgroups.
//!
//! `same_orbit(μ₁, μ₂)` looks for `h` with `Coad_γ(h)μ₁ = μ₂`.
//! `pseudo_class_equivalent(λ⁰₁, λ⁰₂)` and the witness check use the
//! opposite orientation, `λ⁰₁ = Coad_γ(h)λ⁰₂`.

pub mod search;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{CoalgebraVector, LieAlgebra};
use crate::cohomology::AlgebraTwoCocycle;
use crate::error::{LiecoError, Result};
use crate::group::{omega_f64, realization_for_algebra, Deformation, GroupRealization};
use crate::symplectic::presymplectic_matrix;

/// Relative resolution of the Casimir screen.
pub const CASIMIR_RESOLUTION: f64 = 1e-6;
/// Residual vector used when a trial point leaves the chart.
const CHART_PENALTY: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitStatus {
    Equivalent,
    Distinct,
    Inconclusive,
}

impl OrbitStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            OrbitStatus::Equivalent => "Equivalent",
            OrbitStatus::Distinct => "Distinct",
            OrbitStatus::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparatingInvariant {
    pub name: String,
    pub first: f64,
    pub second: f64,
    pub resolution: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitVerdict {
    pub status: OrbitStatus,
    /// `t` with `h = exp(t₁X₁)···exp(tₙXₙ)`.
    pub witness: Option<Vec<f64>>,
    pub separating_invariant: Option<SeparatingInvariant>,
    pub residual: f64,
    /// Restart index that produced the witness.
    pub restart: Option<usize>,
    pub evaluations: usize,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantProfile {
    pub omega_rank: usize,
    pub casimir_values: Vec<(String, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchParams {
    pub tol: f64,
    pub restarts: usize,
    pub budget: usize,
    pub seed: u64,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            restarts: 32,
            budget: 2000,
            seed: 42,
        }
    }
}

/// How the coadjoint action is deformed.
#[derive(Debug, Clone, Copy)]
pub enum CocycleChoice<'a> {
    None,
    /// A cocycle declared by the realization.
    Named(&'a str),
    /// An algebra cocycle, integrated through the declared cocycles.
    Algebra(&'a AlgebraTwoCocycle),
}

pub fn resolve_choice(
    realization: &GroupRealization,
    choice: CocycleChoice<'_>,
) -> Result<Deformation> {
    match choice {
        CocycleChoice::None => Ok(Deformation::none()),
        CocycleChoice::Named(name) => Deformation::named(realization, name),
        CocycleChoice::Algebra(gamma) => {
            if gamma.dim() != realization.dim() {
                return Err(LiecoError::DimensionMismatch {
                    expected: realization.dim(),
                    found: gamma.dim(),
                });
            }
            gamma.check_closed(&realization.algebra)?;
            Deformation::resolve(realization, gamma)
        }
    }
}

type ScalarFn = Box<dyn Fn(&[f64]) -> f64>;
type Invariant = (String, ScalarFn);

/// Orbit invariants valid for the given deformation, from catalog metadata
/// and the translation identity.
pub fn casimirs_for(realization: &GroupRealization, deformation: &Deformation) -> Vec<Invariant> {
    let shift = deformation
        .shift
        .clone()
        .unwrap_or_else(|| vec![0.0; realization.dim()]);
    let (list, scale) = match deformation.terms.as_slice() {
        [] => (&realization.casimirs, 1.0),
        [(idx, c)] => (&realization.cocycles[*idx].casimirs, *c),
        _ => return Vec::new(),
    };
    list.iter()
        .map(|c| {
            let eval = c.eval;
            let shift = shift.clone();
            let f: ScalarFn = Box::new(move |mu: &[f64]| {
                let moved: Vec<f64> = mu.iter().zip(&shift).map(|(a, b)| a + b).collect();
                eval(&moved, scale)
            });
            (c.name.to_string(), f)
        })
        .collect()
}

pub fn orbit_invariants(
    algebra: &LieAlgebra,
    gamma: Option<&AlgebraTwoCocycle>,
    mu: &CoalgebraVector,
) -> Result<InvariantProfile> {
    let omega_rank = presymplectic_matrix(algebra, mu, gamma)?.rank;
    let casimir_values = match realization_for_algebra(algebra)? {
        Some(r) => {
            let deformation = match gamma {
                Some(g) => Deformation::resolve(r, g)?,
                None => Deformation::none(),
            };
            let m = mu.to_f64();
            casimirs_for(r, &deformation)
                .into_iter()
                .map(|(name, f)| (name, f(&m)))
                .collect()
        }
        None => Vec::new(),
    };
    Ok(InvariantProfile {
        omega_rank,
        casimir_values,
    })
}

fn differs(a: f64, b: f64) -> bool {
    (a - b).abs() > CASIMIR_RESOLUTION * 1f64.max(a.abs()).max(b.abs())
}

fn check_len(realization: &GroupRealization, v: &CoalgebraVector) -> Result<()> {
    if v.dim() != realization.dim() {
        return Err(LiecoError::DimensionMismatch {
            expected: realization.dim(),
            found: v.dim(),
        });
    }
    Ok(())
}

/// `Coad_γ(h(t))μ` for the product of exponentials `h(t)`.
pub fn deformed_action_at(
    realization: &GroupRealization,
    deformation: &Deformation,
    t: &[f64],
    mu: &[f64],
) -> Result<Vec<f64>> {
    let h = realization.product_of_exponentials(t);
    deformation.act(realization, &h, mu)
}

/// Decides whether `μ₂` lies on the `Coad_γ` orbit of `μ₁`.
pub fn same_orbit(
    realization: &GroupRealization,
    choice: CocycleChoice<'_>,
    mu1: &CoalgebraVector,
    mu2: &CoalgebraVector,
    params: &SearchParams,
) -> Result<OrbitVerdict> {
    check_len(realization, mu1)?;
    check_len(realization, mu2)?;
    let deformation = resolve_choice(realization, choice)?;
    let n = realization.dim();
    let mut notes: Vec<String> = realization.advisory.iter().map(|s| s.to_string()).collect();
    let verdict =
        |status, witness, sep, residual, restart, evaluations, notes: &mut Vec<String>| {
            OrbitVerdict {
                status,
                witness,
                separating_invariant: sep,
                residual,
                restart,
                evaluations,
                notes: std::mem::take(notes),
            }
        };

    if mu1 == mu2 {
        return Ok(verdict(
            OrbitStatus::Equivalent,
            Some(vec![0.0; n]),
            None,
            0.0,
            Some(0),
            0,
            &mut notes,
        ));
    }

    let gamma = deformation.gamma.as_ref();
    let r1 = presymplectic_matrix(&realization.algebra, mu1, gamma)?.rank;
    let r2 = presymplectic_matrix(&realization.algebra, mu2, gamma)?.rank;
    if r1 != r2 {
        let sep = SeparatingInvariant {
            name: "omega_rank".into(),
            first: r1 as f64,
            second: r2 as f64,
            resolution: 0.0,
        };
        return Ok(verdict(
            OrbitStatus::Distinct,
            None,
            Some(sep),
            f64::NAN,
            None,
            0,
            &mut notes,
        ));
    }
    if r1 == 0 {
        // A zero-dimensional orbit of a connected group is a single point.
        let d = crate::rational::to_f64(&crate::rational::norm_sq(
            &mu1.0
                .iter()
                .zip(&mu2.0)
                .map(|(a, b)| a - b)
                .collect::<Vec<_>>(),
        ))
        .sqrt();
        let sep = SeparatingInvariant {
            name: "fixed_point_distance".into(),
            first: 0.0,
            second: d,
            resolution: 0.0,
        };
        return Ok(verdict(
            OrbitStatus::Distinct,
            None,
            Some(sep),
            d,
            None,
            0,
            &mut notes,
        ));
    }

    let (m1, m2) = (mu1.to_f64(), mu2.to_f64());
    for (name, f) in casimirs_for(realization, &deformation) {
        let (a, b) = (f(&m1), f(&m2));
        if differs(a, b) {
            let sep = SeparatingInvariant {
                name,
                first: a,
                second: b,
                resolution: CASIMIR_RESOLUTION,
            };
            return Ok(verdict(
                OrbitStatus::Distinct,
                None,
                Some(sep),
                f64::NAN,
                None,
                0,
                &mut notes,
            ));
        }
    }

    let residual = |t: &[f64]| -> Vec<f64> {
        match deformed_action_at(realization, &deformation, t, &m1) {
            Ok(v) => v.iter().zip(&m2).map(|(a, b)| a - b).collect(),
            Err(_) => vec![CHART_PENALTY; n],
        }
    };
    let mut best: Option<search::Minimum> = None;
    let mut total = 0;
    for k in 0..params.restarts.max(1) {
        let start = search::start_point(k, params.seed, &realization.search_box);
        let m = search::levenberg_marquardt(
            &residual,
            &start,
            &realization.search_box,
            params.tol,
            params.budget,
        );
        total += m.evaluations;
        if m.residual < params.tol {
            let res = m.residual;
            return Ok(verdict(
                OrbitStatus::Equivalent,
                Some(m.x),
                None,
                res,
                Some(k),
                total,
                &mut notes,
            ));
        }
        if best.as_ref().is_none_or(|b| m.residual < b.residual) {
            best = Some(m);
        }
    }
    let best = best.expect("at least one restart");
    notes.push(format!(
        "no witness below tol {:e} after {} restarts; orbit membership undecided",
        params.tol,
        params.restarts.max(1)
    ));
    Ok(verdict(
        OrbitStatus::Inconclusive,
        None,
        None,
        best.residual,
        None,
        total,
        &mut notes,
    ))
}

/// Pseudo-cohomology equivalence: is `λ⁰₁ = Coad_γ(h)λ⁰₂` for some `h`,
/// with `γ = 0` (no base cocycle) or `γ = F` (Noether invariants of ξ)?
pub fn pseudo_class_equivalent(
    realization: &GroupRealization,
    base_cocycle: Option<&str>,
    lambda1: &CoalgebraVector,
    lambda2: &CoalgebraVector,
    params: &SearchParams,
) -> Result<OrbitVerdict> {
    let choice = match base_cocycle {
        Some(name) => CocycleChoice::Named(name),
        None => CocycleChoice::None,
    };
    pseudo_class_equivalent_with(realization, choice, lambda1, lambda2, params)
}

/// As [`pseudo_class_equivalent`], with the deformation given by any
/// [`CocycleChoice`]. The witness satisfies `λ⁰₁ = Coad_γ(h)λ⁰₂`.
pub fn pseudo_class_equivalent_with(
    realization: &GroupRealization,
    choice: CocycleChoice<'_>,
    lambda1: &CoalgebraVector,
    lambda2: &CoalgebraVector,
    params: &SearchParams,
) -> Result<OrbitVerdict> {
    same_orbit(realization, choice, lambda2, lambda1, params)
}

/// `max(‖Coad_γ(h)λ⁰₂ − λ⁰₁‖, ‖Ad(h⁻¹)ᵀ Ω(λ⁰₂) Ad(h⁻¹) − Ω(λ⁰₁)‖_max)`,
/// with `Ω` including `Γ`.
pub fn symplectomorphism_witness_check(
    realization: &GroupRealization,
    choice: CocycleChoice<'_>,
    lambda1: &[f64],
    lambda2: &[f64],
    witness: &[f64],
) -> Result<f64> {
    let n = realization.dim();
    for len in [lambda1.len(), lambda2.len(), witness.len()] {
        if len != n {
            return Err(LiecoError::DimensionMismatch {
                expected: n,
                found: len,
            });
        }
    }
    let deformation = resolve_choice(realization, choice)?;
    let h = realization.product_of_exponentials(witness);
    let moved = deformation.act(realization, &h, lambda2)?;
    let a = moved
        .iter()
        .zip(lambda1)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt();
    let gamma = deformation.gamma_f64();
    let inv = h
        .try_inverse()
        .ok_or_else(|| LiecoError::ChartOverflow("singular witness".into()))?;
    let ad_inv = realization.ad_of_matrix(&inv);
    let pulled =
        ad_inv.transpose() * omega_f64(&realization.algebra, gamma.as_ref(), lambda2) * &ad_inv;
    let b = (pulled - omega_f64(&realization.algebra, gamma.as_ref(), lambda1)).amax();
    Ok(a.max(b))
}

/// Largest relative change of a declared invariant along random
/// `Coad_γ` moves of `μ`; small values confirm it is an orbit invariant.
pub fn invariant_flow_residual(
    realization: &GroupRealization,
    choice: CocycleChoice<'_>,
    invariant: &str,
    mu: &[f64],
    samples: usize,
    seed: u64,
) -> Result<f64> {
    let deformation = resolve_choice(realization, choice)?;
    let (_, f) = casimirs_for(realization, &deformation)
        .into_iter()
        .find(|(name, _)| name == invariant)
        .ok_or_else(|| LiecoError::UnknownName(invariant.to_string()))?;
    let base = f(mu);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let t: Vec<f64> = realization
            .chart_box
            .iter()
            .map(|&(lo, hi)| rng.gen_range(lo..=hi))
            .collect();
        let moved = deformed_action_at(realization, &deformation, &t, mu)?;
        worst = worst.max((f(&moved) - base).abs() / base.abs().max(1.0));
    }
    Ok(worst)
}

/// `‖Coad_γ(h)μ − ν‖` for a witness `t`.
pub fn orbit_residual(
    realization: &GroupRealization,
    choice: CocycleChoice<'_>,
    mu: &[f64],
    nu: &[f64],
    witness: &[f64],
) -> Result<f64> {
    let deformation = resolve_choice(realization, choice)?;
    let moved = deformed_action_at(realization, &deformation, witness, mu)?;
    Ok((DVector::from_column_slice(&moved) - DVector::from_column_slice(nu)).norm())
}

#[cfg(test)]
mod tests;

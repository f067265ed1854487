//! Presymplectic forms `ω_ij = Γ_ij + λ⁰_k C^k_ij`, characteristic
//! subalgebras, the deformed infinitesimal coadjoint action and the
//! integrality test for compact isotropy directions.

use num_traits::Zero;

use crate::algebra::{AlgebraVector, CoalgebraVector, LieAlgebra};
use crate::cohomology::{coboundary_of, AlgebraTwoCocycle};
use crate::error::{LiecoError, Result};
use crate::linalg::QMatrix;
use crate::rational::{to_f64, Q};

/// Absolute tolerance for membership of `λ⁰(X)·T` in `2πℤ`.
pub const INTEGRALITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresymplecticForm {
    pub omega: QMatrix,
    pub lambda0: CoalgebraVector,
    pub gamma: Option<AlgebraTwoCocycle>,
    pub rank: usize,
    pub basis: SymplecticBasis,
}

/// Darboux-type basis: `ω(e_a, f_b) = δ_ab`, `ω(e_a, e_b) = ω(f_a, f_b) = 0`,
/// and the kernel vectors pair to zero with everything.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticBasis {
    pub pairs: Vec<(Vec<Q>, Vec<Q>)>,
    pub kernel: Vec<Vec<Q>>,
}

impl SymplecticBasis {
    /// Columns `e_1..e_r, f_1..f_r, k_1..k_s`.
    pub fn as_matrix(&self, dim: usize) -> QMatrix {
        let mut cols: Vec<Vec<Q>> = self.pairs.iter().map(|(e, _)| e.clone()).collect();
        cols.extend(self.pairs.iter().map(|(_, f)| f.clone()));
        cols.extend(self.kernel.iter().cloned());
        QMatrix::from_cols(&cols, dim)
    }
}

fn form(omega: &QMatrix, u: &[Q], v: &[Q]) -> Q {
    crate::rational::dot(u, &omega.mul_vec(v))
}

/// Exact symplectic Gram-Schmidt on the standard basis.
pub fn symplectic_basis(omega: &QMatrix) -> SymplecticBasis {
    let n = omega.rows();
    let mut pool: Vec<Vec<Q>> = QMatrix::identity(n).to_rows();
    let mut pairs = Vec::new();
    loop {
        let mut found = None;
        'search: for a in 0..pool.len() {
            for b in a + 1..pool.len() {
                if !form(omega, &pool[a], &pool[b]).is_zero() {
                    found = Some((a, b));
                    break 'search;
                }
            }
        }
        let Some((a, b)) = found else { break };
        let w = form(omega, &pool[a], &pool[b]);
        let e = pool[a].clone();
        let f: Vec<Q> = pool[b].iter().map(|x| x / &w).collect();
        pool.remove(b);
        pool.remove(a);
        for v in pool.iter_mut() {
            // v - ω(v,f) e + ω(v,e) f is ω-orthogonal to both e and f
            let vf = form(omega, v, &f);
            let ve = form(omega, v, &e);
            for ((x, ei), fi) in v.iter_mut().zip(&e).zip(&f) {
                *x = &*x - &vf * ei + &ve * fi;
            }
        }
        pairs.push((e, f));
    }
    SymplecticBasis {
        pairs,
        kernel: pool,
    }
}

fn check_dim(algebra: &LieAlgebra, len: usize) -> Result<()> {
    if len != algebra.dim() {
        return Err(LiecoError::DimensionMismatch {
            expected: algebra.dim(),
            found: len,
        });
    }
    Ok(())
}

pub fn presymplectic_matrix(
    algebra: &LieAlgebra,
    lambda0: &CoalgebraVector,
    gamma: Option<&AlgebraTwoCocycle>,
) -> Result<PresymplecticForm> {
    check_dim(algebra, lambda0.dim())?;
    let mut omega = coboundary_of(algebra, lambda0)?.matrix().clone();
    if let Some(g) = gamma {
        check_dim(algebra, g.dim())?;
        g.check_closed(algebra)?;
        omega = omega.add(g.matrix());
    }
    let basis = symplectic_basis(&omega);
    Ok(PresymplecticForm {
        rank: 2 * basis.pairs.len(),
        omega,
        lambda0: lambda0.clone(),
        gamma: gamma.cloned(),
        basis,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicSubalgebra {
    pub basis: Vec<AlgebraVector>,
    /// Whether the kernel is closed under the bracket. Checked only for
    /// the undeformed case, where it is the isotropy algebra of `λ⁰`.
    pub closed_under_bracket: Option<bool>,
}

/// Exact kernel of `ω`, in nullspace order.
pub fn characteristic_subalgebra(
    algebra: &LieAlgebra,
    lambda0: &CoalgebraVector,
    gamma: Option<&AlgebraTwoCocycle>,
) -> Result<CharacteristicSubalgebra> {
    let form = presymplectic_matrix(algebra, lambda0, gamma)?;
    let basis: Vec<AlgebraVector> = form
        .omega
        .nullspace()
        .into_iter()
        .map(AlgebraVector)
        .collect();
    let undeformed = gamma.is_none_or(AlgebraTwoCocycle::is_zero);
    let closed_under_bracket = if undeformed {
        Some(spans_closed(algebra, &basis)?)
    } else {
        None
    };
    Ok(CharacteristicSubalgebra {
        basis,
        closed_under_bracket,
    })
}

fn spans_closed(algebra: &LieAlgebra, basis: &[AlgebraVector]) -> Result<bool> {
    let rows: Vec<Vec<Q>> = basis.iter().map(|v| v.0.clone()).collect();
    let rank = if rows.is_empty() {
        0
    } else {
        QMatrix::from_rows(&rows).rank()
    };
    for a in 0..basis.len() {
        for b in a + 1..basis.len() {
            let z = algebra.bracket(&basis[a], &basis[b])?;
            if z.is_zero() {
                continue;
            }
            let mut trial = rows.clone();
            trial.push(z.0);
            if QMatrix::from_rows(&trial).rank() > rank {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The isotropy algebra of `λ⁰` computed from the coadjoint action:
/// `{Y : coad Y (λ⁰) = 0}`.
pub fn coad_isotropy_kernel(
    algebra: &LieAlgebra,
    lambda0: &CoalgebraVector,
) -> Result<Vec<AlgebraVector>> {
    check_dim(algebra, lambda0.dim())?;
    let n = algebra.dim();
    let cols: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            algebra
                .coad(&AlgebraVector::basis(n, i), lambda0)
                .map(|v| v.0)
        })
        .collect::<Result<_>>()?;
    let m = QMatrix::from_cols(&cols, n);
    Ok(m.nullspace().into_iter().map(AlgebraVector).collect())
}

/// `coad_γ X (μ) = coad X (μ) + Γ(X, ·)`.
pub fn coad_deformed_infinitesimal(
    algebra: &LieAlgebra,
    gamma: Option<&AlgebraTwoCocycle>,
    x: &AlgebraVector,
    mu: &CoalgebraVector,
) -> Result<CoalgebraVector> {
    let base = algebra.coad(x, mu)?;
    match gamma {
        None => Ok(base),
        Some(g) => {
            check_dim(algebra, g.dim())?;
            let shift = g.contract_left(x);
            Ok(CoalgebraVector(
                base.0.iter().zip(&shift.0).map(|(a, b)| a + b).collect(),
            ))
        }
    }
}

/// `ω_ν(X, Y) = ν([X, Y]) + Γ(X, Y)`.
pub fn orbit_symplectic_form_at(
    algebra: &LieAlgebra,
    gamma: Option<&AlgebraTwoCocycle>,
    nu: &CoalgebraVector,
    x: &AlgebraVector,
    y: &AlgebraVector,
) -> Result<Q> {
    check_dim(algebra, nu.dim())?;
    let mut value = nu.pair(&algebra.bracket(x, y)?);
    if let Some(g) = gamma {
        check_dim(algebra, g.dim())?;
        value += g.eval(x, y);
    }
    Ok(value)
}

/// A compact one-parameter subgroup: `exp(period · generator) = e`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompactGeneratorDatum {
    pub generator: AlgebraVector,
    pub period: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum IntegralityDetail {
    Checked {
        generator: AlgebraVector,
        period: f64,
        /// `λ⁰(X) · T`.
        value: f64,
        /// `value / 2π`.
        winding: f64,
        integral: bool,
    },
    Skipped {
        generator: AlgebraVector,
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralityReport {
    pub integral: bool,
    pub details: Vec<IntegralityDetail>,
    /// Set when several compact directions were checked independently.
    pub note: Option<String>,
}

pub fn integrality_check(
    algebra: &LieAlgebra,
    lambda0: &CoalgebraVector,
    compact_data: &[CompactGeneratorDatum],
) -> Result<IntegralityReport> {
    let form = presymplectic_matrix(algebra, lambda0, None)?;
    let mut details = Vec::new();
    let mut integral = true;
    let mut checked = 0;
    for datum in compact_data {
        check_dim(algebra, datum.generator.dim())?;
        if datum.period.is_nan() || datum.period <= 0.0 {
            details.push(IntegralityDetail::Skipped {
                generator: datum.generator.clone(),
                reason: "period must be positive".into(),
            });
            continue;
        }
        let in_kernel = form
            .omega
            .mul_vec(&datum.generator.0)
            .iter()
            .all(Zero::is_zero);
        if !in_kernel {
            details.push(IntegralityDetail::Skipped {
                generator: datum.generator.clone(),
                reason: "generator is not in the characteristic subalgebra".into(),
            });
            continue;
        }
        let value = to_f64(&lambda0.pair(&datum.generator)) * datum.period;
        let winding = value / std::f64::consts::TAU;
        let ok = (value - winding.round() * std::f64::consts::TAU).abs() < INTEGRALITY_TOL;
        integral &= ok;
        checked += 1;
        details.push(IntegralityDetail::Checked {
            generator: datum.generator.clone(),
            period: datum.period,
            value,
            winding,
            integral: ok,
        });
    }
    let note = (checked > 1).then(|| {
        "compact directions checked independently and conjoined; incommensurate periods are not analysed jointly"
            .to_string()
    });
    Ok(IntegralityReport {
        integral,
        details,
        note,
    })
}

//! Concrete matrix Lie groups in coordinates, group cochains and the
//! group-level objects built from a 2-cocycle `ξ`: the quantization form
//! `Θ`, Noether invariants `F`, and the (deformed) coadjoint action.
//!
//! Every realization is a matrix group. Coordinates are charted by an
//! `embed` map whose differential at the origin sends the coordinate axis
//! `i` to the basis matrix `E_i`, so coordinate derivatives at the
//! identity are components in the algebra basis. `Coad(g) = Ad(g⁻¹)ᵀ`
//! acting on dual component columns.

mod catalog;
mod verify;

pub use catalog::{catalog, realization, realization_for_algebra, self_test};
pub use verify::*;

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::algebra::LieAlgebra;
use crate::cohomology::{coboundary_matrix, h2_decompose, AlgebraTwoCocycle};
use crate::error::{LiecoError, Result};
use crate::linalg::QMatrix;
use crate::rational::{to_f64, vec_to_f64};
use crate::symplectic::CompactGeneratorDatum;

/// Uniform finite-difference step.
pub const FD_STEP: f64 = 1e-6;

pub type Mat = DMatrix<f64>;
pub type Xi = fn(&[f64], &[f64]) -> f64;
pub type Lambda = fn(&[f64]) -> f64;
pub type ClosedNoether = fn(&GroupRealization, &[f64]) -> Vec<f64>;

#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    pub coords: Vec<f64>,
    /// `θ` with `ζ = e^{iθ}`, for elements of a U(1) extension.
    pub phase: Option<f64>,
}

impl GroupElement {
    pub fn new(coords: Vec<f64>) -> Self {
        Self {
            coords,
            phase: None,
        }
    }
}

/// A polynomial orbit invariant. `scale` is the multiplier of the
/// cocycle the invariant belongs to (ignored for undeformed invariants).
#[derive(Clone)]
pub struct Casimir {
    pub name: &'static str,
    pub eval: fn(&[f64], f64) -> f64,
}

impl std::fmt::Debug for Casimir {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name)
    }
}

#[derive(Clone)]
pub struct GroupCocycle {
    pub name: &'static str,
    pub xi: Xi,
    pub lambda: Option<Lambda>,
    pub gamma0: AlgebraTwoCocycle,
    pub noether: Option<ClosedNoether>,
    pub casimirs: Vec<Casimir>,
}

impl std::fmt::Debug for GroupCocycle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupCocycle")
            .field("name", &self.name)
            .field("gamma0", &self.gamma0)
            .finish_non_exhaustive()
    }
}

pub struct GroupRealization {
    pub name: &'static str,
    pub algebra: LieAlgebra,
    pub coord_names: Vec<&'static str>,
    embed: fn(&[f64]) -> Mat,
    extract: fn(&GroupRealization, &Mat) -> Result<Vec<f64>>,
    basis: Vec<Mat>,
    projector: Mat,
    pub cocycles: Vec<GroupCocycle>,
    pub compact_data: Vec<CompactGeneratorDatum>,
    /// Sampling box, where coordinate extraction is known to be stable.
    pub chart_box: Vec<(f64, f64)>,
    /// Box for witness parameters of products of exponentials.
    pub search_box: Vec<(f64, f64)>,
    pub casimirs: Vec<Casimir>,
    pub advisory: Option<&'static str>,
}

impl std::fmt::Debug for GroupRealization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupRealization")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .field("cocycles", &self.cocycles)
            .finish_non_exhaustive()
    }
}

impl GroupRealization {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn new(
        name: &'static str,
        algebra: LieAlgebra,
        coord_names: Vec<&'static str>,
        embed: fn(&[f64]) -> Mat,
        extract: fn(&GroupRealization, &Mat) -> Result<Vec<f64>>,
        basis: Vec<Mat>,
        chart_box: Vec<(f64, f64)>,
        search_box: Vec<(f64, f64)>,
    ) -> Self {
        let m = basis[0].len();
        let b = Mat::from_fn(m, basis.len(), |r, c| basis[c].as_slice()[r]);
        let gram = b.transpose() * &b;
        let projector = gram.try_inverse().expect("basis matrices are independent") * b.transpose();
        Self {
            name,
            algebra,
            coord_names,
            embed,
            extract,
            basis,
            projector,
            cocycles: Vec::new(),
            compact_data: Vec::new(),
            chart_box,
            search_box,
            casimirs: Vec::new(),
            advisory: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(vec![0.0; self.dim()])
    }

    pub fn basis_matrices(&self) -> &[Mat] {
        &self.basis
    }

    pub fn matrix(&self, coords: &[f64]) -> Mat {
        (self.embed)(coords)
    }

    pub fn extract(&self, m: &Mat) -> Result<Vec<f64>> {
        (self.extract)(self, m)
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if g.coords.len() != self.dim() {
            return Err(LiecoError::DimensionMismatch {
                expected: self.dim(),
                found: g.coords.len(),
            });
        }
        if g.coords.iter().any(|x| !x.is_finite()) {
            return Err(LiecoError::ChartOverflow("non-finite coordinate".into()));
        }
        Ok(())
    }

    /// `g' * g`; phases are dropped (see [`extended_law`]).
    pub fn law(&self, gp: &GroupElement, g: &GroupElement) -> Result<GroupElement> {
        self.check(gp)?;
        self.check(g)?;
        let m = self.matrix(&gp.coords) * self.matrix(&g.coords);
        Ok(GroupElement::new(self.extract(&m)?))
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        let m = self
            .matrix(&g.coords)
            .try_inverse()
            .ok_or_else(|| LiecoError::ChartOverflow("singular group matrix".into()))?;
        Ok(GroupElement::new(self.extract(&m)?))
    }

    /// Components of a matrix in the span of the basis matrices.
    pub fn project(&self, m: &Mat) -> DVector<f64> {
        &self.projector * DVector::from_column_slice(m.as_slice())
    }

    pub fn algebra_matrix(&self, x: &[f64]) -> Mat {
        let n = self.basis[0].nrows();
        x.iter()
            .zip(&self.basis)
            .fold(Mat::zeros(n, n), |acc, (c, e)| acc + e * *c)
    }

    /// `Ad(M)`: column `j` holds the components of `M E_j M⁻¹`.
    pub fn ad_of_matrix(&self, m: &Mat) -> Mat {
        let inv = m
            .clone()
            .try_inverse()
            .expect("group matrices are invertible");
        let n = self.dim();
        let mut out = Mat::zeros(n, n);
        for (j, e) in self.basis.iter().enumerate() {
            out.set_column(j, &self.project(&(m * e * &inv)));
        }
        out
    }

    /// `Coad(M) = Ad(M⁻¹)ᵀ`.
    pub fn coad_of_matrix(&self, m: &Mat) -> Mat {
        let inv = m
            .clone()
            .try_inverse()
            .expect("group matrices are invertible");
        self.ad_of_matrix(&inv).transpose()
    }

    pub fn ad(&self, g: &GroupElement) -> Result<Mat> {
        self.check(g)?;
        Ok(self.ad_of_matrix(&self.matrix(&g.coords)))
    }

    pub fn coad(&self, g: &GroupElement) -> Result<Mat> {
        self.check(g)?;
        Ok(self.coad_of_matrix(&self.matrix(&g.coords)))
    }

    /// `exp(t X)` in chart coordinates.
    pub fn exp_map(&self, x: &[f64], t: f64) -> Result<GroupElement> {
        let m = (self.algebra_matrix(x) * t).exp();
        Ok(GroupElement::new(self.extract(&m)?))
    }

    /// `exp(t₁E₁)···exp(tₙEₙ)` as a matrix.
    pub fn product_of_exponentials(&self, t: &[f64]) -> Mat {
        let n = self.basis[0].nrows();
        t.iter()
            .zip(&self.basis)
            .fold(Mat::identity(n, n), |acc, (ti, e)| acc * (e * *ti).exp())
    }

    pub fn cocycle(&self, name: &str) -> Result<&GroupCocycle> {
        self.cocycles
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| LiecoError::UnknownCocycle {
                realization: self.name.to_string(),
                cocycle: name.to_string(),
            })
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> GroupElement {
        GroupElement::new(
            self.chart_box
                .iter()
                .map(|&(lo, hi)| rng.gen_range(lo..=hi))
                .collect(),
        )
    }
}

/// `(g', ζ') * (g, ζ) = (g'g, ζ'ζ e^{iξ(g',g)})`.
pub fn extended_law(
    realization: &GroupRealization,
    cocycle: &GroupCocycle,
    gp: &GroupElement,
    g: &GroupElement,
) -> Result<GroupElement> {
    let mut out = realization.law(gp, g)?;
    let phase =
        gp.phase.unwrap_or(0.0) + g.phase.unwrap_or(0.0) + (cocycle.xi)(&gp.coords, &g.coords);
    out.phase = Some(wrap_phase(phase));
    Ok(out)
}

/// Wraps to `(−π, π]`.
pub fn wrap_phase(theta: f64) -> f64 {
    use std::f64::consts::{PI, TAU};
    let r = theta.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Target module of a group cochain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    /// ℝ with the trivial action (exponents of U(1)-valued cochains).
    Trivial,
    /// 𝒢* with `Coad`.
    Coad,
}

fn act(
    realization: &GroupRealization,
    action: Action,
    g: &GroupElement,
    v: &[f64],
) -> Result<Vec<f64>> {
    match action {
        Action::Trivial => Ok(v.to_vec()),
        Action::Coad => {
            let c = realization.coad(g)?;
            Ok((c * DVector::from_column_slice(v)).as_slice().to_vec())
        }
    }
}

/// `(δγ)(g₁,…,g_{n+1}) = L(g₁)γ(g₂,…) + Σᵢ(−1)ⁱ γ(…,gᵢg_{i+1},…) + (−1)^{n+1} γ(g₁,…,gₙ)`.
pub fn group_coboundary(
    realization: &GroupRealization,
    action: Action,
    n: usize,
    cochain: &dyn Fn(&[GroupElement]) -> Result<Vec<f64>>,
    elements: &[GroupElement],
) -> Result<Vec<f64>> {
    if n > 3 {
        return Err(LiecoError::UnsupportedDegree(n));
    }
    if elements.len() != n + 1 {
        return Err(LiecoError::DimensionMismatch {
            expected: n + 1,
            found: elements.len(),
        });
    }
    let mut total = act(realization, action, &elements[0], &cochain(&elements[1..])?)?;
    let mut add = |sign: f64, v: Vec<f64>| {
        for (t, x) in total.iter_mut().zip(v) {
            *t += sign * x;
        }
    };
    for i in 1..=n {
        let mut args = elements[..i - 1].to_vec();
        args.push(realization.law(&elements[i - 1], &elements[i])?);
        args.extend_from_slice(&elements[i + 1..]);
        add(if i % 2 == 1 { -1.0 } else { 1.0 }, cochain(&args)?);
    }
    add(
        if (n + 1) % 2 == 1 { -1.0 } else { 1.0 },
        cochain(&elements[..n])?,
    );
    Ok(total)
}

/// `ξ_λ(g',g) = λ(g'g) − λ(g') − λ(g)`, with `λ` normalized by `λ(e)`.
pub fn coboundary_from_lambda(
    realization: &GroupRealization,
    lambda: &dyn Fn(&[f64]) -> f64,
    gp: &GroupElement,
    g: &GroupElement,
) -> Result<f64> {
    let l0 = lambda(&realization.identity().coords);
    let l = |x: &[f64]| lambda(x) - l0;
    let prod = realization.law(gp, g)?;
    Ok(l(&prod.coords) - l(&gp.coords) - l(&g.coords))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradientEstimate {
    pub value: Vec<f64>,
    /// Richardson estimate of the truncation error, per component.
    pub error: Vec<f64>,
}

/// `λ⁰_i = ∂λ/∂g^i` at the identity, central differences.
pub fn lambda_gradient(
    realization: &GroupRealization,
    lambda: &dyn Fn(&[f64]) -> f64,
) -> GradientEstimate {
    let n = realization.dim();
    let h = FD_STEP;
    let diff = |i: usize, step: f64| {
        let mut p = vec![0.0; n];
        let mut m = vec![0.0; n];
        p[i] = step;
        m[i] = -step;
        (lambda(&p) - lambda(&m)) / (2.0 * step)
    };
    let mut value = Vec::with_capacity(n);
    let mut error = Vec::with_capacity(n);
    for i in 0..n {
        let d1 = diff(i, h);
        let d2 = diff(i, 2.0 * h);
        value.push(d1);
        error.push((d1 - d2).abs() / 3.0);
    }
    GradientEstimate { value, error }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThetaEvaluation {
    pub base_point: GroupElement,
    pub dual_components: Vec<f64>,
    pub phase_component: f64,
}

/// `θ_k(g) = ∂ξ(g',x)/∂x^k` at `x = g`, with `g' = g⁻¹` held fixed.
pub fn theta_for(
    realization: &GroupRealization,
    xi: &dyn Fn(&[f64], &[f64]) -> f64,
    g: &GroupElement,
) -> Result<ThetaEvaluation> {
    let inv = realization.inverse(g)?;
    let dual_components = central_gradient(&|x: &[f64]| xi(&inv.coords, x), &g.coords);
    Ok(ThetaEvaluation {
        base_point: g.clone(),
        dual_components,
        phase_component: 1.0,
    })
}

pub fn theta_at(
    realization: &GroupRealization,
    cocycle_name: &str,
    g: &GroupElement,
) -> Result<ThetaEvaluation> {
    let c = realization.cocycle(cocycle_name)?;
    theta_for(realization, &c.xi, g)
}

fn central_gradient(f: &dyn Fn(&[f64]) -> f64, at: &[f64]) -> Vec<f64> {
    (0..at.len())
        .map(|i| {
            let mut p = at.to_vec();
            let mut m = at.to_vec();
            p[i] += FD_STEP;
            m[i] -= FD_STEP;
            (f(&p) - f(&m)) / (2.0 * FD_STEP)
        })
        .collect()
}

/// Rows are the left-invariant forms `θ^{L(i)}` at `g` in coordinate
/// components: the inverse of `∂(g*h)/∂h` at `h = e`.
pub fn left_invariant_forms(realization: &GroupRealization, g: &GroupElement) -> Result<Mat> {
    let n = realization.dim();
    let mut jac = Mat::zeros(n, n);
    for i in 0..n {
        let mut p = vec![0.0; n];
        let mut m = vec![0.0; n];
        p[i] = FD_STEP;
        m[i] = -FD_STEP;
        let gp = realization.law(g, &GroupElement::new(p))?;
        let gm = realization.law(g, &GroupElement::new(m))?;
        for k in 0..n {
            jac[(k, i)] = (gp.coords[k] - gm.coords[k]) / (2.0 * FD_STEP);
        }
    }
    jac.try_inverse()
        .ok_or_else(|| LiecoError::ChartOverflow("degenerate chart Jacobian".into()))
}

/// `F_i(g) = Θ(X^R_i)(g) = d/dt [ξ(t eᵢ, g) + ξ(g⁻¹, (t eᵢ)*g)]` at `t = 0`.
pub fn noether_for(
    realization: &GroupRealization,
    xi: &dyn Fn(&[f64], &[f64]) -> f64,
    g: &GroupElement,
) -> Result<Vec<f64>> {
    let n = realization.dim();
    let inv = realization.inverse(g)?;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let value = |t: f64| -> Result<f64> {
            let mut c = vec![0.0; n];
            c[i] = t;
            let h = GroupElement::new(c);
            let hg = realization.law(&h, g)?;
            Ok(xi(&h.coords, &g.coords) + xi(&inv.coords, &hg.coords))
        };
        out.push((value(FD_STEP)? - value(-FD_STEP)?) / (2.0 * FD_STEP));
    }
    Ok(out)
}

/// Noether invariants of a declared cocycle; a catalog closed form, when
/// present, overrides the numerical evaluation.
pub fn noether_invariants(
    realization: &GroupRealization,
    cocycle_name: &str,
    g: &GroupElement,
) -> Result<Vec<f64>> {
    let c = realization.cocycle(cocycle_name)?;
    realization.check(g)?;
    match c.noether {
        Some(f) => Ok(f(realization, &g.coords)),
        None => noether_for(realization, &c.xi, g),
    }
}

/// `∂F_i/∂g^j` at the identity by central differences.
pub fn noether_differential(
    realization: &GroupRealization,
    noether: &dyn Fn(&GroupElement) -> Result<Vec<f64>>,
) -> Result<Mat> {
    let n = realization.dim();
    let mut d = Mat::zeros(n, n);
    for j in 0..n {
        let mut p = vec![0.0; n];
        let mut m = vec![0.0; n];
        p[j] = FD_STEP;
        m[j] = -FD_STEP;
        let fp = noether(&GroupElement::new(p))?;
        let fm = noether(&GroupElement::new(m))?;
        for i in 0..n {
            d[(i, j)] = (fp[i] - fm[i]) / (2.0 * FD_STEP);
        }
    }
    Ok(d)
}

/// Antisymmetrized mixed second derivative of `ξ` at `(e, e)`.
pub fn gamma_from_xi(realization: &GroupRealization, xi: &dyn Fn(&[f64], &[f64]) -> f64) -> Mat {
    let n = realization.dim();
    let h = FD_STEP;
    let mixed = |i: usize, j: usize| {
        let pt = |si: f64, sj: f64| {
            let mut a = vec![0.0; n];
            let mut b = vec![0.0; n];
            a[i] = si * h;
            b[j] = sj * h;
            xi(&a, &b)
        };
        (pt(1.0, 1.0) - pt(1.0, -1.0) - pt(-1.0, 1.0) + pt(-1.0, -1.0)) / (4.0 * h * h)
    };
    Mat::from_fn(n, n, |i, j| {
        if i == j {
            0.0
        } else {
            mixed(i, j) - mixed(j, i)
        }
    })
}

/// `(Coad(g)μ + μ_ζ F(g), μ_ζ)`.
pub fn extended_coadjoint(
    realization: &GroupRealization,
    cocycle_name: &str,
    g: &GroupElement,
    mu: &[f64],
    mu_zeta: f64,
) -> Result<(Vec<f64>, f64)> {
    let f = noether_invariants(realization, cocycle_name, g)?;
    let base = realization.coad(g)? * DVector::from_column_slice(mu);
    Ok((
        base.iter()
            .zip(&f)
            .map(|(b, fi)| b + mu_zeta * fi)
            .collect(),
        mu_zeta,
    ))
}

/// `γ_λ(g) = Coad(g)λ⁰ − λ⁰`.
pub fn symplectic_coboundary_of_lambda(
    realization: &GroupRealization,
    lambda0: &[f64],
    g: &GroupElement,
) -> Result<Vec<f64>> {
    let c = realization.coad(g)? * DVector::from_column_slice(lambda0);
    Ok(c.iter().zip(lambda0).map(|(a, b)| a - b).collect())
}

/// `Ω(λ)_ij = Γ_ij + λ_k C^k_ij` in floats.
pub fn omega_f64(algebra: &LieAlgebra, gamma: Option<&Mat>, lambda: &[f64]) -> Mat {
    let n = algebra.dim();
    let mut m = gamma.cloned().unwrap_or_else(|| Mat::zeros(n, n));
    for (i, j, k, c) in algebra.nonzero_constants() {
        let v = to_f64(c) * lambda[k];
        m[(i, j)] += v;
        m[(j, i)] -= v;
    }
    m
}

/// `‖Ad(g⁻¹)ᵀ Ω(λ⁰) Ad(g⁻¹) − Ω(Coad(g)λ⁰)‖_max`.
pub fn ad_equivariance_check(
    realization: &GroupRealization,
    lambda0: &[f64],
    g: &GroupElement,
) -> Result<f64> {
    let m = realization.matrix(&g.coords);
    realization.check(g)?;
    let ad_inv = realization.ad_of_matrix(&m.clone().try_inverse().expect("invertible"));
    let moved = ad_inv.transpose() * DVector::from_column_slice(lambda0);
    let lhs = ad_inv.transpose() * omega_f64(&realization.algebra, None, lambda0) * &ad_inv;
    let rhs = omega_f64(&realization.algebra, None, moved.as_slice());
    Ok((lhs - rhs).amax())
}

/// An affine deformation `γ(g) = Σ c_a F_a(g) + (Coad(g)μ − μ)` realizing
/// an algebra cocycle `Γ = Σ c_a Γ₀_a + δμ` on a catalog group.
#[derive(Debug, Clone, PartialEq)]
pub struct Deformation {
    pub terms: Vec<(usize, f64)>,
    pub shift: Option<Vec<f64>>,
    pub gamma: Option<AlgebraTwoCocycle>,
}

impl Deformation {
    pub fn none() -> Self {
        Self {
            terms: Vec::new(),
            shift: None,
            gamma: None,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.terms.is_empty() && self.shift.is_none()
    }

    pub fn named(realization: &GroupRealization, name: &str) -> Result<Self> {
        let idx = realization
            .cocycles
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| LiecoError::UnknownCocycle {
                realization: realization.name.to_string(),
                cocycle: name.to_string(),
            })?;
        Ok(Self {
            terms: vec![(idx, 1.0)],
            shift: None,
            gamma: Some(realization.cocycles[idx].gamma0.clone()),
        })
    }

    /// Expresses `Γ` through the realization's declared cocycles plus a
    /// coboundary. Coboundaries are preferred: a trivial `Γ` becomes a pure
    /// shift by the minimal-norm `μ`.
    pub fn resolve(realization: &GroupRealization, gamma: &AlgebraTwoCocycle) -> Result<Self> {
        let algebra = &realization.algebra;
        if gamma.is_zero() {
            return Ok(Self::none());
        }
        let dec = h2_decompose(algebra, gamma)?;
        if let Some(mu) = dec.mu {
            return Ok(Self {
                terms: Vec::new(),
                shift: Some(mu.to_f64()),
                gamma: Some(gamma.clone()),
            });
        }
        let k = realization.cocycles.len();
        let mut cols: Vec<Vec<_>> = realization
            .cocycles
            .iter()
            .map(|c| c.gamma0.to_pair_vector())
            .collect();
        let cob = coboundary_matrix(algebra);
        for c in 0..cob.cols() {
            cols.push(cob.col(c));
        }
        let a = QMatrix::from_cols(&cols, cob.rows());
        let x = a
            .solve(&gamma.to_pair_vector())
            .ok_or_else(|| LiecoError::UnknownCocycle {
                realization: realization.name.to_string(),
                cocycle: "<no declared group cocycle integrates this algebra cocycle>".into(),
            })?;
        let xs = vec_to_f64(&x);
        let terms = xs[..k]
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(i, c)| (i, *c))
            .collect();
        let mu = xs[k..].to_vec();
        let shift = mu.iter().any(|v| *v != 0.0).then_some(mu);
        Ok(Self {
            terms,
            shift,
            gamma: Some(gamma.clone()),
        })
    }

    pub fn gamma_f64(&self) -> Option<Mat> {
        self.gamma.as_ref().map(|g| g.matrix().to_f64())
    }

    /// `γ(h)` for a group matrix `h`.
    pub fn gamma_at(&self, realization: &GroupRealization, h: &Mat) -> Result<Vec<f64>> {
        let n = realization.dim();
        let mut out = vec![0.0; n];
        if !self.terms.is_empty() {
            let g = GroupElement::new(realization.extract(h)?);
            for &(idx, c) in &self.terms {
                let name = realization.cocycles[idx].name;
                let f = noether_invariants(realization, name, &g)?;
                for (o, fi) in out.iter_mut().zip(f) {
                    *o += c * fi;
                }
            }
        }
        if let Some(mu) = &self.shift {
            let moved = realization.coad_of_matrix(h) * DVector::from_column_slice(mu);
            for ((o, a), b) in out.iter_mut().zip(moved.iter()).zip(mu) {
                *o += a - b;
            }
        }
        Ok(out)
    }

    /// `Coad_γ(h)μ = Coad(h)μ + γ(h)`.
    pub fn act(&self, realization: &GroupRealization, h: &Mat, mu: &[f64]) -> Result<Vec<f64>> {
        let base = realization.coad_of_matrix(h) * DVector::from_column_slice(mu);
        if self.is_trivial() {
            return Ok(base.as_slice().to_vec());
        }
        let g = self.gamma_at(realization, h)?;
        Ok(base.iter().zip(g).map(|(a, b)| a + b).collect())
    }
}

#[cfg(test)]
mod tests;

//! Second Lie-algebra cohomology with trivial real coefficients: cocycles,
//! coboundaries, central extensions, pseudo-extensions and Inönü-Wigner
//! contractions.
//!
//! A 2-cochain is an antisymmetric matrix `Γ_ij = Γ(X_i, X_j)`. It is
//! closed when `Γ([X_i,X_j],X_k) + Γ([X_j,X_k],X_i) + Γ([X_k,X_i],X_j) = 0`
//! and it is the coboundary of `μ` when `Γ_ij = μ([X_i, X_j])`. All
//! bases are ordered by the lexicographic order of the `(i, j)`, `i < j`,
//! entries so that reports are reproducible.

use num_traits::Zero;

use crate::algebra::{AlgebraVector, BracketEntry, CoalgebraVector, LieAlgebra, StructureTable};
use crate::error::{LiecoError, Result};
use crate::linalg::QMatrix;
use crate::rational::Q;

/// Antisymmetric bilinear form on the algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraTwoCocycle {
    gamma: QMatrix,
}

/// `(i, j)` pairs with `i < j` in lexicographic order.
pub fn pair_index(dim: usize) -> Vec<(usize, usize)> {
    (0..dim)
        .flat_map(|i| (i + 1..dim).map(move |j| (i, j)))
        .collect()
}

impl AlgebraTwoCocycle {
    pub fn zero(dim: usize) -> Self {
        Self {
            gamma: QMatrix::zeros(dim, dim),
        }
    }

    /// From `(i, j, Γ_ij)` entries; the transpose entries are filled in.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, Q)]) -> Result<Self> {
        let mut gamma = QMatrix::zeros(dim, dim);
        for (i, j, c) in entries {
            if *i >= dim || *j >= dim {
                return Err(LiecoError::DimensionMismatch {
                    expected: dim,
                    found: (*i).max(*j) + 1,
                });
            }
            if i == j {
                if c.is_zero() {
                    continue;
                }
                return Err(LiecoError::NotClosed(format!(
                    "diagonal entry ({i}, {i}) must vanish"
                )));
            }
            let cur = gamma.get(*i, *j).clone();
            if !cur.is_zero() && cur != *c {
                return Err(LiecoError::NotClosed(format!(
                    "conflicting values for entry ({i}, {j})"
                )));
            }
            gamma.set(*i, *j, c.clone());
            gamma.set(*j, *i, -c.clone());
        }
        Ok(Self { gamma })
    }

    pub fn from_matrix(gamma: QMatrix) -> Result<Self> {
        if !gamma.is_antisymmetric() {
            return Err(LiecoError::NotClosed("matrix is not antisymmetric".into()));
        }
        Ok(Self { gamma })
    }

    /// From the upper-triangle coordinates in [`pair_index`] order.
    pub fn from_pair_vector(dim: usize, v: &[Q]) -> Self {
        let mut gamma = QMatrix::zeros(dim, dim);
        for ((i, j), c) in pair_index(dim).into_iter().zip(v) {
            gamma.set(i, j, c.clone());
            gamma.set(j, i, -c.clone());
        }
        Self { gamma }
    }

    pub fn to_pair_vector(&self) -> Vec<Q> {
        pair_index(self.dim())
            .into_iter()
            .map(|(i, j)| self.gamma.get(i, j).clone())
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.gamma.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        self.gamma.get(i, j)
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.gamma
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.is_zero()
    }

    pub fn scaled(&self, s: &Q) -> Self {
        Self {
            gamma: self.gamma.scale(s),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self {
            gamma: self.gamma.add(&other.gamma),
        }
    }

    /// `Γ(X, Y)`.
    pub fn eval(&self, x: &AlgebraVector, y: &AlgebraVector) -> Q {
        let gy = self.gamma.mul_vec(&y.0);
        crate::rational::dot(&x.0, &gy)
    }

    /// `Γ(X, ·)` as a dual vector: `Σ_i X^i Γ_ij`.
    pub fn contract_left(&self, x: &AlgebraVector) -> CoalgebraVector {
        CoalgebraVector(self.gamma.transpose().mul_vec(&x.0))
    }

    /// Cyclic sums for every `i < j < k`; all zero iff closed.
    pub fn closedness_residual(&self, algebra: &LieAlgebra) -> Result<Vec<Q>> {
        if self.dim() != algebra.dim() {
            return Err(LiecoError::DimensionMismatch {
                expected: algebra.dim(),
                found: self.dim(),
            });
        }
        Ok(closedness_matrix(algebra).mul_vec(&self.to_pair_vector()))
    }

    pub fn check_closed(&self, algebra: &LieAlgebra) -> Result<()> {
        let residual = self.closedness_residual(algebra)?;
        let triples = triple_index(algebra.dim());
        if let Some(pos) = residual.iter().position(|r| !r.is_zero()) {
            let (i, j, k) = triples[pos];
            let names = algebra.basis_names();
            return Err(LiecoError::NotClosed(format!(
                "cyclic sum on ({}, {}, {}) is {}",
                names[i],
                names[j],
                names[k],
                crate::rational::format_q(&residual[pos])
            )));
        }
        Ok(())
    }
}

fn triple_index(dim: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            for k in j + 1..dim {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// Linear map from pair coordinates of Γ to the cyclic sums, one row per
/// `i < j < k` triple.
pub fn closedness_matrix(algebra: &LieAlgebra) -> QMatrix {
    let n = algebra.dim();
    let pairs = pair_index(n);
    let col_of = |a: usize, b: usize| -> Option<(usize, bool)> {
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Less => pairs.iter().position(|&p| p == (a, b)).map(|c| (c, false)),
            std::cmp::Ordering::Greater => {
                pairs.iter().position(|&p| p == (b, a)).map(|c| (c, true))
            }
        }
    };
    let triples = triple_index(n);
    let mut m = QMatrix::zeros(triples.len(), pairs.len());
    for (row, &(i, j, k)) in triples.iter().enumerate() {
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for mm in 0..n {
                let coeff = algebra.constant(a, b, mm);
                if coeff.is_zero() {
                    continue;
                }
                if let Some((col, flip)) = col_of(mm, c) {
                    let delta = if flip { -coeff } else { coeff };
                    let v = m.get(row, col) + delta;
                    m.set(row, col, v);
                }
            }
        }
    }
    m
}

/// Matrix of `μ ↦ Γ_μ`, `(Γ_μ)_ij = Σ_k μ_k C^k_ij`: rows are pairs,
/// columns dual coordinates.
pub fn coboundary_matrix(algebra: &LieAlgebra) -> QMatrix {
    let n = algebra.dim();
    let pairs = pair_index(n);
    let mut m = QMatrix::zeros(pairs.len(), n);
    for (row, &(i, j)) in pairs.iter().enumerate() {
        for k in 0..n {
            m.set(row, k, algebra.constant(i, j, k));
        }
    }
    m
}

/// The coboundary `Γ_μ(X, Y) = μ([X, Y])`.
pub fn coboundary_of(algebra: &LieAlgebra, mu: &CoalgebraVector) -> Result<AlgebraTwoCocycle> {
    if mu.dim() != algebra.dim() {
        return Err(LiecoError::DimensionMismatch {
            expected: algebra.dim(),
            found: mu.dim(),
        });
    }
    let v = coboundary_matrix(algebra).mul_vec(&mu.0);
    Ok(AlgebraTwoCocycle::from_pair_vector(algebra.dim(), &v))
}

/// Basis of Z².
pub fn cocycle_space(algebra: &LieAlgebra) -> Vec<AlgebraTwoCocycle> {
    let n = algebra.dim();
    let constraints = closedness_matrix(algebra);
    let basis = if constraints.rows() == 0 {
        QMatrix::identity(constraints.cols()).to_rows()
    } else {
        constraints.nullspace()
    };
    basis
        .iter()
        .map(|v| AlgebraTwoCocycle::from_pair_vector(n, v))
        .collect()
}

/// Basis of B², in reduced echelon form on pair coordinates.
pub fn coboundary_space(algebra: &LieAlgebra) -> Vec<AlgebraTwoCocycle> {
    let n = algebra.dim();
    let images = coboundary_matrix(algebra).transpose();
    images
        .row_space_basis()
        .iter()
        .map(|v| AlgebraTwoCocycle::from_pair_vector(n, v))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H2Report {
    pub z2_dim: usize,
    pub b2_dim: usize,
    pub h2_dim: usize,
    pub z2_basis: Vec<AlgebraTwoCocycle>,
    pub b2_basis: Vec<AlgebraTwoCocycle>,
    /// Elements of the Z² basis chosen greedily to complement B².
    pub h2_representatives: Vec<AlgebraTwoCocycle>,
}

pub fn h2_report(algebra: &LieAlgebra) -> H2Report {
    let z2_basis = cocycle_space(algebra);
    let b2_basis = coboundary_space(algebra);
    let mut span: Vec<Vec<Q>> = b2_basis.iter().map(|c| c.to_pair_vector()).collect();
    let mut reps = Vec::new();
    for z in &z2_basis {
        let mut trial = span.clone();
        trial.push(z.to_pair_vector());
        if QMatrix::from_rows(&trial).rank() > span.len() {
            span = trial;
            reps.push(z.clone());
        }
    }
    H2Report {
        z2_dim: z2_basis.len(),
        b2_dim: b2_basis.len(),
        h2_dim: z2_basis.len() - b2_basis.len(),
        z2_basis,
        b2_basis,
        h2_representatives: reps,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H2Decomposition {
    pub trivial: bool,
    /// A generating functional, when trivial: the minimal-norm solution of
    /// `Γ = Γ_μ`. Only its class modulo `{μ : Γ_μ = 0}` is meaningful.
    pub mu: Option<CoalgebraVector>,
    /// Γ reduced modulo the echelon basis of B².
    pub representative: AlgebraTwoCocycle,
}

pub fn h2_decompose(algebra: &LieAlgebra, gamma: &AlgebraTwoCocycle) -> Result<H2Decomposition> {
    gamma.check_closed(algebra)?;
    let n = algebra.dim();
    let target = gamma.to_pair_vector();
    let mut reduced = target.clone();
    for b in coboundary_space(algebra) {
        let bv = b.to_pair_vector();
        let pivot = bv
            .iter()
            .position(|c| !c.is_zero())
            .expect("echelon rows are nonzero");
        let factor = &reduced[pivot] / &bv[pivot];
        if !factor.is_zero() {
            for (r, x) in reduced.iter_mut().zip(&bv) {
                *r -= &factor * x;
            }
        }
    }
    let representative = AlgebraTwoCocycle::from_pair_vector(n, &reduced);
    if representative.is_zero() {
        let mu = coboundary_matrix(algebra)
            .solve_min_norm(&target)
            .expect("Γ reduces to zero modulo B², so it lies in the image");
        Ok(H2Decomposition {
            trivial: true,
            mu: Some(CoalgebraVector(mu)),
            representative,
        })
    } else {
        Ok(H2Decomposition {
            trivial: false,
            mu: None,
            representative,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralExtension {
    pub base: LieAlgebra,
    pub extended: LieAlgebra,
    pub central_index: usize,
    pub cocycle: AlgebraTwoCocycle,
    /// The functional the cocycle was built from, for pseudo-extensions.
    pub generator: Option<CoalgebraVector>,
}

fn central_name(base: &LieAlgebra) -> String {
    let mut name = "X0".to_string();
    while base.index_of(&name).is_some() {
        name.push('\'');
    }
    name
}

/// The extension with `[X̃_i, X̃_j] = C^k_ij X̃_k + Γ_ij X_0` and `X_0`
/// central, appended as the last basis element.
pub fn central_extension(
    algebra: &LieAlgebra,
    gamma: &AlgebraTwoCocycle,
) -> Result<CentralExtension> {
    gamma.check_closed(algebra)?;
    let n = algebra.dim();
    let x0 = central_name(algebra);
    let mut names = algebra.basis_names().to_vec();
    names.push(x0.clone());
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut terms: Vec<(Q, String)> = (0..n)
                .map(|k| (algebra.constant(i, j, k), names[k].clone()))
                .filter(|(c, _)| !c.is_zero())
                .collect();
            let g = gamma.get(i, j);
            if !g.is_zero() {
                terms.push((g.clone(), x0.clone()));
            }
            if !terms.is_empty() {
                brackets.push(BracketEntry {
                    left: names[i].clone(),
                    right: names[j].clone(),
                    terms,
                });
            }
        }
    }
    let extended = crate::algebra::validate_algebra(&StructureTable {
        name: format!("{}~", algebra.name()),
        basis_names: names,
        brackets,
    })?;
    Ok(CentralExtension {
        base: algebra.clone(),
        extended,
        central_index: n,
        cocycle: gamma.clone(),
        generator: None,
    })
}

/// Pseudo-extension by `λ⁰`: `[X̌_i, X̌_j] = C^k_ij (X̌_k + λ⁰_k X_0)`.
pub fn pseudo_extension(
    algebra: &LieAlgebra,
    lambda0: &CoalgebraVector,
) -> Result<CentralExtension> {
    let gamma = coboundary_of(algebra, lambda0)?;
    let mut ext = central_extension(algebra, &gamma)?;
    ext.generator = Some(lambda0.clone());
    Ok(ext)
}

/// Reads `Γ_ij` back from the `X_0` components of the extended brackets.
pub fn read_back_cocycle(ext: &CentralExtension) -> AlgebraTwoCocycle {
    let n = ext.base.dim();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            entries.push((i, j, ext.extended.constant(i, j, ext.central_index)));
        }
    }
    AlgebraTwoCocycle::from_entries(n, &entries).expect("indices in range")
}

/// Basis change `X̌_i ↦ X̌_i + μ_i X_0`, `X_0 ↦ X_0` that removes every `X_0`
/// term from the extended brackets. Columns are the new basis vectors.
pub fn trivialize_pseudo_extension(ext: &CentralExtension) -> Result<QMatrix> {
    let mu = match &ext.generator {
        Some(l) => l.clone(),
        None => {
            let d = h2_decompose(&ext.base, &ext.cocycle)?;
            if !d.trivial {
                return Err(LiecoError::NotACoboundary);
            }
            d.mu.expect("trivial decomposition carries μ")
        }
    };
    let n = ext.base.dim();
    let mut t = QMatrix::identity(n + 1);
    for i in 0..n {
        t.set(ext.central_index, i, mu.0[i].clone());
    }
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub algebra: LieAlgebra,
    pub cocycle: Option<AlgebraTwoCocycle>,
    /// 0 on the subalgebra, 1 on its complement.
    pub weights: Vec<u8>,
}

/// Inönü-Wigner contraction with respect to the subalgebra spanned by the
/// named basis elements. Generators outside it are rescaled by ε; a
/// structure constant survives iff `w_i + w_j = w_k`. A cocycle entry
/// scales as `ε^(w_i + w_j - scale)`: it survives at equality, vanishes
/// above and diverges below.
pub fn iw_contraction(
    algebra: &LieAlgebra,
    subalgebra_names: &[String],
    gamma: Option<&AlgebraTwoCocycle>,
    cocycle_scale: i32,
) -> Result<Contraction> {
    let n = algebra.dim();
    let mut weights = vec![1u8; n];
    for name in subalgebra_names {
        let i = algebra
            .index_of(name)
            .ok_or_else(|| LiecoError::UnknownName(name.clone()))?;
        weights[i] = 0;
    }
    for i in 0..n {
        for j in i + 1..n {
            if weights[i] == 0
                && weights[j] == 0
                && (0..n).any(|k| weights[k] == 1 && !algebra.constant(i, j, k).is_zero())
            {
                return Err(LiecoError::NotASubalgebra(subalgebra_names.to_vec()));
            }
        }
    }
    let names = algebra.basis_names().to_vec();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let terms: Vec<(Q, String)> = (0..n)
                .filter(|&k| weights[i] + weights[j] == weights[k])
                .map(|k| (algebra.constant(i, j, k), names[k].clone()))
                .filter(|(c, _)| !c.is_zero())
                .collect();
            if !terms.is_empty() {
                brackets.push(BracketEntry {
                    left: names[i].clone(),
                    right: names[j].clone(),
                    terms,
                });
            }
        }
    }
    let contracted = crate::algebra::validate_algebra(&StructureTable {
        name: format!("{}_contracted", algebra.name()),
        basis_names: names.clone(),
        brackets,
    })?;
    let cocycle = match gamma {
        None => None,
        Some(g) => {
            if g.dim() != n {
                return Err(LiecoError::DimensionMismatch {
                    expected: n,
                    found: g.dim(),
                });
            }
            let mut entries = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let c = g.get(i, j);
                    if c.is_zero() {
                        continue;
                    }
                    let w = i32::from(weights[i]) + i32::from(weights[j]);
                    match w.cmp(&cocycle_scale) {
                        std::cmp::Ordering::Less => {
                            return Err(LiecoError::Divergence(names[i].clone(), names[j].clone()))
                        }
                        std::cmp::Ordering::Equal => entries.push((i, j, c.clone())),
                        std::cmp::Ordering::Greater => {}
                    }
                }
            }
            Some(AlgebraTwoCocycle::from_entries(n, &entries)?)
        }
    };
    Ok(Contraction {
        algebra: contracted,
        cocycle,
        weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn galilei11() -> LieAlgebra {
        // basis H, P, K: [K, H] = P
        LieAlgebra::from_constants("galilei11", &["H", "P", "K"], &[(2, 0, 1, q(1))]).unwrap()
    }

    fn poincare11() -> LieAlgebra {
        LieAlgebra::from_constants(
            "poincare11",
            &["H", "P", "K"],
            &[(2, 0, 1, q(1)), (2, 1, 0, q(1))],
        )
        .unwrap()
    }

    fn su2() -> LieAlgebra {
        LieAlgebra::from_constants(
            "su2",
            &["X1", "X2", "X3"],
            &[(0, 1, 2, q(1)), (1, 2, 0, q(1)), (2, 0, 1, q(1))],
        )
        .unwrap()
    }

    fn abelian2() -> LieAlgebra {
        LieAlgebra::abelian("abelian2", &["A", "B"]).unwrap()
    }

    fn mass(m: i64) -> AlgebraTwoCocycle {
        // Γ_KP = -m
        AlgebraTwoCocycle::from_entries(3, &[(2, 1, q(-m))]).unwrap()
    }

    #[test]
    fn cohomology_dimensions() {
        let r = h2_report(&galilei11());
        assert_eq!((r.z2_dim, r.b2_dim, r.h2_dim), (3, 1, 2));
        let r = h2_report(&su2());
        assert_eq!((r.z2_dim, r.b2_dim, r.h2_dim), (3, 3, 0));
        let r = h2_report(&abelian2());
        assert_eq!((r.z2_dim, r.b2_dim, r.h2_dim), (1, 0, 1));
        assert_eq!(r.h2_representatives.len(), 1);
    }

    #[test]
    fn galilei_decompositions() {
        let g = galilei11();
        let kh = AlgebraTwoCocycle::from_entries(3, &[(2, 0, q(1))]).unwrap();
        let d = h2_decompose(&g, &kh).unwrap();
        assert!(d.trivial);
        assert_eq!(d.mu.unwrap().0, vec![q(0), q(1), q(0)]);
        let d = h2_decompose(&g, &mass(3)).unwrap();
        assert!(!d.trivial);
        assert!(!d.representative.is_zero());
        let d = h2_decompose(&g, &AlgebraTwoCocycle::zero(3)).unwrap();
        assert!(d.trivial);
        assert!(d.mu.unwrap().is_zero());
    }

    #[test]
    fn not_closed_rejected() {
        // In sl2-like algebras not every antisymmetric form is closed; take
        // the 4-dim algebra gl2-ish [X1,X2]=X2 with Γ_{23} = 1 on X3 X4
        let g =
            LieAlgebra::from_constants("aff", &["A", "B", "C", "D"], &[(0, 1, 1, q(1))]).unwrap();
        // cyclic sum on (A, B, C): Γ([A,B],C) = Γ(B,C)
        let gamma = AlgebraTwoCocycle::from_entries(4, &[(1, 2, q(1))]).unwrap();
        assert!(matches!(
            h2_decompose(&g, &gamma),
            Err(LiecoError::NotClosed(_))
        ));
        assert!(matches!(
            central_extension(&g, &gamma),
            Err(LiecoError::NotClosed(_))
        ));
    }

    #[test]
    fn bargmann_extension() {
        let ext = central_extension(&galilei11(), &mass(1)).unwrap();
        let e = &ext.extended;
        assert_eq!(e.dim(), 4);
        assert_eq!(e.constant(2, 0, 1), q(1));
        assert_eq!(e.constant(2, 1, 3), q(-1));
        assert_eq!(read_back_cocycle(&ext), mass(1));
    }

    #[test]
    fn abelian_plus_weyl_is_heisenberg() {
        let gamma = AlgebraTwoCocycle::from_entries(2, &[(0, 1, q(1))]).unwrap();
        let ext = central_extension(&abelian2(), &gamma).unwrap();
        let h1 = LieAlgebra::from_constants("h1", &["A", "B", "X0"], &[(0, 1, 2, q(1))]).unwrap();
        assert!(ext.extended.same_constants(&h1));
    }

    #[test]
    fn zero_cocycle_gives_direct_sum() {
        let ext = central_extension(&su2(), &AlgebraTwoCocycle::zero(3)).unwrap();
        for i in 0..4 {
            assert!(ext.extended.bracket_basis(i, 3).iter().all(Zero::is_zero));
            for j in 0..3 {
                assert!(ext.extended.constant(i.min(2), j, 3).is_zero());
            }
        }
    }

    #[test]
    fn su2_pseudo_extension_and_trivialization() {
        let l0 = CoalgebraVector(vec![q(0), q(0), q(1)]);
        let ext = pseudo_extension(&su2(), &l0).unwrap();
        let e = &ext.extended;
        assert_eq!(e.bracket_basis(0, 1), vec![q(0), q(0), q(1), q(1)]);
        assert_eq!(e.bracket_basis(1, 2), vec![q(1), q(0), q(0), q(0)]);
        assert_eq!(e.bracket_basis(2, 0), vec![q(0), q(1), q(0), q(0)]);
        let t = trivialize_pseudo_extension(&ext).unwrap();
        assert_eq!(t.get(3, 2), &q(1));
        let flat = e.change_basis(&t, None).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!(flat.constant(i, j, 3).is_zero());
            }
        }
    }

    #[test]
    fn trivialization_of_zero_and_mass() {
        let ext = pseudo_extension(&galilei11(), &CoalgebraVector::zero(3)).unwrap();
        assert_eq!(
            trivialize_pseudo_extension(&ext).unwrap(),
            QMatrix::identity(4)
        );
        let ext = central_extension(&galilei11(), &mass(2)).unwrap();
        assert_eq!(
            trivialize_pseudo_extension(&ext),
            Err(LiecoError::NotACoboundary)
        );
    }

    #[test]
    fn galilei_pseudo_extension_touches_one_bracket() {
        let l0 = CoalgebraVector(vec![q(0), q(1), q(0)]);
        let ext = pseudo_extension(&galilei11(), &l0).unwrap();
        assert_eq!(
            ext.extended.bracket_basis(2, 0),
            vec![q(0), q(1), q(0), q(1)]
        );
        assert!(ext.extended.bracket_basis(2, 1).iter().all(Zero::is_zero));
        assert!(ext.extended.bracket_basis(0, 1).iter().all(Zero::is_zero));
    }

    #[test]
    fn poincare_to_galilei_generates_cohomology() {
        let p = poincare11();
        // μ_H = -m gives Γ_KP = -m
        let mu = CoalgebraVector(vec![q(-2), q(0), q(0)]);
        let gamma = coboundary_of(&p, &mu).unwrap();
        assert_eq!(gamma, mass(2));
        assert!(h2_decompose(&p, &gamma).unwrap().trivial);
        let c = iw_contraction(&p, &["H".to_string()], Some(&gamma), 2).unwrap();
        assert!(c.algebra.same_constants(&galilei11()));
        let gc = c.cocycle.unwrap();
        assert_eq!(gc, mass(2));
        assert!(!h2_decompose(&c.algebra, &gc).unwrap().trivial);
    }

    #[test]
    fn contraction_rules() {
        let p = poincare11();
        // With only K fixed both brackets keep weight balance: no change.
        let c = iw_contraction(&p, &["K".to_string()], None, 1).unwrap();
        assert!(c.algebra.same_constants(&p));
        // Γ = 0 always contracts to 0.
        let c =
            iw_contraction(&p, &["H".to_string()], Some(&AlgebraTwoCocycle::zero(3)), 0).unwrap();
        assert!(c.cocycle.unwrap().is_zero());
        // Scale 3 makes the mass entry diverge.
        let err = iw_contraction(&p, &["H".to_string()], Some(&mass(1)), 3).unwrap_err();
        assert_eq!(err, LiecoError::Divergence("P".into(), "K".into()));
        // Scale 1 kills it.
        let c = iw_contraction(&p, &["H".to_string()], Some(&mass(1)), 1).unwrap();
        assert!(c.cocycle.unwrap().is_zero());
        // {H, K} is not a subalgebra of poincare11.
        let err = iw_contraction(&p, &["H".to_string(), "K".to_string()], None, 1).unwrap_err();
        assert!(matches!(err, LiecoError::NotASubalgebra(_)));
    }
}

//! Finite-dimensional real Lie algebras given by rational structure
//! constants, with exact bracket and coadjoint primitives.
//!
//! Conventions: `[X_i, X_j] = C^k_ij X_k`. The infinitesimal coadjoint
//! action is `coad X (mu)(Y) = mu([X, Y])` with no extra minus sign, so
//! `(coad X mu)_j = sum_{i,k} X^i C^k_ij mu_k`. Callers who want the
//! representation convention `-coad^T` must negate themselves.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{LiecoError, Result};
use crate::linalg::QMatrix;
use crate::rational::Q;

/// Coordinates of an element of the algebra in its basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraVector(pub Vec<Q>);

/// Coordinates of an element of the dual space in the dual basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalgebraVector(pub Vec<Q>);

impl AlgebraVector {
    pub fn zero(dim: usize) -> Self {
        Self(vec![Q::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = crate::rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, s: &Q) -> Self {
        Self(self.0.iter().map(|x| x * s).collect())
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        crate::rational::vec_to_f64(&self.0)
    }
}

impl CoalgebraVector {
    pub fn zero(dim: usize) -> Self {
        Self(vec![Q::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// The pairing `mu(X)`.
    pub fn pair(&self, x: &AlgebraVector) -> Q {
        crate::rational::dot(&self.0, &x.0)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        crate::rational::vec_to_f64(&self.0)
    }
}

/// One `[left, right] = sum c N` line of a structure table, by name.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub terms: Vec<(Q, String)>,
}

/// Unvalidated structure constants indexed by basis names.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureTable {
    pub name: String,
    pub basis_names: Vec<String>,
    pub brackets: Vec<BracketEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    basis_names: Vec<String>,
    /// `(i, j)` with `i < j` mapped to the nonzero `C^k_ij`.
    structure: BTreeMap<(usize, usize), BTreeMap<usize, Q>>,
}

/// Checks antisymmetry and the Jacobi identity exactly and builds the
/// algebra. Brackets not listed are zero; a pair may be listed in either
/// order, or both orders if the two agree up to sign.
pub fn validate_algebra(table: &StructureTable) -> Result<LieAlgebra> {
    let n = table.basis_names.len();
    if n == 0 {
        return Err(LiecoError::InvalidBasis("empty basis".into()));
    }
    let mut index = BTreeMap::new();
    for (i, name) in table.basis_names.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(LiecoError::InvalidBasis(format!(
                "duplicate basis name `{name}`"
            )));
        }
    }
    let lookup = |name: &str| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| LiecoError::UnknownName(name.to_string()))
    };

    // Ordered-pair table: (i, j) -> coefficient vector, as given.
    let mut given: BTreeMap<(usize, usize), Vec<Q>> = BTreeMap::new();
    for entry in &table.brackets {
        let i = lookup(&entry.left)?;
        let j = lookup(&entry.right)?;
        let mut coeffs = vec![Q::zero(); n];
        for (c, target) in &entry.terms {
            let k = lookup(target)?;
            coeffs[k] += c;
        }
        if i == j {
            if let Some(k) = coeffs.iter().position(|c| !c.is_zero()) {
                return Err(LiecoError::AntisymmetryViolation { i, j, k });
            }
            continue;
        }
        let slot = given.entry((i, j)).or_insert_with(|| vec![Q::zero(); n]);
        for (s, c) in slot.iter_mut().zip(coeffs) {
            *s += c;
        }
    }

    let mut structure = BTreeMap::new();
    for (&(i, j), coeffs) in &given {
        let (a, b, sign_flip) = if i < j { (i, j, false) } else { (j, i, true) };
        let canonical: Vec<Q> = if sign_flip {
            coeffs.iter().map(|c| -c).collect()
        } else {
            coeffs.clone()
        };
        if let Some(other) = given.get(&(j, i)) {
            // Both orders given: they must be negatives of each other.
            if let Some(k) = (0..n).find(|&k| coeffs[k] != -other[k].clone()) {
                return Err(LiecoError::AntisymmetryViolation { i, j, k });
            }
        }
        let sparse: BTreeMap<usize, Q> = canonical
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if !sparse.is_empty() {
            structure.insert((a, b), sparse);
        }
    }

    let algebra = LieAlgebra {
        name: table.name.clone(),
        basis_names: table.basis_names.clone(),
        structure,
    };
    algebra.check_jacobi()?;
    Ok(algebra)
}

impl LieAlgebra {
    /// Builds an algebra from `(i, j, k, C^k_ij)` entries and validates it.
    pub fn from_constants(
        name: &str,
        basis_names: &[&str],
        constants: &[(usize, usize, usize, Q)],
    ) -> Result<Self> {
        let names: Vec<String> = basis_names.iter().map(|s| s.to_string()).collect();
        let brackets = constants
            .iter()
            .map(|(i, j, k, c)| BracketEntry {
                left: names[*i].clone(),
                right: names[*j].clone(),
                terms: vec![(c.clone(), names[*k].clone())],
            })
            .collect();
        validate_algebra(&StructureTable {
            name: name.to_string(),
            basis_names: names,
            brackets,
        })
    }

    pub fn abelian(name: &str, basis_names: &[&str]) -> Result<Self> {
        Self::from_constants(name, basis_names, &[])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis_names.iter().position(|n| n == name)
    }

    /// `C^k_ij`, with antisymmetric completion.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Q {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => Q::zero(),
            std::cmp::Ordering::Less => self
                .structure
                .get(&(i, j))
                .and_then(|m| m.get(&k))
                .cloned()
                .unwrap_or_else(Q::zero),
            std::cmp::Ordering::Greater => -self.constant(j, i, k),
        }
    }

    /// `[X_i, X_j]` as a coefficient vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Q> {
        (0..self.dim()).map(|k| self.constant(i, j, k)).collect()
    }

    /// Nonzero constants `(i, j, k, C^k_ij)` with `i < j`.
    pub fn nonzero_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Q)> {
        self.structure
            .iter()
            .flat_map(|(&(i, j), m)| m.iter().map(move |(&k, c)| (i, j, k, c)))
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.is_empty()
    }

    /// Same dimension and identical structure constants (names ignored).
    pub fn same_constants(&self, other: &LieAlgebra) -> bool {
        self.dim() == other.dim() && self.structure == other.structure
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(LiecoError::DimensionMismatch {
                expected: self.dim(),
                found: len,
            });
        }
        Ok(())
    }

    /// `([X,Y])^k = sum_ij X^i Y^j C^k_ij`.
    pub fn bracket(&self, x: &AlgebraVector, y: &AlgebraVector) -> Result<AlgebraVector> {
        self.check_dim(x.dim())?;
        self.check_dim(y.dim())?;
        let mut out = vec![Q::zero(); self.dim()];
        for (i, j, k, c) in self.nonzero_constants() {
            // i < j; both orders contribute with opposite signs.
            let w = &x.0[i] * &y.0[j] - &x.0[j] * &y.0[i];
            if !w.is_zero() {
                out[k] += w * c;
            }
        }
        Ok(AlgebraVector(out))
    }

    /// Matrix `M` with `(M mu)_j = sum_{i,k} X^i C^k_ij mu_k`, i.e.
    /// `M mu = coad X (mu)` on dual components.
    pub fn coad_matrix(&self, x: &AlgebraVector) -> Result<QMatrix> {
        self.check_dim(x.dim())?;
        let n = self.dim();
        let mut m = QMatrix::zeros(n, n);
        for (i, j, k, c) in self.nonzero_constants() {
            // M[j][k] += X^i C^k_ij ; M[i][k] += X^j C^k_ji = -X^j C^k_ij
            if !x.0[i].is_zero() {
                let v = m.get(j, k) + &x.0[i] * c;
                m.set(j, k, v);
            }
            if !x.0[j].is_zero() {
                let v = m.get(i, k) - &x.0[j] * c;
                m.set(i, k, v);
            }
        }
        Ok(m)
    }

    /// `coad X (mu)` directly.
    pub fn coad(&self, x: &AlgebraVector, mu: &CoalgebraVector) -> Result<CoalgebraVector> {
        self.check_dim(mu.dim())?;
        Ok(CoalgebraVector(self.coad_matrix(x)?.mul_vec(&mu.0)))
    }

    /// `ad X` as a matrix acting on algebra coordinates.
    pub fn ad_matrix(&self, x: &AlgebraVector) -> Result<QMatrix> {
        // ad X = coad_matrix(X)^T under the pairing, since
        // mu(ad X (Y)) = (coad X mu)(Y).
        Ok(self.coad_matrix(x)?.transpose())
    }

    /// Jacobi residual `[[X_i,X_j],X_k] + [[X_j,X_k],X_i] + [[X_k,X_i],X_j]`.
    pub fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for m in 0..n {
                let cm = self.constant(a, b, m);
                if cm.is_zero() {
                    continue;
                }
                for (l, o) in out.iter_mut().enumerate() {
                    let cl = self.constant(m, c, l);
                    if !cl.is_zero() {
                        *o += &cm * cl;
                    }
                }
            }
        }
        out
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        // The Jacobiator is totally antisymmetric once C is, so i<j<k suffices.
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let residual = self.jacobi_residual(i, j, k);
                    if residual.iter().any(|r| !r.is_zero()) {
                        return Err(LiecoError::JacobiViolation {
                            triple: (i, j, k),
                            names: [
                                self.basis_names[i].clone(),
                                self.basis_names[j].clone(),
                                self.basis_names[k].clone(),
                            ],
                            residual,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Structure constants in a new basis `Y_a = sum_i T[i][a] X_i`
    /// (columns of `T` are the new basis vectors in old coordinates).
    pub fn change_basis(&self, t: &QMatrix, new_names: Option<&[String]>) -> Result<LieAlgebra> {
        let n = self.dim();
        self.check_dim(t.rows())?;
        self.check_dim(t.cols())?;
        let inv = t
            .inverse()
            .ok_or_else(|| LiecoError::InvalidBasis("basis change is singular".into()))?;
        let cols: Vec<AlgebraVector> = (0..n).map(|a| AlgebraVector(t.col(a))).collect();
        let mut brackets = Vec::new();
        let names: Vec<String> = match new_names {
            Some(ns) => ns.to_vec(),
            None => self.basis_names.clone(),
        };
        for a in 0..n {
            for b in a + 1..n {
                let old = self.bracket(&cols[a], &cols[b])?;
                let new = inv.mul_vec(&old.0);
                let terms: Vec<(Q, String)> = new
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (c, names[k].clone()))
                    .collect();
                if !terms.is_empty() {
                    brackets.push(BracketEntry {
                        left: names[a].clone(),
                        right: names[b].clone(),
                        terms,
                    });
                }
            }
        }
        validate_algebra(&StructureTable {
            name: self.name.clone(),
            basis_names: names,
            brackets,
        })
    }

    /// Back to a name-indexed table (one line per nonzero `i < j` bracket).
    pub fn to_table(&self) -> StructureTable {
        let brackets = self
            .structure
            .iter()
            .map(|(&(i, j), m)| BracketEntry {
                left: self.basis_names[i].clone(),
                right: self.basis_names[j].clone(),
                terms: m
                    .iter()
                    .map(|(&k, c)| (c.clone(), self.basis_names[k].clone()))
                    .collect(),
            })
            .collect();
        StructureTable {
            name: self.name.clone(),
            basis_names: self.basis_names.clone(),
            brackets,
        }
    }
}

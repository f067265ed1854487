//! Lie algebra cohomology, presymplectic forms and coadjoint orbit tools
//! over exact rationals, with a small catalog of matrix Lie groups.

pub mod algebra;
pub mod cohomology;
pub mod error;
pub mod group;
pub mod io;
pub mod linalg;
pub mod orbit;
pub mod rational;
pub mod symplectic;

pub use algebra::{
    validate_algebra, AlgebraVector, BracketEntry, CoalgebraVector, LieAlgebra, StructureTable,
};
pub use cohomology::AlgebraTwoCocycle;
pub use error::{LiecoError, Result};
pub use linalg::QMatrix;
pub use rational::Q;

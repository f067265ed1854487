use thiserror::Error;

use crate::rational::{format_q, Q};

pub type Result<T, E = LiecoError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LiecoError {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("unknown basis name `{0}`")]
    UnknownName(String),

    #[error("antisymmetry violated: C^{k}_({i},{j}) does not match -C^{k}_({j},{i})")]
    AntisymmetryViolation { i: usize, j: usize, k: usize },

    #[error("Jacobi identity fails on ({}, {}, {}): residual [{}]", names[0], names[1], names[2], fmt_vec(residual))]
    JacobiViolation {
        triple: (usize, usize, usize),
        names: [String; 3],
        residual: Vec<Q>,
    },

    #[error("2-cochain is not a cocycle: {0}")]
    NotClosed(String),

    #[error("cocycle is not a coboundary (class is non-trivial in H^2)")]
    NotACoboundary,

    #[error("generators {0:?} do not span a subalgebra")]
    NotASubalgebra(Vec<String>),

    #[error("contracted cocycle diverges at entry ({0}, {1})")]
    Divergence(String, String),

    #[error("group element left the chart: {0}")]
    ChartOverflow(String),

    #[error("coboundary operator only supports degree <= 3, got {0}")]
    UnsupportedDegree(usize),

    #[error("catalog entry `{realization}` failed self-test `{check}`: residual {residual:e}")]
    CatalogSelfTestFailure {
        realization: String,
        check: String,
        residual: f64,
    },

    #[error("no catalog realization `{0}`")]
    UnknownRealization(String),

    #[error("realization `{realization}` declares no cocycle `{cocycle}`")]
    UnknownCocycle {
        realization: String,
        cocycle: String,
    },

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

fn fmt_vec(v: &[Q]) -> String {
    v.iter().map(format_q).collect::<Vec<_>>().join(", ")
}

impl LiecoError {
    /// Variant name, used as the error kind in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            LiecoError::DimensionMismatch { .. } => "DimensionMismatch",
            LiecoError::InvalidBasis(_) => "InvalidBasis",
            LiecoError::UnknownName(_) => "UnknownName",
            LiecoError::AntisymmetryViolation { .. } => "AntisymmetryViolation",
            LiecoError::JacobiViolation { .. } => "JacobiViolation",
            LiecoError::NotClosed(_) => "NotClosed",
            LiecoError::NotACoboundary => "NotACoboundary",
            LiecoError::NotASubalgebra(_) => "NotASubalgebra",
            LiecoError::Divergence(..) => "Divergence",
            LiecoError::ChartOverflow(_) => "ChartOverflow",
            LiecoError::UnsupportedDegree(_) => "UnsupportedDegree",
            LiecoError::CatalogSelfTestFailure { .. } => "CatalogSelfTestFailure",
            LiecoError::UnknownRealization(_) => "UnknownRealization",
            LiecoError::UnknownCocycle { .. } => "UnknownCocycle",
            LiecoError::Parse { .. } => "ParseError",
        }
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        LiecoError::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

use thiserror::Error;

use crate::seifert::SampledSignature;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not hermitian at ({row}, {col})")]
    NonHermitianInput { row: usize, col: usize },

    #[error("invalid Seifert matrix: {0}")]
    InvalidSeifertMatrix(String),

    #[error("the Alexander polynomial has unit-circle roots of irrational angle")]
    IrrationalJumpAngle(Box<SampledSignature>),

    #[error("{point} is an exceptional point of a cable reparametrization ({detail})")]
    ExceptionalPoint { point: String, detail: String },

    #[error("unsupported descriptor node: {0}")]
    UnsupportedNode(String),

    #[error("presentation matrix is singular over {0}")]
    SingularPresentation(String),

    #[error("abelianization is not infinite cyclic: {0}")]
    NonCyclicAbelianization(String),

    #[error("Arf invariant of the infecting knot is nonzero")]
    ArfNonzero,

    #[error("no integer combination of the pool satisfies the constraints: {0}")]
    Infeasible(String),

    #[error("infection stage {stage} is invalid: {reason}")]
    StageInvalid { stage: usize, reason: String },

    #[error("margin violated: {sum} does not exceed n*L = {bound}")]
    MarginViolated { sum: String, bound: String },

    #[error("invalid family specification: {0}")]
    InvalidSpec(String),

    #[error("unknown knot `{0}`")]
    UnknownAtom(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    InvalidInput(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

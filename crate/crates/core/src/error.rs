use crate::matroid::{Basis, SignedVector};
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge set is empty")]
    EmptyEdgeSet,
    #[error("vertex {vertex} is out of range 1..={count}")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("matrix entry {value} at row {row}, column {col} is not in {{-1, 0, 1}}")]
    InvalidEntry { row: usize, col: usize, value: i64 },
    #[error("matrix rows have inconsistent lengths")]
    RaggedMatrix,
    #[error(
        "matrix is not totally unimodular: rows {rows:?}, columns {cols:?} have determinant {det}"
    )]
    NotTotallyUnimodular {
        rows: Vec<usize>,
        cols: Vec<usize>,
        det: i128,
    },
    #[error("matrix has {rows} rows but rank {rank}")]
    RankDeficient { rows: usize, rank: usize },
    #[error("matroid has rank zero")]
    RankZero,
    #[error("dual rank zero: the matroid has rank equal to its edge count")]
    DualRankZero,
    #[error("edge {edge} is out of range 1..={n}")]
    EdgeOutOfRange { edge: usize, n: usize },
    #[error("edge {edge} is in the basis {basis}")]
    EdgeInBasis { edge: usize, basis: Basis },
    #[error("edge {edge} is not in the basis {basis}")]
    EdgeNotInBasis { edge: usize, basis: Basis },
    #[error("{0} is not a basis")]
    NotABasis(Basis),
    #[error("vector is in neither the kernel nor the row space")]
    NotInSubspace,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("orientations are not in the same reversal class")]
    NotEquivalent,
    #[error("{what} needs n <= {cap}, got n = {n}")]
    TooLarge {
        what: &'static str,
        n: usize,
        cap: usize,
    },
    #[error("invalid atlas: {0}")]
    InvalidAtlas(String),
    #[error("atlas polarity mismatch: expected {expected}")]
    PolarityMismatch { expected: &'static str },
    #[error(
        "atlas is not signature-induced: bases {first} and {second} read {circuit} with opposite signs"
    )]
    NotSignatureInduced {
        first: Basis,
        second: Basis,
        circuit: SignedVector,
    },
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("weights are not generic: {0} has zero inner product")]
    NonGeneric(SignedVector),
    #[error("matroid is not represented by a graph")]
    NotGraphic,
    #[error("invalid ribbon structure: {0}")]
    InvalidRibbon(String),
    #[error("edge {edge} is a loop; the primal Lawrence polytope needs a loopless matroid")]
    LoopInLawrence { edge: usize },
    #[error("edge {edge} is a coloop; the dual Lawrence polytope needs a coloopless matroid")]
    ColoopInLawrence { edge: usize },
    #[error("heights are not generic: {0}")]
    NonGenericHeights(String),
    #[error("not a maximal simplex: {0}")]
    NotASimplex(String),
    #[error("bijection hypotheses fail: {0}")]
    Hypothesis(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

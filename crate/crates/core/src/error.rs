use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("vector indexes a space of dimension {found}, expected {expected}")]
    SpaceMismatch { expected: usize, found: usize },
    #[error("algebra is not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("bracket of {0} and {1} leaves the even subalgebra")]
    NotClosed(usize, usize),
    #[error("algebra has nonzero (1,0) or (0,1) components")]
    NotEvenType,
    #[error("map is not of bi-degree (0,0): basis element {0}")]
    DegreeViolation(usize),
    #[error("input is not a bi-graded Lie algebra: {0}")]
    InputNotLie(String),
    #[error("involution is not diagonal with eigenvalues +-1 at basis element {0}")]
    NotDiagonal(usize),
    #[error("map does not commute with the involutions at basis element {0}")]
    NotEquivariant(usize),
    #[error("elements belong to different enveloping algebras")]
    AlgebraMismatch,
    #[error("truncation {requested} exceeds the configured bound {bound}")]
    TruncationExceeded { requested: usize, bound: usize },
    #[error("basis order interleaves even-type and exterior letters")]
    BadBasisOrder,
    #[error("functionals have truncation orders {0} and {1}")]
    TruncationMismatch(usize, usize),
    #[error("coefficient module carries no multiplication")]
    ModuleNotAlgebra,
    #[error("truncation {n} is below the number of exterior letters {d_odd}")]
    TruncationTooSmall { n: usize, d_odd: usize },
    #[error("BCH input has odd-parity components")]
    OddInput,
    #[error("matrix is singular")]
    Singular,
    #[error("star operation is not involutive on basis element {0}")]
    StarNotInvolutive(usize),
    #[error("star operation is not an anti-automorphism on basis pair ({0}, {1})")]
    StarNotAntiAutomorphism(usize, usize),
    #[error("basis element {0} is not adapted to the star operation and grading")]
    BasisNotAdapted(usize),
    #[error("polynomial degree {degree} exceeds the bound {bound}")]
    DegreeOverflow { degree: usize, bound: usize },
    #[error("character point must be nonnegative")]
    NegativePoint,
    #[error("coefficient {0} is not real")]
    NonRealCoefficient(String),
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::monomial::LatticeVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("generators must be positive, got ({0}, {1}, {2})")]
    NonPositive(i64, i64, i64),
    #[error("generators must satisfy n1 < n2 < n3, got ({0}, {1}, {2})")]
    NotSorted(i64, i64, i64),
    #[error("gcd(n1, n2, n3) = {0}, expected 1")]
    GcdNotOne(i64),
    #[error("n{index} not a minimal generator: {value} lies in the semigroup of the other two")]
    NotMinimal { index: u8, value: i64 },
    #[error("generator {0} exceeds the supported bound {1}")]
    TooLarge(i64, i64),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("the zero vector has no binomial")]
    ZeroVector,
    #[error("vector {0} has no Herzog type")]
    Untyped(LatticeVector),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FractionError {
    #[error("empty interval ({lo}, {hi}]")]
    EmptyInterval { lo: String, hi: String },
    #[error("zero denominator")]
    ZeroDenominator,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("input generator of degree {degree} exceeds the degree cap {cap}")]
    CapTooSmall { degree: u64, cap: u64 },
    #[error("polynomial of degree {degree} exceeds the degree cap {cap}")]
    CapExceeded { degree: u64, cap: u64 },
    #[error("coefficient {0} left {{-1, 0, 1}} while reducing unit-coefficient input")]
    CoefficientGrowth(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TangentConeError {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Fraction(#[from] FractionError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("no positive solution for the homogeneous coefficients in case {0}")]
    NoSolution(String),
    #[error("degenerate deltas: delta1 = {delta1}, delta2 = {delta2}")]
    DegenerateDelta { delta1: i64, delta2: i64 },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BettiError {
    #[error("{count} generators exceed the cap of {cap}")]
    TooManyGenerators { count: usize, cap: usize },
    #[error("generating set is not a Groebner basis")]
    NotGroebner,
    #[error("monomial generators are not minimal: {0} divides {1}")]
    NotMinimal(String, String),
    #[error("cyclic polytope face counts are only provided for n = 3, got n = {0}")]
    Unsupported(u32),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

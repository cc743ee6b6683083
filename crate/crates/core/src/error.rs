use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the zero polynomial has no Sturm sequence")]
    ZeroPolynomial,
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("form is not closed as a restriction: its differential has a nonzero restriction in quasi-degree {qdeg}")]
    NotClosed { qdeg: u32 },
    #[error("no monomial lift exists for shift {shift}: {weight} is not in the semigroup")]
    NoMonomialLift { shift: u32, weight: u32 },
    #[error("vector field is not liftable over the curve: {0}")]
    NotLiftable(String),
    #[error("not a local symmetry of the curve: {0}")]
    NotSymmetry(String),
    #[error("restrictions belong to different bases")]
    BasisMismatch,
    #[error("degree bound {bound} exhausted: algebraic restrictions of 2-forms are still nonzero at quasi-degree {qdeg}; raise the bound")]
    BoundExhausted { bound: u32, qdeg: u32 },
    #[error("quasi-degree {qdeg} carries a closed restriction outside the computed basis (bound {bound})")]
    OutsideBasis { qdeg: u32, bound: u32 },
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("invalid input: {0}")]
    Input(String),
}

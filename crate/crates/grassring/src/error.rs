use thiserror::Error;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input or catalog data.
    Input,
    /// A name that is not in the catalog.
    UnknownEntity,
    /// A well-formed request that violates an operation's contract.
    Contract,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible monomials: {0} and {1} do not share radicand and pi power")]
    IncompatibleMonomials(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),

    #[error("odd-rank bundle has no Euler class")]
    OddRankNoEuler,
    #[error("not expressible in characteristic classes: {0}")]
    NotExpressible(String),

    #[error("unknown generator {0} for {1}")]
    UnknownGenerator(String, String),
    #[error("not top degree: term {term} has degree {degree}, expected {dim}")]
    NotTopDegree { term: String, degree: u32, dim: u32 },
    #[error("star undefined: {0}")]
    StarUndefined(String),
    #[error("expression is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("invalid space descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("Gram matrix is singular")]
    SingularGram,
    #[error("pairing matrix is singular")]
    SingularPairing,
    #[error("cycle table does not determine the dual: {0}")]
    UnderdeterminedPairing(String),

    #[error("unknown manifold: {0}")]
    UnknownManifold(String),
    #[error("unknown cycle {0} in {1}")]
    UnknownCycle(String, String),
    #[error("no data for degree {1} in {0}")]
    NoDataForDegree(String, u32),
    #[error("Gysin system has no non-negative solution: {0}")]
    Infeasible(String),
    #[error("unsupported Gauss-map target: {0}")]
    UnsupportedTarget(String),
    #[error("unknown relation: {0}")]
    UnknownRelation(String),
    #[error("catalog error: {0}")]
    Catalog(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            UnknownManifold(_) | UnknownCycle(..) | UnknownRelation(_) | UnsupportedTarget(_)
            | UnknownGenerator(..) | NoDataForDegree(..) => ErrorKind::UnknownEntity,
            Parse(_) | InvalidDescriptor(_) | Catalog(_) => ErrorKind::Input,
            _ => ErrorKind::Contract,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

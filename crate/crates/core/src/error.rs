use thiserror::Error;

/// Everything that can go wrong while building or counting a problem.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    TooLarge {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("polytope is unbounded; every variable must appear in a form with positive coefficient")]
    UnboundedPolytope,
    #[error("polytope lies in a coordinate hyperplane; reformulate with fewer variables")]
    DegeneratePolytope,
    #[error("no strong labelling exists: the subspace forces x{} = x{}", .0 + 1, .1 + 1)]
    NoStrongLabelling(usize, usize),
    #[error("linear system is inconsistent")]
    InfeasibleSystem,
    #[error("arrangement is not transverse to the polytope")]
    NotTransverse,
    #[error("forms do not have constant weight; Möbius formulas do not apply")]
    NonConstantWeight,
    #[error("no candidate period dividing {bound} fits the data")]
    NoConsistentPeriod { bound: u64 },
    #[error("insufficient data: need t = 1..{needed}, have t = 1..{have}")]
    InsufficientData { needed: u64, have: u64 },
    #[error("invalid problem at {location}: {message}")]
    Schema { location: String, message: String },
    #[error("integer overflow in lattice enumeration")]
    Overflow,
}

impl Error {
    pub(crate) fn schema(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

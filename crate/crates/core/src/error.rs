use std::fmt;

use thiserror::Error;

use crate::iop::IOp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid scalar literal {0:?}")]
pub struct ParseScalarError(pub String);

/// One of the defining relations of the algebra, as checked by
/// [`crate::endo::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `∂′∫′ = 1`
    DerInt,
    /// `[H′, ∫′] = ∫′`
    WeightInt,
    /// `[H′, ∂′] = −∂′`
    WeightDer,
    /// `H′(1 − ∫′∂′) = 1 − ∫′∂′`
    ProjectorLeft,
    /// `(1 − ∫′∂′)H′ = 1 − ∫′∂′`
    ProjectorRight,
}

impl Relation {
    pub const ALL: [Relation; 5] = [
        Relation::DerInt,
        Relation::WeightInt,
        Relation::WeightDer,
        Relation::ProjectorLeft,
        Relation::ProjectorRight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Relation::DerInt => "der*int = 1",
            Relation::WeightInt => "[H,int] = int",
            Relation::WeightDer => "[H,der] = -der",
            Relation::ProjectorLeft => "H(1-int*der) = 1-int*der",
            Relation::ProjectorRight => "(1-int*der)H = 1-int*der",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element is not a unit")]
    NotAUnit,
    #[error(
        "element lies in the ideal F; its kernel and cokernel on K[x] are infinite-dimensional"
    )]
    ElementOfF,
    #[error("operator is zero")]
    ZeroOperator,
    #[error("element is not of the form 1 + f with f in F")]
    NotOnePlusF,
    #[error("truncation did not stabilize below degree cap {cap} (needed at least {needed})")]
    NotStabilized { cap: usize, needed: usize },
    #[error("component index must be nonzero")]
    InvalidComponent,
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("relation {relation} violated, residual {residual:?}")]
    RelationViolated {
        relation: Relation,
        residual: Box<IOp>,
    },
    #[error("theorem violation at {step}: {details}")]
    TheoremViolation { step: &'static str, details: String },
    #[error("reconstruction mismatch: {detail}")]
    ReconstructionMismatch { detail: String },
}

impl Error {
    /// Stable identifier used in machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotAUnit => "NotAUnit",
            Error::ElementOfF => "ElementOfF",
            Error::ZeroOperator => "ZeroOperator",
            Error::NotOnePlusF => "NotOnePlusF",
            Error::NotStabilized { .. } => "NotStabilized",
            Error::InvalidComponent => "InvalidComponent",
            Error::ZeroScalar => "ZeroScalar",
            Error::RelationViolated { .. } => "RelationViolated",
            Error::TheoremViolation { .. } => "TheoremViolation",
            Error::ReconstructionMismatch { .. } => "ReconstructionMismatch",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

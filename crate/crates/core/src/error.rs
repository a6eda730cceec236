use alloc::string::String;

use crate::complex::{Simplex, VertexId};

/// Errors raised by the core operations.
///
/// Each variant has a stable short code (see [`Error::code`]) that front ends
/// report alongside the message.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("simplex {simplex} is missing its face {face}")]
    MissingFace { simplex: Simplex, face: Simplex },
    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown simplex {0}")]
    UnknownSimplex(Simplex),
    #[error("cell {0} does not belong to the carrier")]
    ForeignCell(String),
    #[error("carrier has dimension {0}, expected at most 1")]
    CarrierTooHighDimensional(usize),
    #[error("simplex {0} is affinely degenerate in the embedding")]
    DegenerateSimplex(Simplex),
    #[error("exact excess angle unavailable for {0} constraints (at most 3 supported)")]
    ExactUnavailable(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("direction is not generic at vertex {0}")]
    NonGenericDirection(VertexId),
    #[error("direction must be a nonzero finite vector")]
    InvalidDirection,
    #[error("piece {0} is not a subcomplex of the ambient complex")]
    PieceNotSubcomplex(usize),
    #[error("function does not live on the map's source complex")]
    CarrierMismatch,
    #[error("maps are not composable")]
    NotComposable,
    #[error("vertex map sends simplex {0} outside the target complex")]
    NotSimplicial(Simplex),
    #[error("function is undefined at vertex {0}")]
    MissingValue(VertexId),
    #[error("grid has {0} points, at least 5 are required")]
    GridTooCoarse(usize),
    #[error("warp function is negative or zero at interior sample {0}")]
    NegativeWarp(usize),
    #[error("invalid warp function: {0}")]
    InvalidWarp(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Stable identifier for reporting.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MissingFace { .. } => "E001",
            Error::InvalidSimplex(_) => "E002",
            Error::UnknownVertex(_) => "E003",
            Error::UnknownSimplex(_) => "E004",
            Error::ForeignCell(_) => "E005",
            Error::CarrierTooHighDimensional(_) => "E006",
            Error::DegenerateSimplex(_) => "E007",
            Error::ExactUnavailable(_) => "E008",
            Error::DimensionMismatch { .. } => "E009",
            Error::NonGenericDirection(_) => "E010",
            Error::InvalidDirection => "E011",
            Error::PieceNotSubcomplex(_) => "E012",
            Error::CarrierMismatch => "E013",
            Error::NotComposable => "E014",
            Error::NotSimplicial(_) => "E015",
            Error::MissingValue(_) => "E016",
            Error::GridTooCoarse(_) => "E017",
            Error::NegativeWarp(_) => "E018",
            Error::InvalidWarp(_) => "E019",
            Error::InvalidParameter(_) => "E020",
        }
    }
}

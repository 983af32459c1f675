use thiserror::Error;

use crate::lattice::Site;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("map is not a group homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("cochain mismatch: {0}")]
    CochainMismatch(String),
    #[error("cochain is not a cocycle")]
    NotCocycle,
    #[error("site {0} lies outside the window")]
    WindowOverflow(Site),
    #[error("gates in layer {layer} overlap at {site}")]
    LayerOverlap { layer: usize, site: Site },
    #[error("margin violation: operator support reaches {0}, within range of the window edge")]
    MarginViolation(Site),
    #[error("window margin {margin} is below {needed}, three times the action range")]
    InsufficientMargin { margin: u32, needed: u32 },
    #[error("residual content {content} is neither in the region of interest nor window-edge debris")]
    NonCollapsing { content: String },
    #[error("support assertion failed for {what}: {detail}")]
    Support { what: String, detail: String },
    #[error("commutator pairing did not stabilize between radii {0} and {1}")]
    NoStabilization(u32, u32),
    #[error("commutator pairing routes disagree: {0}")]
    RouteDisagreement(String),
    #[error("expected a scalar, got {0}")]
    NotScalar(String),
    #[error("unknown builtin action `{0}`")]
    UnknownAction(String),
    #[error("state is not invariant: {0}")]
    NotInvariant(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

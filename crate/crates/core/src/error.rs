use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("halfspace system describes an unbounded set")]
    UnboundedInput,

    #[error("halfspace has a zero normal vector")]
    ZeroNormal,

    #[error("face dimension {0} out of range")]
    FaceDimOutOfRange(i64),

    #[error("matrix is singular")]
    Singular,

    #[error("anchor point is not in the interior of the body")]
    AnchorNotInterior,

    #[error("anchor point is not contained in the body")]
    AnchorOutside,

    #[error("anchor {got:?} does not match gauge anchor {expected:?}")]
    AnchorMismatch { expected: Vec<String>, got: Vec<String> },

    #[error("value {0} is integral; a fractional value is required")]
    IntegralF(String),

    #[error("recession cone is not a linear subspace")]
    RecessionNotLinear,

    #[error("lattice point is not on the face")]
    PointNotOnFace,

    #[error("body is not maximal lattice-free")]
    NotMaximal,

    #[error("ambient dimension {dim} exceeds cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },

    #[error("enumeration guard tripped: more than {0} candidates")]
    EnumerationGuard(u64),

    #[error("piece guard tripped: {got} pieces exceed limit {limit}")]
    PieceGuard { got: usize, limit: usize },

    #[error("the two forms of the construction disagree")]
    ConstructionMismatch,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

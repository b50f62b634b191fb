use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("J^2 != -id (residual {residual})")]
    NotComplex { residual: String },
    #[error("J does not preserve the pairing (residual {residual})")]
    NotOrthogonal { residual: String },
    #[error("2-form is degenerate")]
    DegenerateForm,
    #[error("j^2 != -id")]
    NotAlmostComplex,
    #[error("j and pi are incompatible: j pi != pi j*")]
    IncompatiblePair,
    #[error("submanifold conditions failed: {0}")]
    ConditionsFailed(String),
    #[error("no witness solution: {0}")]
    NoWitness(String),
    #[error("map is not an involution")]
    NotInvolution,
    #[error("involution does not commute with J")]
    NotCompatible,
    #[error("sigma block of J is not zero")]
    NotHolomorphicPoisson,
    #[error("zero spinor")]
    ZeroSpinor,
    #[error("spinor is not pure")]
    NotPure,
    #[error("pulled-back spinor vanishes")]
    ZeroPullback,
    #[error("structures do not commute")]
    NotCommuting,
    #[error("submanifold is not admissible: {0}")]
    NotAdmissible(String),
    #[error("degree overflow: degree {0} exceeds dimension {1}")]
    DegreeOverflow(usize, usize),
    #[error("twist is not closed: {0}")]
    NonClosedTwist(String),
    #[error("map is not a twisted immersion: {0}")]
    NotTwistedImmersion(String),
    #[error("pole at sample point: {0}")]
    Pole(String),
    #[error("dimension {0} exceeds cap {1}")]
    TooLarge(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

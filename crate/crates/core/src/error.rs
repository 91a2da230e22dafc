use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("truncation orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },

    #[error("series has no constant term and cannot be inverted")]
    NonInvertible,

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("element uses generators outside the alphabet of the rewrite system")]
    AlphabetMismatch,

    #[error("leg {leg} out of range for a {legs}-leg tensor")]
    LegOutOfRange { leg: usize, legs: usize },

    #[error("expected a single-leg element")]
    NotSingleLeg,

    #[error("exponent has a nonzero h^0 component; the truncated exponential would not terminate")]
    ConstantPart,

    #[error("invalid twist: {0}")]
    InvalidTwist(String),

    #[error("invalid rewrite system: {0}")]
    InvalidRewriteSystem(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("R-matrix constant part is not 1⊗1")]
    NotUnipotent,

    #[error("base product is not braided commutative for the given R-matrix: {0}")]
    NotBraidedCommutative(String),

    #[error("element is not in the Takeuchi product: {0}")]
    NotTakeuchi(String),

    #[error("anchor action is inconsistent: ε(m s(a)) ≠ ε(m t(a)) for {0}")]
    BrokenAnchor(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("invalid preset `{name}`: {reason}")]
    InvalidPreset { name: String, reason: String },

    #[error("parse error: {0}")]
    Parse(String),
}

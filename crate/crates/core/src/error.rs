use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("generator index {index} out of range for {count} generators")]
    UnknownGenerator { index: usize, count: usize },
    #[error("unknown generator name `{0}`")]
    UnknownGeneratorName(String),
    #[error("empty relator")]
    EmptyRelator,
    #[error("invalid group family: {0}")]
    InvalidFamily(String),
    #[error("genus must be at least 1")]
    ZeroGenus,
    #[error("matrix is not an element of {family}")]
    NotMember { family: String },
    #[error("matrix is not in the Lie algebra of {family}")]
    NotInLieAlgebra { family: String },
    #[error("invalid bilinear form: {0}")]
    InvalidForm(String),
    #[error("invalid representation: {}", .0.join("; "))]
    InvalidRepresentation(Vec<String>),
    #[error("operation requires a GL or SL target, got {0}")]
    UnsupportedFamily(String),
    #[error("vector is not a cocycle")]
    NotACocycle,
    #[error("cocycle has the wrong shape: {0}")]
    CocycleShape(String),
    #[error("homomorphism is invalid at this representation: source relator {relator} maps to {value}")]
    HomomorphismInvalid { relator: String, value: String },
    #[error("point does not lie on the representation scheme: equation {equation} evaluates to {value}")]
    PointNotOnVariety { equation: usize, value: String },
    #[error("presentation is not a standard surface presentation")]
    NotSurface,
    #[error("pairing matrix is not antisymmetric")]
    NotAntisymmetric,
}

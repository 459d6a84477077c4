use alloc::string::String;

use crate::monomial::Var;

/// Every failure the engine can report. Variant names are the error names
/// surfaced by the command-line front end.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CensusError {
    #[error("SubstitutionToZeroPole: substituting {var:?} makes a denominator factor vanish identically")]
    SubstitutionToZeroPole { var: Var },
    #[error("PoleAtPoint: a denominator factor vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("MissingVariable: no value assigned to {0:?}")]
    MissingVariable(Var),
    #[error("NotUnitConstantTerm: series constant term must be 1")]
    NotUnitConstantTerm,
    #[error("NotAugmented: series constant term must vanish")]
    NotAugmented,
    #[error("PoleArgument: zeta argument q^-{u} z^{v} hits a pole identically")]
    PoleArgument { u: i32, v: u32 },
    #[error("NotWeil: {0}")]
    NotWeil(String),
    #[error("HigherOrderPole: pole of order {order} along {var:?}")]
    HigherOrderPole { var: Var, order: u32 },
    #[error("NotPolynomialAfterClearing: z-poles remain after multiplying by 1 - z^{rank}")]
    NotPolynomialAfterClearing { rank: u32 },
    #[error("NegativeBettiCoefficient: coefficient of t^{degree} is {value}")]
    NegativeBettiCoefficient { degree: i32, value: String },
    #[error("RoundingFailure: value {value} is not within tolerance of an integer")]
    RoundingFailure { value: String },
    #[error("IdentityViolation: {0}")]
    IdentityViolation(String),
    #[error("UnsupportedGenus: genus {0} exceeds the symbolic engine's variable layout")]
    UnsupportedGenus(usize),
    #[error("InvalidInput: {0}")]
    InvalidInput(String),
}

impl CensusError {
    /// The bare error name, e.g. `"NotWeil"`.
    pub fn name(&self) -> &'static str {
        match self {
            CensusError::SubstitutionToZeroPole { .. } => "SubstitutionToZeroPole",
            CensusError::PoleAtPoint => "PoleAtPoint",
            CensusError::MissingVariable(_) => "MissingVariable",
            CensusError::NotUnitConstantTerm => "NotUnitConstantTerm",
            CensusError::NotAugmented => "NotAugmented",
            CensusError::PoleArgument { .. } => "PoleArgument",
            CensusError::NotWeil(_) => "NotWeil",
            CensusError::HigherOrderPole { .. } => "HigherOrderPole",
            CensusError::NotPolynomialAfterClearing { .. } => "NotPolynomialAfterClearing",
            CensusError::NegativeBettiCoefficient { .. } => "NegativeBettiCoefficient",
            CensusError::RoundingFailure { .. } => "RoundingFailure",
            CensusError::IdentityViolation(_) => "IdentityViolation",
            CensusError::UnsupportedGenus(_) => "UnsupportedGenus",
            CensusError::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T, E = CensusError> = core::result::Result<T, E>;

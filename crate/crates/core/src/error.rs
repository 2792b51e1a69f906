use thiserror::Error;

/// Errors raised by every module of the toolkit.
///
/// Each variant carries a stable machine-readable code (see [`Error::code`])
/// which the command-line driver forwards in its JSON error object.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("undefined resultant: both inputs are zero")]
    UndefinedResultant,
    #[error("squarefree required")]
    NotSquarefree,
    #[error("cannot factor zero")]
    FactorZero,
    #[error("polynomial is not homogeneous of degree {expected}")]
    NotHomogeneous { expected: u32 },
    #[error("normalization failed: {0}")]
    NormalizationFailed(String),
    #[error("not a prime: {0}")]
    NotPrime(u64),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("not G-stable under generator {generator}")]
    NotStable { generator: usize },
    #[error("generator {generator} is outside the acting group")]
    OutsideGroup { generator: usize },
    #[error("map is not G-equivariant at generator {generator}")]
    NotEquivariant { generator: usize },
    #[error("{what} too large: {size} exceeds limit {limit}")]
    TooLarge { what: &'static str, size: u128, limit: u128 },
    #[error("genus {0} out of range (2..=4)")]
    GenusOutOfRange(u32),
    #[error("lemma hypotheses not met: {0}")]
    LemmaHypotheses(String),
    #[error("offsets do not sum to zero")]
    OffsetsNonzeroSum,
    #[error("not a theta structure: {0}")]
    NotThetaStructure(String),
    #[error("quadratic form is not associated to the symplectic pairing")]
    NotAssociated,
    #[error("action relation violated: {0}")]
    RelationViolated(String),
    #[error("cyclic action does not have the stated order")]
    BadCyclicOrder,
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
    #[error("singular curve")]
    Singular,
    #[error("no admissible projection in the schedule")]
    NoProjection,
    #[error("degenerate conic system for triple {0:?}")]
    DegenerateConic([usize; 3]),
    #[error("bitangent list is not Frobenius-closed")]
    NotFrobeniusClosed,
    #[error("interpolation rank deficiency: solution space has dimension {0}")]
    Interpolation(usize),
    #[error("sigma not preserved by generator {0}")]
    SigmaNotPreserved(usize),
    #[error("inconsistent local data: {0}")]
    Inconsistent(String),
    #[error("missing data: {0}")]
    Missing(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Short stable identifier used in serialized error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UndefinedResultant => "undefined_resultant",
            Error::NotSquarefree => "not_squarefree",
            Error::FactorZero => "factor_zero",
            Error::NotHomogeneous { .. } => "not_homogeneous",
            Error::NormalizationFailed(_) => "normalization_failed",
            Error::NotPrime(_) => "not_prime",
            Error::FieldMismatch(_) => "field_mismatch",
            Error::DegreeMismatch(_) => "degree_mismatch",
            Error::NotStable { .. } => "not_stable",
            Error::OutsideGroup { .. } => "outside_group",
            Error::NotEquivariant { .. } => "not_equivariant",
            Error::TooLarge { .. } => "too_large",
            Error::GenusOutOfRange(_) => "genus_out_of_range",
            Error::LemmaHypotheses(_) => "lemma_hypotheses",
            Error::OffsetsNonzeroSum => "offsets_nonzero_sum",
            Error::NotThetaStructure(_) => "not_theta_structure",
            Error::NotAssociated => "not_associated",
            Error::RelationViolated(_) => "relation_violated",
            Error::BadCyclicOrder => "bad_cyclic_order",
            Error::BadReduction(_) => "bad_reduction",
            Error::Singular => "singular",
            Error::NoProjection => "no_projection",
            Error::DegenerateConic(_) => "degenerate_conic",
            Error::NotFrobeniusClosed => "not_frobenius_closed",
            Error::Interpolation(_) => "interpolation",
            Error::SigmaNotPreserved(_) => "sigma_not_preserved",
            Error::Inconsistent(_) => "inconsistent",
            Error::Missing(_) => "missing",
            Error::Invalid(_) => "invalid_input",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

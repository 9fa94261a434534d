use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("form is not divisible")]
    NotDivisible,
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("[0:0] is not a point of P^1")]
    ZeroPoint,
    #[error("singular Mobius transformation")]
    SingularMobius,
    #[error("coincident points")]
    CoincidentPoints,
    #[error("composition is undefined: the pair lies in the indeterminacy locus")]
    PairIndeterminate,
    #[error("iterate undefined on I(d)")]
    IterateUndefined,
    #[error("reduced map is constant")]
    ConstantReducedMap,
    #[error("limit is the zero vector")]
    ZeroLimit,
    #[error("no normal form applies: {0}")]
    NoNormalForm(String),
    #[error("input is not stable: {0}")]
    NotStable(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("no certificate found: {0}")]
    NoCertificate(String),
    #[error("stability strategies disagree: {0}")]
    StrategyMismatch(String),
    #[error("field error: {0}")]
    Field(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("inhomogeneous polynomial: {0}")]
    Inhomogeneous(String),
    #[error("map expression has total degree 0")]
    DegreeZeroMap,
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroPolynomial => "zero_polynomial",
            Error::DegreeMismatch(..) => "degree_mismatch",
            Error::NotDivisible => "not_divisible",
            Error::InvalidMap(_) => "invalid_map",
            Error::ZeroPoint => "zero_point",
            Error::SingularMobius => "singular_mobius",
            Error::CoincidentPoints => "coincident_points",
            Error::PairIndeterminate => "pair_indeterminate",
            Error::IterateUndefined => "iterate_undefined",
            Error::ConstantReducedMap => "constant_reduced_map",
            Error::ZeroLimit => "zero_limit",
            Error::NoNormalForm(_) => "no_normal_form",
            Error::NotStable(_) => "not_stable",
            Error::Inconclusive(_) => "inconclusive",
            Error::Unsupported(_) => "unsupported",
            Error::NoCertificate(_) => "no_certificate",
            Error::StrategyMismatch(_) => "strategy_mismatch",
            Error::Field(_) => "field",
            Error::Syntax { .. } => "syntax",
            Error::Inhomogeneous(_) => "inhomogeneous",
            Error::DegreeZeroMap => "degree_zero_map",
        }
    }

    /// Cases the library recognizes but deliberately does not decide.
    pub fn is_unsupported(&self) -> bool {
        matches!(self, Error::Unsupported(_) | Error::NoCertificate(_) | Error::Inconclusive(_))
    }
}

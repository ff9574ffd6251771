use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NonAssociative(String, String, String),
    #[error("zero law fails at element {0}")]
    ZeroLawViolation(String),
    #[error("not 0-left cancellative: {0}*{1} = {0}*{2} != 0")]
    NotLeftCancellative(String, String, String),
    #[error("{0} has no right local unit")]
    NoRightUnit(String),
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("{0} and {1} have no least common multiple")]
    NoLcm(String, String),
    #[error("least common multiples missing, first at ({0}, {1})")]
    NoLcms(String, String),
    #[error("carrier sizes differ: {0} vs {1}")]
    CarrierMismatch(usize, usize),
    #[error("partial map is not injective at target {0}")]
    NotInjective(usize),
    #[error("lambda must be nonempty")]
    EmptyLambda,
    #[error("bad lambda: {0}")]
    BadLambda(String),
    #[error("carrier of size {size} exceeds the enumeration limit {limit}")]
    CarrierTooLarge { size: usize, limit: usize },
    #[error("{r}*{s} = 0")]
    ZeroHit { r: String, s: String },
    #[error("string does not meet {0}S")]
    EmptyIntersection(String),
    #[error("set has no normal-form witness")]
    NoWitness,
    #[error("string is degenerate")]
    DegenerateString,
    #[error("character is outside the domain of the dual map of {0}")]
    DomainViolation(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("subset is not invariant: {0}")]
    NotInvariant(String),
    #[error("invalid subshift spec: {0}")]
    InvalidSpec(String),
    #[error("language is not factor closed: {0} is missing")]
    NotFactorClosed(String),
    #[error("word {0} is not admissible")]
    InadmissibleWord(String),
    #[error("explicit languages carry no automaton")]
    ExplicitLanguageUnsupported,
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("divisor has a non-invertible constant term; shift out the leading power first")]
    NonUnitDivisor,
    #[error("inner series of a composition must have zero constant term")]
    NonzeroConstantTerm,
    #[error("series must lie in y + y^2 C[[y]] (zero constant term, invertible linear term)")]
    BadLowestTerms,
    #[error("bad constant term: {0}")]
    BadConstantTerm(&'static str),
    #[error("cannot shift out y^{shift}: coefficient of y^{index} is nonzero")]
    NonzeroLowTerms { shift: usize, index: usize },
    #[error("polynomial {index} is not monic of degree {index}")]
    BadLeadingCoefficient { index: usize },
    #[error("series f_{index} does not lie in y^{index} + y^{next} C[[y]]", next = index + 1)]
    BadValuation { index: usize },
    #[error("internal inconsistency: {0}")]
    InconsistentSystem(String),
    #[error("table holds indices up to {available}, need {needed}")]
    InsufficientTable { needed: usize, available: usize },
    #[error("vanishing lemma violated: f_0 == 1 is {f0_is_one}, all p_n(0) == 0 is {all_vanish}")]
    LemmaViolation { f0_is_one: bool, all_vanish: bool },
    #[error("f_0(D) p_{index} is not divisible by x")]
    NonzeroRemainder { index: usize },
    #[error("validity window too small: {0}")]
    WindowTooSmall(String),
    #[error("ratio series for index {index} is not well defined")]
    RatioValuation { index: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("truncation order exhausted: need {needed}, have {available}")]
    OrderExhausted { needed: usize, available: usize },
    #[error("family is not of binomial type")]
    NotBinomial,
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("negative exponent on non-Laurent variable `{0}`")]
    NegativeExponent(String),
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("derivation has no image for variable `{0}`")]
    MissingImage(String),
    #[error("expected a polynomial without negative exponents")]
    NotPolynomial,
    #[error("element must be nonzero")]
    ZeroElement,
    #[error("bracket {{{hi},{lo}}} violates Ore triangularity: {reason}")]
    Triangularity { hi: String, lo: String, reason: String },
    #[error("level {level} out of range 0..={max}")]
    LevelOutOfRange { level: usize, max: usize },
    #[error("Groebner computation exceeded its budget of {budget} reduction steps")]
    GroebnerBudget { budget: u64 },
    #[error("not a Poisson affine space: bracket {{{hi},{lo}}} = {value} is not a multiple of the product")]
    NotAffineSpace { hi: String, lo: String, value: String },
    #[error("derivation iterates of {element} do not vanish within {bound} steps")]
    NotNilpotent { element: String, bound: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    Input(String),
}

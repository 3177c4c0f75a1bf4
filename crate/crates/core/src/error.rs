use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid symbol name `{0}`")]
    InvalidSymbolName(String),
    #[error("symbol `{0}` declared twice")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("monomial order precedence: {0}")]
    BadPrecedence(String),

    #[error("divisor map: {0}")]
    DivisorMap(String),
    #[error("rewrite step: {0}")]
    RewriteStep(String),
    #[error("reduction exceeded {0} steps (possibly nonterminating)")]
    StepLimit(usize),
    #[error("signature lemma violated while rewriting: {0}")]
    SignatureLemma(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("reduction did not reach zero; no certificate")]
    NonzeroRemainder,
    #[error("criterion requires expanded form (term {0} has a non-monomial cofactor)")]
    NotExpanded(usize),
    #[error("missing inner certificate for generator `{0}`")]
    MissingCertificate(String),
    #[error("generator `{0}` is bound to two different polynomials")]
    ConflictingGenerator(String),

    #[error("generator {0} is not monic")]
    NotMonic(usize),
    #[error("not Q-order compatible: {}", .0.join(", "))]
    NotQOrderCompatible(Vec<String>),

    #[error("representation: {0}")]
    Representation(String),
    #[error("pair ({0}, {1}) is not a signature of the polynomial")]
    PairNotInSignature(usize, usize),
    #[error("representation is inconsistent with the labelling")]
    InconsistentRepresentation,
    #[error("representation consistency is unknown; an explicit override is required")]
    UnknownConsistency,

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("input error at {pointer}: {msg}")]
    Input { pointer: String, msg: String },
}

impl Error {
    pub fn input(pointer: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Input {
            pointer: pointer.into(),
            msg: msg.into(),
        }
    }
}

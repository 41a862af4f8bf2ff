use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("duplicate rule for letter `{0}`")]
    DuplicateRule(String),

    #[error("missing rule for letter `{0}`")]
    MissingRule(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("morphism is not prolongable on `{0}`")]
    NotProlongable(String),

    #[error("word length exceeded the bound of {0} letters")]
    LengthOverflow(usize),

    #[error("factor set did not stabilize within {0} iterations")]
    StabilizationFailed(usize),

    /// The operation needs factors up to `needed` but the set only stores
    /// words up to `available`.
    #[error("horizon too small for {context}: need {needed}, have {available}")]
    HorizonInsufficient {
        context: String,
        needed: usize,
        available: usize,
    },

    #[error("word `{0}` is not in the set")]
    NotInSet(String),

    #[error("word `{0}` is not biextendable within the horizon")]
    NotBiextendable(String),

    #[error("codes may not contain the empty word")]
    EmptyWordInCode,

    #[error("not a bifix code: `{0}` is a proper {1} of `{2}`")]
    NotBifix(String, &'static str, String),

    #[error("code is not S-maximal: `{0}` has no prefix in it")]
    NotSMaximal(String),

    #[error("S-degree disagreement: `{0}` has {1} parses, `{2}` has {3}")]
    DegreeDisagreement(String, usize, String, usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("word `{0}` occurs fewer than twice in the scanned prefix")]
    TooFewOccurrences(String),

    #[error("subgroup has infinite index")]
    InfiniteIndex,
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet needs at least 2 letters, got {0}")]
    AlphabetTooSmall(usize),
    #[error("duplicate alphabet symbol {0:?}")]
    DuplicateSymbol(String),
    #[error("empty alphabet symbol")]
    EmptySymbol,
    #[error("expected {expected} probabilities, got {got}")]
    ProbabilityCount { expected: usize, got: usize },
    #[error("probability of letter {letter} is {value}, must be strictly positive")]
    NonPositiveProbability { letter: usize, value: String },
    #[error("probabilities sum to {0}, not 1")]
    ProbabilitySum(String),
    #[error("cannot parse {0:?} as an exact rational")]
    RationalSyntax(String),
    #[error("letter {letter} is outside the alphabet 0..{r}")]
    LetterOutOfRange { letter: usize, r: usize },
    #[error("unknown symbol at {rest:?}")]
    UnknownSymbol { rest: String },
    #[error("operation requires a word of length >= {min}, got {len}")]
    WordTooShort { min: usize, len: usize },
    #[error("trials must be at least 1")]
    ZeroTrials,
    #[error("max_steps {max_steps} is smaller than the pattern length {len}")]
    MaxStepsTooSmall { max_steps: u64, len: usize },
    #[error("enumeration of {words} words exceeds the budget of {budget}")]
    BudgetExceeded { words: u128, budget: u128 },
    #[error("internal error: singular linear system at column {0}")]
    SingularSystem(usize),
}

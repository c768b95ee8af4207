use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("budget exceeded in {stage}: limit {limit}")]
    BudgetExceeded { stage: String, limit: usize },

    #[error("word `{0}` is not geodesic")]
    NotGeodesic(String),

    #[error("word `{0}` is rejected by the window filter")]
    FilterRejected(String),

    #[error("endpoints of `{0}` and `{1}` are more than distance 1 apart")]
    EndpointMismatch(String, String),

    #[error("alphabets do not match")]
    AlphabetMismatch,

    #[error("operation requires a deterministic automaton")]
    NondeterministicInput,

    #[error("operation requires a trimmed automaton")]
    NotTrimmed,

    #[error(
        "inconsistent locality at m = {m}: `{left}` and `{right}` share a signature \
         but disagree after `{letter}` ({detail})"
    )]
    InconsistentLocality {
        m: usize,
        left: String,
        right: String,
        letter: String,
        detail: String,
    },

    #[error("fellow-travel bound r = {r} too small: pair (`{left}`, `{right}`) needs {needed}")]
    BoundTooSmall {
        r: usize,
        needed: usize,
        left: String,
        right: String,
    },

    #[error("{what} did not stabilize after {attempts} escalations (last parameter {last})")]
    NonStabilization {
        what: String,
        attempts: usize,
        last: usize,
    },

    #[error("power iteration did not converge in {iterations} steps: bracket [{lower}, {upper}]")]
    NoConvergence {
        lower: f64,
        upper: f64,
        iterations: usize,
    },

    #[error("no linear recurrence of order <= {max_order} reproduces the counts")]
    NoRecurrence { max_order: usize },

    #[error("word must be nonempty")]
    EmptyWord,

    #[error("prefix too short: need length >= {needed}, got {got}")]
    PrefixTooShort { needed: usize, got: usize },

    #[error("word `{0}` is not accepted")]
    NotAccepted(String),

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("invalid group specification: {0}")]
    InvalidSpec(String),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code for the CLI. Every variant maps to a distinct value.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::UnknownSymbol(_) => 10,
            Error::BudgetExceeded { .. } => 11,
            Error::NotGeodesic(_) => 12,
            Error::FilterRejected(_) => 13,
            Error::EndpointMismatch(..) => 14,
            Error::AlphabetMismatch => 15,
            Error::NondeterministicInput => 16,
            Error::NotTrimmed => 17,
            Error::InconsistentLocality { .. } => 18,
            Error::BoundTooSmall { .. } => 19,
            Error::NonStabilization { .. } => 20,
            Error::NoConvergence { .. } => 21,
            Error::NoRecurrence { .. } => 22,
            Error::EmptyWord => 23,
            Error::PrefixTooShort { .. } => 24,
            Error::NotAccepted(_) => 25,
            Error::UnknownScenario(_) => 26,
            Error::InvalidSpec(_) => 27,
            Error::InvalidAutomaton(_) => 28,
            Error::Io(_) => 29,
        }
    }

    pub(crate) fn budget(stage: impl Into<String>, limit: usize) -> Self {
        Error::BudgetExceeded {
            stage: stage.into(),
            limit,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

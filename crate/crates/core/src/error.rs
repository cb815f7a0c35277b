use thiserror::Error;

/// Errors raised by the library.
///
/// Variants split into input problems (`Parse`, `InvalidZeta`, ...) and
/// violated mathematical preconditions; the CLI maps the two groups to
/// different exit codes via [`Error::is_input_error`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid deformation parameter {0}: zeta must not be 0 or -1")]
    InvalidZeta(String),

    #[error("root {0} is odd; coroot pairings are only defined for even roots")]
    OddRoot(String),

    #[error("root {0} is even; an odd isotropic root is required here")]
    EvenRoot(String),

    #[error("weight {0} is integral; only non-integral weights are in scope")]
    IntegralWeight(String),

    #[error("weight {0} is typical; this operation needs an atypical weight")]
    Typical(String),

    #[error("wrong block kind for {weight}: expected {expected}, found {found}")]
    WrongBlockKind {
        weight: String,
        expected: String,
        found: String,
    },

    #[error("weight {0} is not in its block's normal form; normalize first (or transport via twist)")]
    NotCanonical(String),

    #[error("twist s{index} is not an equivalence at {weight}: coordinate {index} is an integer")]
    TwistNotEquivalence { index: usize, weight: String },

    #[error("flag {0} has no unique maximal weight")]
    NonUniqueMaximum(String),

    #[error("window underflow: weight {0} needs labels outside the window (hard cap reached)")]
    WindowUnderflow(String),

    #[error("weight {weight} is not in the root-lattice coset of the anchor {anchor}")]
    CosetMismatch { weight: String, anchor: String },

    #[error("not a Verma-span element at this depth: {0}")]
    NotVermaSpan(String),

    #[error("gl weight {0} is not in the principal block")]
    OutsidePrincipalBlock(String),

    #[error("unknown verification check `{0}`")]
    UnknownCheck(String),

    #[error("missing parameter `{0}`")]
    MissingParam(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for malformed input, false for a violated mathematical precondition.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_) | Error::InvalidZeta(_) | Error::UnknownCheck(_) | Error::MissingParam(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

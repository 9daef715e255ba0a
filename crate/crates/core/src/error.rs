use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{found} atoms exceed the limit of {limit} for exhaustive enumeration")]
    TooManyAtoms { found: usize, limit: usize },

    #[error("atom `{0}` is not in the universe")]
    UnknownAtom(String),

    #[error("{what}: universe of {found} atoms exceeds the supported maximum of {limit}")]
    Scale { what: &'static str, found: usize, limit: usize },

    #[error("model is over {model} valuations but the universe has {universe}")]
    UniverseMismatch { model: usize, universe: usize },

    #[error("invalid model: {0}")]
    InvalidModel(&'static str),

    #[error("no {0} semantics")]
    NoSemantics(crate::LogicId),

    #[error(transparent)]
    Parse(#[from] crate::syntax::ParseError),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("countermodel construction disagrees with the decision procedure: {0}")]
    Inconsistent(String),
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("sequences share the value {0}")]
    Overlap(u32),

    #[error("word `{0}` is not a sorting word")]
    NotSortingWord(String),

    #[error("path `{0}` is not the image of any sorting word")]
    InvalidPath(String),

    #[error("word is not {k}-regular: {reason}")]
    NotRegular { k: usize, reason: String },

    #[error("pattern {pattern} does not have the required shape: {expected}")]
    Shape { pattern: String, expected: String },

    #[error("{0} is not sortable by a pop stack with bypass")]
    Unsortable(String),

    #[error("size guard: {what} requested at {requested}, limit is {limit}")]
    Guard {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("series coefficient {index} is not an integer")]
    NonInteger { index: usize },

    #[error("denominator has zero constant term")]
    ZeroConstant,

    #[error("machine needs at least one pop stack")]
    NoStacks,

    #[error("composition needs at least one machine")]
    EmptyComposition,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guard(what: &'static str, requested: usize, limit: usize) -> Result<()> {
    if requested > limit {
        Err(Error::Guard {
            what,
            requested,
            limit,
        })
    } else {
        Ok(())
    }
}

use std::fmt;

/// Errors raised by group computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("cannot parse permutation {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("{element} is not an element of {group}")]
    NotMember { element: String, group: String },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("{what} = {value} exceeds the {cap} cap of {limit}{hint}", hint = hint_suffix(.hint))]
    CapExceeded {
        what: &'static str,
        value: u128,
        cap: &'static str,
        limit: u128,
        hint: Option<&'static str>,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

fn hint_suffix(hint: &Option<&'static str>) -> String {
    match hint {
        Some(h) => format!(" ({h})"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn input(msg: impl fmt::Display) -> Self {
        Error::Input(msg.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

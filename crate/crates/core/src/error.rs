use alloc::string::String;

/// A snapshot invariant that does not hold.
///
/// `path` points at the offending field using the same notation as the JSON
/// document, e.g. `elements[3].box.width`.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{path}: {message}")]
pub struct ValidationError {
    pub path: String,
    pub message: String,
}

impl ValidationError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self { path: path.into(), message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("reference page has no visible elements")]
    EmptyReference,
    #[error("reward weights must be non-negative, finite and not all zero")]
    Weights,
    #[error("{len} rewards cannot be split into groups of {group_size}")]
    GroupSize { len: usize, group_size: usize },
    #[error("reference length must be positive, got {0}")]
    Domain(f64),
}

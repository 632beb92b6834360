use serde::{Deserialize, Serialize};

/// Machine-readable error record used in HTTP responses and batch slots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: String,
    #[serde(default)]
    pub path: Option<String>,
    pub message: String,
}

impl ErrorBody {
    pub fn new(kind: &str, path: Option<String>, message: impl Into<String>) -> Self {
        Self { kind: kind.to_string(), path, message: message.into() }
    }
}

impl From<&layoutsim_core::Error> for ErrorBody {
    fn from(err: &layoutsim_core::Error) -> Self {
        use layoutsim_core::Error;
        match err {
            Error::Validation(v) => ErrorBody::new("validation", Some(v.path.clone()), v.message.clone()),
            Error::EmptyReference => ErrorBody::new("empty_reference", Some("reference".into()), err.to_string()),
            Error::Weights => ErrorBody::new("weights", Some("weights".into()), err.to_string()),
            Error::GroupSize { .. } => ErrorBody::new("group_size", Some("group_size".into()), err.to_string()),
            Error::Domain(_) => ErrorBody::new("domain", None, err.to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorResponse {
    pub error: ErrorBody,
}

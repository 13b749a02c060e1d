use thiserror::Error;

#[derive(Debug, Error)]
pub enum AuditError {
    #[error("identity {id}: only {valid} of {wanted} samples satisfied the domain")]
    EmptyGrid {
        id: String,
        valid: usize,
        wanted: usize,
    },

    #[error("identity {id}: expressions returned {got} components, expected {want}")]
    Shape { id: String, got: usize, want: usize },

    #[error("duplicate identity id {0}")]
    DuplicateId(String),

    #[error("malformed record: {0}")]
    InvalidRecord(String),

    #[error("no identities matched {0}")]
    NoMatch(String),

    #[error("invalid id filter: {0}")]
    Pattern(#[from] glob::PatternError),

    #[error(transparent)]
    Library(#[from] wp_products::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = AuditError> = std::result::Result<T, E>;

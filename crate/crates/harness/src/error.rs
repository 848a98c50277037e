use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] groupmark_core::Error),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cohort data: {0}")]
    Cohort(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: String,
        #[source]
        source: csv::Error,
    },
    #[error("replicate {replicate}: {source}")]
    Replicate {
        replicate: u64,
        #[source]
        source: Box<HarnessError>,
    },
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    replicate: Option<u64>,
}

impl HarnessError {
    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    pub fn csv(path: impl AsRef<std::path::Path>, source: csv::Error) -> Self {
        HarnessError::Csv {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    /// Stable machine-readable code.
    pub fn kind(&self) -> &'static str {
        match self {
            HarnessError::Core(e) => e.kind(),
            HarnessError::Config(_) => "invalid_config",
            HarnessError::Cohort(_) => "invalid_cohort",
            HarnessError::Io { .. } => "io",
            HarnessError::Csv { .. } => "csv",
            HarnessError::Replicate { source, .. } => source.kind(),
        }
    }

    /// One-line JSON object for stderr.
    pub fn to_json(&self) -> String {
        let replicate = match self {
            HarnessError::Replicate { replicate, .. } => Some(*replicate),
            _ => None,
        };
        let report = ErrorReport {
            error: self.kind(),
            message: self.to_string(),
            replicate,
        };
        serde_json::to_string(&report).unwrap_or_else(|_| format!("{{\"error\":\"{}\"}}", self.kind()))
    }
}

use hypergraph_core::HypergraphError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StreamError {
    #[error("pass {pass} aborted: {reason}")]
    PassAborted { pass: usize, reason: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Graph(#[from] HypergraphError),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl StreamError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        StreamError::Parse {
            line,
            message: message.into(),
        }
    }
}

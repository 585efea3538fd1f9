use stream_engine::StreamError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EstimatorError {
    #[error("configuration: {0}")]
    Config(String),

    #[error("the stream has no edges to sample from")]
    EmptyStream,

    #[error("{algorithm} needs arity {need} or higher, got k = {k}")]
    UnsupportedArity {
        algorithm: &'static str,
        k: usize,
        need: usize,
    },

    /// Every batch tripped the space abort, so no mean survived to feed the
    /// median. With the default knobs this has probability well under the
    /// configured failure bound; seeing it usually means `abort_factor` or
    /// `expected_r_budget` was set too tight for the instance.
    #[error("all {batches} estimation batches aborted on their space budget")]
    EstimationFailed { batches: u64 },

    #[error(transparent)]
    Stream(#[from] StreamError),
}

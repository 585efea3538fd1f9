//! Rewindable hyperedge streams with pass orchestration and space metering.
//!
//! The stream owns the full arrival sequence in memory (this is a desk-scale
//! harness, not an out-of-core system); what makes a run "streaming" is that
//! algorithms may only keep state they have charged to a [`SpaceMeter`], and
//! that each rewind is counted as a pass.

mod error;
mod format;
mod meter;
mod stream;

pub use error::StreamError;
pub use format::{parse_edge_list, read_edge_list_file, write_edge_list, DedupPolicy, ParsedEdgeList};
pub use meter::SpaceMeter;
pub use stream::{run_passes, EdgeStream, PassFn};

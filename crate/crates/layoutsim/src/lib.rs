//! Snapshot IO, batch scoring, the HTTP reward service and corpus tools
//! built on [`layoutsim_core`].

pub mod batch;
pub mod bridge;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod json;
pub mod service;

pub use batch::{BatchItem, BatchOutcome, BatchScorer, BatchSlot};
pub use error::ErrorBody;
pub use json::{parse_snapshot, to_json, SnapshotError};

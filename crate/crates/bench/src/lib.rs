//! Benchmarks for the invariant engines and the tabulation pipeline.

use std::path::PathBuf;

/// Data directory at the workspace root.
pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

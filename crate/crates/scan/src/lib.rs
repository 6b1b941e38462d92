//! Batch scans over Hilbert-function families, single-input checks,
//! checkpoints and reports on top of the `multbound` core.

pub mod check;
pub mod checkpoint;
pub mod report;
pub mod scan;

pub use report::{Counts, ExceptionRecord, ScanParams, ScanReport};
pub use scan::{run_scan, ScanOptions};

//! Library surface of the verification runner: the check catalog, the
//! family executor and the report types. The binary in `main.rs` is a thin
//! argument-parsing shell over this.

pub mod catalog;
pub mod report;
pub mod runner;

pub use catalog::{catalog, resolve_selection, CheckDescriptor, Family, Group};
pub use report::{CatalogListing, Report, CONVENTIONS};
pub use runner::{run, CheckResult, RunOptions, Status};

//! Driver for the holomon verification suites: check assembly, reports and
//! plots. The binary in `main.rs` is a thin wrapper around [`app::run`].

pub mod anchors;
pub mod app;
pub mod plot;
pub mod report;
pub mod suite;

pub use app::{run, RunConfig};

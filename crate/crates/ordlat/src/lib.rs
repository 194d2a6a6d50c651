//! File formats, report rendering and the `ordlat` command-line front end
//! for [`ordlat_core`].

pub mod cli;
pub mod dot;
pub mod formats;
pub mod ordexpr;
pub mod suites;

/// Invalid flags or arguments detected after parsing (exit status 2).
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

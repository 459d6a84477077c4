//! File formats, caching, parallel execution and the command-line front end
//! for the `census-core` engine.

pub mod cache;
pub mod cli;
pub mod exec;
pub mod json;
pub mod latex;
pub mod session;

/// Stamped into cache files; bump the trailing number when the value
/// semantics change without a version bump.
pub const ENGINE_VERSION: &str = concat!("census-", env!("CARGO_PKG_VERSION"), "/1");

pub use cache::Cache;
pub use exec::Pool;
pub use session::Session;

//! File formats, manifests, oracle suites, benchmarks and the `lazysel`
//! command line on top of [`lazysel_core`].

pub mod bench;
pub mod cli;
pub mod error;
pub mod io;
pub mod manifest;
pub mod oracle;
pub mod verify;

pub use error::CliError;

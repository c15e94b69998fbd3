//! Sweep runner over the fading-channel performance library: JSON config
//! in, CSV rows out.

pub mod config;
pub mod error;
pub mod output;
pub mod sweep;

pub use config::{Method, SweepConfig};
pub use error::CliError;

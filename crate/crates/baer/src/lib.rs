//! Command-line front end, JSON envelopes and grid sweeps for `baer-core`.

pub mod cli;
pub mod payload;
pub mod sweep;

//! Library surface of the cergen binary: serialization formats and the
//! subcommand implementations, exposed so integration tests can drive
//! them directly.

pub mod commands;
pub mod format;

//! Grid evolution, file formats, verification suites and the `relwave`
//! command line, on top of [`relwave_core`].

#![allow(clippy::needless_range_loop)]

pub mod config;
pub mod demo;
pub mod dump;
pub mod evolve;
pub mod report;
pub mod run;
pub mod specfile;
pub mod suites;

pub use relwave_core as core;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] relwave_core::Error),
    #[error("grid: {0}")]
    Grid(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("config: {0}")]
    Config(String),
    #[error("unknown suite `{0}` (expected one of algebra, modes, solutions, transforms, evolve, all)")]
    UnknownSuite(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status for this error: 3 for I/O, 2 for everything the
    /// user can fix by changing the invocation or its inputs.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Io(_) => 3,
            _ => 2,
        }
    }
}

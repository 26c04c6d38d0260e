//! File formats, random graph generation and the command-line front end
//! for [`superwalk_core`].

pub mod cli;
pub mod graph_io;
pub mod random;

pub use superwalk_core as core;

//! Library surface of the CLI crate: the PGM codec, shared with the
//! integration tests.

pub mod pgm;

//! Library surface of the command-line front end: the benchmark harness,
//! kept separate from argument parsing so tests can drive it directly.

pub mod bench;

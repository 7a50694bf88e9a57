pub mod cycles;
pub mod error;
pub mod graph;
pub mod io;
pub mod rb;
pub mod minor;
pub mod bound;
pub mod constructions;
pub mod extract;
pub mod oracles;
pub mod experiment;
pub mod cli;

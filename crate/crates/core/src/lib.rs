//! Exact q-series machinery for counting representations of integers by
//! mixed forms built from triangular, square, figurate and hexagonal pieces.
//!
//! The pipeline is: build the generating function ([`genfun`]), read off its
//! modular metadata ([`modmeta`]), decompose it against an explicit basis
//! ([`basis`], [`decomp`]) and check every resulting formula against
//! brute-force lattice counts ([`oracle`]).

pub mod arith;
pub mod basis;
pub mod cli;
pub mod decomp;
pub mod etagen;
pub mod genfun;
mod linalg;
pub mod modmeta;
pub mod oracle;
pub mod pkparam;
pub mod qseries;

pub use qseries::{FracQSeries, Q};

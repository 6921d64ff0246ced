//! Files, fixtures, rendering and benchmarks around the solvers.

pub mod bench;
pub mod gen;
pub mod io;
pub mod svg;

//! Exact construction and verification of the symmetry algebra of the
//! three-dimensional Dirac–Dunkl operator for the G2 (and A2) root systems.

pub mod cli;
pub mod clifford;
pub mod exactfield;
pub mod group;
pub mod matrixrep;
pub mod operators;
pub mod poly;
pub mod relations;

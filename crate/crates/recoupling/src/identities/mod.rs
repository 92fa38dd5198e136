//! Standalone symbolic verification of the summation and rearrangement
//! identities underlying the recoupling formulas, plus generic evaluators
//! for the twisted basic hypergeometric and Kampe de Feriet series.

pub mod p5;

pub use p5::{p5_lattice_ok, p5sra_lhs, p5sra_rhs, p5srb_lhs, p5srb_rhs};

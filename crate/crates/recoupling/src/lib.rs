//! Exact recoupling coefficients of su(2) and u_q(2).
//!
//! Computes Wigner 6j, 9j, and 12j coefficients (both kinds) through every
//! explicit formula variant -- single sums for 6j, 6j-expansions, triple,
//! sixfold, and stretched double sums for 9j, fourfold/fivefold sums and
//! their stretched reductions for 12j -- symbolically in q with exact
//! rational arithmetic, and cross-verifies that all variants, symmetry
//! relations, stretched closed forms, and the underlying summation
//! identities agree.
//!
//! Everything is exact: values are coefficients in Q(q^(1/4)) times square
//! roots of q-factorial monomials. There is no floating point anywhere on a
//! computation path; numeric output is produced on demand with
//! guaranteed-digit interval arithmetic.

pub mod cg;
pub mod classical;
pub mod identities;
pub mod ninej;
pub mod error;
pub mod qarith;
pub mod sixj;
pub mod spin;
pub mod twelvej;

pub use error::{Error, Result};
pub use qarith::{QExponent, QLaurent, QRat, SymbolValue};
pub use sixj::{nabla, sixj, SixjVariant};
pub use spin::{triangle_ok, Spin, Triangle};

//! Exact arithmetic substrate: rationals of arbitrary precision, Laurent
//! polynomials in q^(1/4), q-numbers/factorials/Pochhammers/binomials, and
//! radical-carrying symbol values.

pub mod engine;
pub mod factmono;
pub mod field;
pub mod interval;
pub mod laurent;
pub mod qnum;
pub mod qrat;
pub mod symbol;
pub(crate) mod zpoly;

pub use engine::{q_one_engine, CountEngine, Engine, ScalarEngine, SymEngine, Term, TermFate, Val};
pub use factmono::FactMonomial;
pub use field::{ExtCtx, FieldCtx, RationalCtx};
pub use laurent::{QExponent, QLaurent};
pub use qnum::{int_factorial, q_binomial, q_factorial, q_number, q_pochhammer};
pub use qrat::QRat;
pub use symbol::{format_decimal, SymbolValue};

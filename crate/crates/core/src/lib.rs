//! Exact tooling around join powers, vertex links and linking numbers.
//!
//! The crate is split along the objects it manipulates:
//!
//! - [`set_system`]: finite set systems over `[a]`, the intersection-bound and
//!   power-mean inequalities, and the double-counting identities behind them.
//! - [`complex`]: abstract simplicial complexes stored by facets, joins, join
//!   powers `[r]^{*p}`, vertex links, and small-scale pattern search.
//! - [`extremal`]: exact exponents `d + 1 - r^{1-d}`, the symbolic constant
//!   recurrence, and a numeric trace of the link-based inductive step.
//! - [`linking`]: exact rational linking numbers of polygonal curves in R³
//!   (two independent algorithms) and a linkless-embedding checker.
//!
//! Everything that decides a sign or an inequality is done in exact integer or
//! rational arithmetic. Floating point only appears in display fields.

pub mod complex;
pub mod error;
pub mod extremal;
pub mod linking;
pub mod set_system;

mod bigfmt;

pub use error::{Error, Result};

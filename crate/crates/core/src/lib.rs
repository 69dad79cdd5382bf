//! Bounded-scale tools for multiplicative finite embeddability and
//! largeness properties of sets of natural numbers.

pub mod arith;
pub mod constructions;
pub mod embed;
pub mod error;
pub mod finite_set;
pub mod largeness;
pub mod setlang;
pub mod verdict;

pub use error::{Error, Result};
pub use finite_set::FiniteSet;
pub use setlang::{Evaluator, LazySet, SetExpr};
pub use verdict::{Certificate, Direction, Mode, Verdict};

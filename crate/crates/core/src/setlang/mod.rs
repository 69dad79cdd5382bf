//! The set-description language: syntax, parsing and evaluation.

pub mod ast;
pub mod lazy;
pub(crate) mod node;
pub mod parser;
pub mod periodic;

pub use ast::{Param, SeqSpec, SetExpr, MAX_SEQUENCE_LEN};
pub use lazy::{
    eval, finite_products, finite_sums, parse_set_file, read_set_file, Evaluator, Exactness,
    LazySet, MAX_HORIZON,
};
pub use node::UNBOUNDED;
pub use parser::parse;
pub use periodic::Periodic;

//! Polymorphic first-order logic with rewrite rules: syntax, the `.tffx`
//! reader and well-formedness checking.

pub mod ast;
pub mod check;
pub mod parse;
pub mod sexp;

pub use ast::{neq, not, CtxEntry, Formula, Item, TffTerm, TffType, Theory};
pub use check::{
    infer_term, wf_formula, wf_theory, wf_type, Env, TffContext, TffError, TheoryError,
};
pub use parse::{parse_theory, read_formula, read_term, read_type, ParsedTheory, Scope};
pub use sexp::FormatError;

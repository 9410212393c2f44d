//! Surface syntax for `.dk` files: lexer, parser, printer, and name
//! resolution into kernel terms.

pub mod ast;
mod lexer;
mod parser;
mod printer;
pub mod scope;

pub use ast::{Entry, Expr, Located, Span};
pub use parser::{parse_file, parse_term};
pub use printer::{print_entry, print_expr, print_file};
pub use scope::{KEntry, Names, ScopeError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{span}: syntax error: expected {}, found {found}", expected.join(" or "))]
pub struct SyntaxError {
    pub span: Span,
    pub expected: Vec<String>,
    pub found: String,
}

impl SyntaxError {
    pub fn new(span: Span, expected: Vec<String>, found: &str) -> Self {
        SyntaxError {
            span,
            expected,
            found: found.to_string(),
        }
    }
}

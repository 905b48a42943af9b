//! Formula syntax: ASTs, vocabularies, parsing, printing and measures.

pub mod ast;
mod lexer;
pub mod measures;
pub mod parser;
pub mod printer;
pub mod vocab;

pub use ast::*;
pub use measures::*;
pub use parser::{
    infer_vocabulary, is_keyword, parse, parse_fo, parse_mtl, parse_so, parse_team, ErrorKind, ParseError, SoContext,
};
pub use printer::{print, print_fo, print_mtl, print_so, print_team, print_term, Style};
pub use vocab::*;

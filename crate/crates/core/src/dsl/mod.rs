//! Input language: declarations of rings, primes, maps, modules and
//! cotorsion flat data, followed by queries answered by the engine.

mod ast;
mod lexer;
mod parser;
mod runner;

pub use ast::{Arg, CardLit, CfBody, CompLit, Decl, EntryLit, Item, LocalizeAt, PrimeLit, Program, Query, RingExpr};
pub use lexer::{lex, ParseError, Span, Tok};
pub use parser::{parse_program, parse_with, query_kinds};
pub use runner::{
    cf_module_json, run_program, specset_json, step_json, Cf, Diagnostic, QueryResult, Report, RunOptions, Session, Status, Symbol, SCHEMA,
};

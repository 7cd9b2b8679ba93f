//! Library half of the command line tool: the expression language and the
//! threaded verification driver, kept separate from argument handling so
//! tests can call them directly.

pub mod driver;
pub mod expr;

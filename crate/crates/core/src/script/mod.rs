//! A small interpreter for session scripts written in R idiom:
//!
//! ```text
//! d <- disord(1:10)
//! e <- 10 + 3*d - d^2
//! d[e < 4] <- e[e < 4]
//! sort(d)
//! try(d[1])
//! ```
//!
//! One statement per line, `<-` assigns, `#` starts a comment. Results of
//! bare expressions are echoed in the same formats the library uses for
//! display; errors print a stable code and message.

mod interp;
mod lexer;
mod parser;
mod transcript;

pub use interp::{run_script, Faults, LineResult, Object, Options, ScriptOutcome, Session};
pub use lexer::{tokenize, Token};
pub use parser::{parse_line, parse_script, Expr, ScriptParseError, Statement, Target};
pub use transcript::{error_text, Entry, Stream, Transcript};

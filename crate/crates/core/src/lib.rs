//! A small Lisp whose functions can be called lazily.
//!
//! `deflazy` defines a function twice over: a strict version reached by
//! ordinary calls and `funcall`, and a lazy version reached through
//! `lazy-call`. A lazy call wraps each non-constant argument form in a thunk;
//! inside the callee, every read of a parameter forces its thunk. `lazy`
//! turns any lambda into a lazy function object that can be stored and passed
//! around like any other value.
//!
//! ```
//! use lazycall::Interpreter;
//!
//! let mut interp = Interpreter::new();
//! interp.eval_str("(deflazy pick (c a b) (if c a b))").unwrap();
//! let v = interp.eval_str("(lazy-call #'pick t 42 (diverge))").unwrap();
//! assert_eq!(v.to_string(), "42");
//! ```
//!
//! By default thunks are call-by-name: each force re-evaluates the delayed
//! expression. [`Config::memoize`] switches every thunk to call-by-need.
//!
//! The runnable programs under `examples/` walk through each capability.

pub mod builtins;
pub mod cli;
pub mod env;
pub mod error;
pub mod interp;
pub mod lambda_list;
pub mod lazy;
pub mod print;
pub mod reader;
pub mod value;

pub use error::{Error, EvalErrorKind, Result};
pub use interp::{Config, Interpreter, PRELUDE};
pub use lambda_list::LambdaList;
pub use lazy::{constant_p, Thunk};
pub use print::print_value;
pub use reader::{parse, read_str, tokenize, Datum, Form, Position, Token, TokenKind};
pub use value::{Closure, Mode, Symbol, Value};

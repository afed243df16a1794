use std::fmt;
use std::rc::Rc;

use crate::builtins::Builtin;
use crate::env::Env;
use crate::lambda_list::LambdaList;
use crate::lazy::Thunk;
use crate::reader::Form;

/// An upper-cased, case-insensitive name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Rc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Rc::from(name.to_uppercase()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// How a function binds its arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Arguments arrive evaluated and are bound to plain slots.
    Strict,
    /// Arguments arrive as thunks (or pass-through constants) and are bound
    /// to slots that force on every read.
    Lazy,
}

/// A user-defined function: lambda list, body and captured environment.
pub struct Closure {
    pub name: Option<Symbol>,
    pub params: Rc<LambdaList>,
    pub body: Rc<[Form]>,
    pub env: Env,
    pub mode: Mode,
}

impl Closure {
    /// The same function with a different binding mode.
    pub fn with_mode(&self, mode: Mode) -> Closure {
        Closure {
            name: self.name.clone(),
            params: self.params.clone(),
            body: self.body.clone(),
            env: self.env.clone(),
            mode,
        }
    }
}

impl fmt::Debug for Closure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Closure")
            .field("name", &self.name)
            .field("mode", &self.mode)
            .finish_non_exhaustive()
    }
}

#[derive(Clone)]
pub enum Value {
    Nil,
    T,
    Integer(i64),
    Symbol(Symbol),
    Keyword(Symbol),
    Str(Rc<str>),
    Cons(Rc<(Value, Value)>),
    Closure(Rc<Closure>),
    Builtin(&'static Builtin),
    Thunk(Rc<Thunk>),
}

impl Value {
    pub fn cons(car: Value, cdr: Value) -> Value {
        Value::Cons(Rc::new((car, cdr)))
    }

    pub fn list<I>(items: I) -> Value
    where
        I: IntoIterator<Item = Value>,
        I::IntoIter: DoubleEndedIterator,
    {
        items
            .into_iter()
            .rev()
            .fold(Value::Nil, |tail, item| Value::cons(item, tail))
    }

    pub fn bool(b: bool) -> Value {
        if b {
            Value::T
        } else {
            Value::Nil
        }
    }

    pub fn symbol(name: &str) -> Value {
        Value::Symbol(Symbol::new(name))
    }

    pub fn is_nil(&self) -> bool {
        matches!(self, Value::Nil)
    }

    pub fn is_truthy(&self) -> bool {
        !self.is_nil()
    }

    pub fn is_thunk(&self) -> bool {
        matches!(self, Value::Thunk(_))
    }

    pub fn is_function(&self) -> bool {
        matches!(self, Value::Closure(_) | Value::Builtin(_))
    }

    pub fn as_integer(&self) -> Option<i64> {
        match self {
            Value::Integer(n) => Some(*n),
            _ => None,
        }
    }

    /// Elements of a proper list, or `None` for anything else.
    pub fn list_items(&self) -> Option<Vec<Value>> {
        let mut items = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Value::Nil => return Some(items),
                Value::Cons(pair) => {
                    items.push(pair.0.clone());
                    cur = &pair.1;
                }
                _ => return None,
            }
        }
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Nil => "null",
            Value::T => "boolean",
            Value::Integer(_) => "integer",
            Value::Symbol(_) => "symbol",
            Value::Keyword(_) => "keyword",
            Value::Str(_) => "string",
            Value::Cons(_) => "cons",
            Value::Closure(_) | Value::Builtin(_) => "function",
            Value::Thunk(_) => "thunk",
        }
    }

    /// Identity for atoms; pointer identity for conses, functions and thunks.
    pub fn eql(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Nil, Value::Nil) | (Value::T, Value::T) => true,
            (Value::Integer(a), Value::Integer(b)) => a == b,
            (Value::Symbol(a), Value::Symbol(b)) | (Value::Keyword(a), Value::Keyword(b)) => a == b,
            (Value::Str(a), Value::Str(b)) => Rc::ptr_eq(a, b),
            (Value::Cons(a), Value::Cons(b)) => Rc::ptr_eq(a, b),
            (Value::Closure(a), Value::Closure(b)) => Rc::ptr_eq(a, b),
            (Value::Builtin(a), Value::Builtin(b)) => std::ptr::eq(*a, *b),
            (Value::Thunk(a), Value::Thunk(b)) => Rc::ptr_eq(a, b),
            _ => false,
        }
    }
}

/// Structural equality on data; functions and thunks compare by identity.
impl PartialEq for Value {
    fn eq(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Str(a), Value::Str(b)) => a == b,
            (Value::Cons(a), Value::Cons(b)) => a.0 == b.0 && a.1 == b.1,
            _ => self.eql(other),
        }
    }
}

impl From<i64> for Value {
    fn from(n: i64) -> Self {
        Value::Integer(n)
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::print::print_value(self))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::print::print_value(self))
    }
}

//! Thunks and the lazy calling convention.
//!
//! A lazy call evaluates its operator, wraps every non-constant argument form
//! in a thunk, and binds the results to parameter slots that force on read.
//! `deflazy` installs a strict function under the name and a lazy twin in the
//! interpreter's lazy registry; `lazy` turns a lambda or function designator
//! into a lazy function object.

use std::cell::RefCell;
use std::fmt;
use std::rc::Rc;

use crate::env::Env;
use crate::error::{Error, EvalErrorKind, Result};
use crate::interp::Interpreter;
use crate::lambda_list::LambdaList;
use crate::reader::{Datum, Form};
use crate::value::{Closure, Mode, Symbol, Value};

/// A delayed expression together with the environment it closes over.
pub struct Thunk {
    expr: Form,
    env: Env,
    /// Present only on memoizing thunks.
    memo: Option<RefCell<Option<Value>>>,
}

impl Thunk {
    pub fn expr(&self) -> &Form {
        &self.expr
    }

    pub fn is_memoizing(&self) -> bool {
        self.memo.is_some()
    }

    /// True once a memoizing thunk has stored its value.
    pub fn is_forced(&self) -> bool {
        self.memo.as_ref().is_some_and(|m| m.borrow().is_some())
    }
}

impl fmt::Debug for Thunk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Thunk")
            .field("expr", &self.expr.to_value())
            .field("memoizing", &self.is_memoizing())
            .finish()
    }
}

/// Self-evaluating atoms and quoted data: the argument forms a lazy call
/// passes through without allocating a thunk.
pub fn constant_p(form: &Form) -> bool {
    match &form.datum {
        Datum::Nil | Datum::T | Datum::Integer(_) | Datum::Str(_) | Datum::Keyword(_) => true,
        Datum::Symbol(_) => false,
        Datum::List(items) => items.len() == 2 && form.is_call_to("QUOTE"),
    }
}

fn literal(form: &Form) -> Value {
    match form.as_list() {
        Some([_, quoted]) => quoted.to_value(),
        _ => form.to_value(),
    }
}

impl Interpreter {
    /// Captures `expr` and `env` without evaluating anything.
    pub fn delay(&mut self, expr: Form, env: Env) -> Value {
        self.thunks_allocated += 1;
        let memo = self.config.memoize.then(|| RefCell::new(None));
        Value::Thunk(Rc::new(Thunk { expr, env, memo }))
    }

    /// Evaluates thunks until a non-thunk results; anything else is returned
    /// as is. Memoizing thunks along the chain store the final value.
    pub fn force(&mut self, value: Value) -> Result<Value> {
        let mut current = value;
        let mut pending: Vec<Rc<Thunk>> = Vec::new();
        while let Value::Thunk(thunk) = current {
            if let Some(memo) = &thunk.memo {
                if let Some(stored) = memo.borrow().clone() {
                    current = stored;
                    continue;
                }
                pending.push(thunk.clone());
            }
            current = self.eval(&thunk.expr, &thunk.env)?;
        }
        for thunk in pending {
            if let Some(memo) = &thunk.memo {
                *memo.borrow_mut() = Some(current.clone());
            }
        }
        Ok(current)
    }

    /// Installs the strict half of `name` as a global function and the lazy
    /// half in the lazy registry. Both share one lambda list and body.
    pub fn define_lazy(&mut self, name: Symbol, params: LambdaList, body: Rc<[Form]>, env: &Env) -> Symbol {
        let strict = Closure {
            name: Some(name.clone()),
            params: Rc::new(params),
            body,
            env: env.clone(),
            mode: Mode::Strict,
        };
        let lazy = strict.with_mode(Mode::Lazy);
        self.functions.insert(name.clone(), Value::Closure(Rc::new(strict)));
        self.lazy_registry.insert(name.clone(), Rc::new(lazy));
        name
    }

    /// The lazy version registered for `name`, if `deflazy` defined one.
    pub fn lazy_version(&self, name: &Symbol) -> Option<Rc<Closure>> {
        self.lazy_registry.get(name).cloned()
    }

    /// Resolves an operator value to the lazy function a lazy call applies.
    pub fn resolve_lazy_operator(&self, op: &Value) -> Result<Rc<Closure>> {
        match op {
            Value::Closure(c) if c.mode == Mode::Lazy => Ok(c.clone()),
            Value::Closure(c) => c.name.as_ref().and_then(|name| self.lazy_version(name)).ok_or_else(|| {
                Error::eval(
                    EvalErrorKind::NoLazyVersion,
                    format!("{op} has no lazy version; define it with deflazy or wrap it with lazy"),
                )
            }),
            Value::Symbol(name) => self.lazy_version(name).ok_or_else(|| {
                Error::eval(
                    EvalErrorKind::NoLazyVersion,
                    format!("{name} has no lazy version; define it with deflazy"),
                )
            }),
            Value::Builtin(b) => Err(Error::eval(
                EvalErrorKind::NoLazyVersion,
                format!("builtin {} has no lazy version", b.name),
            )),
            other => Err(Error::eval(
                EvalErrorKind::NotAFunction,
                format!("{other} is not a function designator"),
            )),
        }
    }

    /// `(lazy-call OP ARG...)`: the operator is evaluated strictly, constant
    /// arguments pass through and every other argument is delayed.
    pub fn lazy_call(&mut self, op_form: &Form, arg_forms: &[Form], env: &Env) -> Result<Value> {
        let op = self.eval(op_form, env)?;
        let function = self
            .resolve_lazy_operator(&op)
            .map_err(|e| e.located(op_form.position))?;
        let args = arg_forms
            .iter()
            .map(|form| {
                if constant_p(form) {
                    literal(form)
                } else {
                    self.delay(form.clone(), env.clone())
                }
            })
            .collect();
        self.apply_lazy(&function, args)
    }

    /// Applies a lazy-mode function to already thunked arguments.
    pub fn apply_lazy(&mut self, function: &Closure, args: Vec<Value>) -> Result<Value> {
        debug_assert_eq!(function.mode, Mode::Lazy);
        let frame = self.bind_lambda_list(
            &function.params,
            args,
            Mode::Lazy,
            &function.env,
            function.name.as_ref(),
        )?;
        self.eval_body(&function.body, &frame)
    }

    /// `(lazy EXPR)`: a lazy function object for a lambda form or a function
    /// designator.
    pub fn lazify(&mut self, expr: &Form, env: &Env) -> Result<Value> {
        let target = if expr.is_call_to("FUNCTION") {
            match expr.as_list() {
                Some([_, inner]) => inner,
                _ => expr,
            }
        } else {
            expr
        };
        if target.is_call_to("LAMBDA") {
            let closure = self.make_lambda(target, env, Mode::Lazy)?;
            return Ok(Value::Closure(Rc::new(closure)));
        }
        let value = match target.as_symbol() {
            Some(name) => match self.lazy_version(name) {
                Some(lazy) => return Ok(Value::Closure(lazy)),
                None if expr.is_call_to("FUNCTION") => {
                    self.function_value(name).map_err(|e| e.located(target.position))?
                }
                // A bare name is a function name first, then a variable.
                None => match self.function_value(name) {
                    Ok(function) => function,
                    Err(_) => self.eval(target, env)?,
                },
            },
            None => self.eval(target, env)?,
        };
        match &value {
            Value::Closure(c) if c.mode == Mode::Lazy => Ok(value.clone()),
            Value::Closure(c) => match c.name.as_ref().and_then(|n| self.lazy_version(n)) {
                Some(lazy) => Ok(Value::Closure(lazy)),
                None => Ok(Value::Closure(Rc::new(c.with_mode(Mode::Lazy)))),
            },
            Value::Builtin(b) => Err(Error::eval(
                EvalErrorKind::NoLazyVersion,
                format!("builtin {} has no lazy version", b.name),
            )
            .located(expr.position)),
            other => Err(Error::eval(
                EvalErrorKind::NotAFunction,
                format!("lazy expects a function, got {other}"),
            )
            .located(expr.position)),
        }
    }
}

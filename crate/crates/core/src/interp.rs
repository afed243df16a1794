//! The strict evaluator: special forms, global definitions and function
//! application.

use std::collections::HashMap;
use std::io::Write;
use std::path::Path;
use std::rc::Rc;

use crate::builtins;
use crate::env::{Env, SlotKind};
use crate::error::{Error, EvalErrorKind, Result};
use crate::lambda_list::LambdaList;
use crate::reader::{read_str, Datum, Form};
use crate::value::{Closure, Mode, Symbol, Value};

/// Source of the stream library loaded into every new interpreter.
pub const PRELUDE: &str = include_str!("prelude.lisp");

/// Evaluation settings fixed for the lifetime of an interpreter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    /// Thunks cache their value after the first force (call-by-need).
    pub memoize: bool,
    /// Evaluation steps plus `(loop)` iterations allowed per top-level form.
    /// `None` means unlimited.
    pub step_limit: Option<u64>,
    /// Maximum nesting of compound-form evaluation.
    pub recursion_limit: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            memoize: false,
            step_limit: Some(10_000_000),
            recursion_limit: 10_000,
        }
    }
}

fn malformed(message: impl Into<String>) -> Error {
    Error::eval(EvalErrorKind::MalformedForm, message)
}

/// One interpreter instance: global variables and functions, the lazy
/// registry, and the counters used to observe evaluation.
pub struct Interpreter {
    pub(crate) config: Config,
    pub(crate) globals: HashMap<Symbol, Value>,
    pub(crate) functions: HashMap<Symbol, Value>,
    pub(crate) lazy_registry: HashMap<Symbol, Rc<Closure>>,
    pub(crate) ticks: i64,
    pub(crate) thunks_allocated: u64,
    steps: u64,
    depth: usize,
    pub(crate) output: Box<dyn Write>,
}

impl Default for Interpreter {
    fn default() -> Self {
        Interpreter::new()
    }
}

impl Interpreter {
    /// Default configuration, prelude loaded.
    pub fn new() -> Self {
        Interpreter::with_config(Config::default())
    }

    pub fn with_config(config: Config) -> Self {
        let mut interp = Interpreter::bare(config);
        interp
            .eval_str(PRELUDE)
            .unwrap_or_else(|e| panic!("embedded prelude failed to load: {e}"));
        interp.reset_counters();
        interp
    }

    /// Builtins only, no prelude.
    pub fn bare(config: Config) -> Self {
        let mut functions = HashMap::new();
        for builtin in builtins::BUILTINS {
            functions.insert(Symbol::new(builtin.name), Value::Builtin(builtin));
        }
        Interpreter {
            config,
            globals: HashMap::new(),
            functions,
            lazy_registry: HashMap::new(),
            ticks: 0,
            thunks_allocated: 0,
            steps: 0,
            depth: 0,
            output: Box::new(std::io::stdout()),
        }
    }

    /// Evaluates a prelude from `path` in place of the embedded one.
    pub fn with_prelude_file(config: Config, path: &Path) -> std::io::Result<Result<Self>> {
        let text = std::fs::read_to_string(path)?;
        let mut interp = Interpreter::bare(config);
        Ok(interp.eval_str(&text).map(|_| {
            interp.reset_counters();
            interp
        }))
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    /// Redirects the output of `print`.
    pub fn set_output(&mut self, output: Box<dyn Write>) {
        self.output = output;
    }

    /// Current value of the effect counter advanced by `tick!`.
    pub fn ticks(&self) -> i64 {
        self.ticks
    }

    /// Number of thunks created since the last reset.
    pub fn thunks_allocated(&self) -> u64 {
        self.thunks_allocated
    }

    pub fn reset_counters(&mut self) {
        self.ticks = 0;
        self.thunks_allocated = 0;
    }

    /// Reads and evaluates every form in `text` as a top-level form and
    /// returns the value of the last one (`NIL` when there are none).
    pub fn eval_str(&mut self, text: &str) -> Result<Value> {
        let mut last = Value::Nil;
        for form in read_str(text)? {
            last = self.eval_toplevel(&form)?;
        }
        Ok(last)
    }

    /// Evaluates `form` in the global environment with a fresh step budget.
    pub fn eval_toplevel(&mut self, form: &Form) -> Result<Value> {
        self.steps = 0;
        self.depth = 0;
        self.eval(form, &Env::global())
    }

    fn step(&mut self) -> Result<()> {
        self.steps += 1;
        match self.config.step_limit {
            Some(limit) if self.steps > limit => Err(Error::StepLimitExceeded { limit, position: None }),
            _ => Ok(()),
        }
    }

    pub fn eval(&mut self, form: &Form, env: &Env) -> Result<Value> {
        self.step().map_err(|e| e.located(form.position))?;
        match &form.datum {
            Datum::Nil => Ok(Value::Nil),
            Datum::T => Ok(Value::T),
            Datum::Integer(n) => Ok(Value::Integer(*n)),
            Datum::Str(s) => Ok(Value::Str(s.clone())),
            Datum::Keyword(k) => Ok(Value::Keyword(k.clone())),
            Datum::Symbol(name) => self.variable(name, env).map_err(|e| e.located(form.position)),
            Datum::List(items) => {
                if self.depth >= self.config.recursion_limit {
                    return Err(Error::eval(
                        EvalErrorKind::RecursionLimit,
                        format!("evaluation nested deeper than {} levels", self.config.recursion_limit),
                    )
                    .located(form.position));
                }
                self.depth += 1;
                let result = stacker::maybe_grow(64 * 1024, 4 * 1024 * 1024, || self.eval_list(items, env));
                self.depth -= 1;
                result.map_err(|e| e.located(form.position))
            }
        }
    }

    /// Reads a variable; lazy slots force their contents.
    fn variable(&mut self, name: &Symbol, env: &Env) -> Result<Value> {
        match env.lookup(name) {
            Some(binding) => match binding.kind {
                SlotKind::Plain => Ok(binding.value),
                SlotKind::Lazy => self.force(binding.value),
            },
            None => self
                .globals
                .get(name)
                .cloned()
                .ok_or_else(|| Error::eval(EvalErrorKind::UnboundSymbol, format!("variable {name} is unbound"))),
        }
    }

    /// The global function named `name`.
    pub fn function_value(&self, name: &Symbol) -> Result<Value> {
        self.functions
            .get(name)
            .cloned()
            .ok_or_else(|| Error::eval(EvalErrorKind::UnboundSymbol, format!("function {name} is undefined")))
    }

    pub fn global(&self, name: &str) -> Option<Value> {
        self.globals.get(&Symbol::new(name)).cloned()
    }

    pub(crate) fn eval_body(&mut self, body: &[Form], env: &Env) -> Result<Value> {
        let mut last = Value::Nil;
        for form in body {
            last = self.eval(form, env)?;
        }
        Ok(last)
    }

    fn eval_args(&mut self, forms: &[Form], env: &Env) -> Result<Vec<Value>> {
        forms.iter().map(|f| self.eval(f, env)).collect()
    }

    fn eval_list(&mut self, items: &[Form], env: &Env) -> Result<Value> {
        let head = &items[0];
        let args = &items[1..];
        if let Some(name) = head.as_symbol() {
            return match name.name() {
                "QUOTE" => match args {
                    [datum] => Ok(datum.to_value()),
                    _ => Err(malformed("quote takes exactly one form")),
                },
                "IF" => self.eval_if(args, env),
                "PROGN" => self.eval_body(args, env),
                "LET" => self.eval_let(args, env),
                "LAMBDA" => {
                    let closure = self.lambda_from_parts(args, env, Mode::Strict)?;
                    Ok(Value::Closure(Rc::new(closure)))
                }
                "FUNCTION" => self.eval_function(args, env),
                "DEFUN" => self.eval_defun(args, env),
                "DEFPARAMETER" => self.eval_defparameter(args, env),
                "ECASE" => self.eval_ecase(args, env),
                "LOOP" => self.eval_loop(args),
                "DEFLAZY" => self.eval_deflazy(args, env),
                "LAZY-CALL" => match args {
                    [op, rest @ ..] => self.lazy_call(op, rest, env),
                    [] => Err(malformed("lazy-call needs an operator")),
                },
                "LAZY" => match args {
                    [expr] => self.lazify(expr, env),
                    _ => Err(malformed("lazy takes exactly one form")),
                },
                "DELAY" => match args {
                    [expr] => Ok(self.delay(expr.clone(), env.clone())),
                    _ => Err(malformed("delay takes exactly one form")),
                },
                _ => {
                    let function = self.function_value(name).map_err(|e| e.located(head.position))?;
                    let values = self.eval_args(args, env)?;
                    self.apply_strict(&function, values)
                }
            };
        }
        if head.is_call_to("LAMBDA") {
            let closure = Value::Closure(Rc::new(self.make_lambda(head, env, Mode::Strict)?));
            let values = self.eval_args(args, env)?;
            return self.apply_strict(&closure, values);
        }
        Err(Error::eval(
            EvalErrorKind::NotAFunction,
            format!("{} cannot be called", head.to_value()),
        )
        .located(head.position))
    }

    /// Builds a closure from a `(lambda PARAMS BODY...)` form.
    pub(crate) fn make_lambda(&mut self, form: &Form, env: &Env, mode: Mode) -> Result<Closure> {
        match form.as_list() {
            Some([_, parts @ ..]) => self.lambda_from_parts(parts, env, mode),
            _ => Err(malformed("lambda needs a parameter list").located(form.position)),
        }
    }

    fn lambda_from_parts(&mut self, parts: &[Form], env: &Env, mode: Mode) -> Result<Closure> {
        match parts {
            [params, body @ ..] => Ok(Closure {
                name: None,
                params: Rc::new(LambdaList::parse(params)?),
                body: Rc::from(body),
                env: env.clone(),
                mode,
            }),
            [] => Err(malformed("lambda needs a parameter list")),
        }
    }

    /// Applies a function through the ordinary (strict) calling convention.
    /// A symbol designates the global function of that name.
    pub fn apply_strict(&mut self, function: &Value, args: Vec<Value>) -> Result<Value> {
        match function {
            Value::Closure(c) => match c.mode {
                Mode::Strict => {
                    let frame = self.bind_lambda_list(&c.params, args, Mode::Strict, &c.env, c.name.as_ref())?;
                    self.eval_body(&c.body, &frame)
                }
                Mode::Lazy => Err(Error::eval(
                    EvalErrorKind::LazyThroughStrict,
                    format!("{function} is a lazy function; call it with lazy-call"),
                )),
            },
            Value::Builtin(b) => b.call(self, args),
            Value::Symbol(name) => {
                let resolved = self.function_value(name)?;
                self.apply_strict(&resolved, args)
            }
            other => Err(Error::eval(
                EvalErrorKind::NotAFunction,
                format!("{other} is not a function"),
            )),
        }
    }

    fn eval_if(&mut self, args: &[Form], env: &Env) -> Result<Value> {
        let (test, then, otherwise) = match args {
            [test, then] => (test, then, None),
            [test, then, otherwise] => (test, then, Some(otherwise)),
            _ => return Err(malformed("if takes a test, a then form and an optional else form")),
        };
        if self.eval(test, env)?.is_truthy() {
            self.eval(then, env)
        } else {
            match otherwise {
                Some(form) => self.eval(form, env),
                None => Ok(Value::Nil),
            }
        }
    }

    fn eval_let(&mut self, args: &[Form], env: &Env) -> Result<Value> {
        let Some((bindings, body)) = args.split_first() else {
            return Err(malformed("let needs a binding list"));
        };
        let specs: &[Form] = match &bindings.datum {
            Datum::Nil => &[],
            Datum::List(items) => items,
            _ => return Err(malformed("let bindings must be a list").located(bindings.position)),
        };
        let mut values = Vec::with_capacity(specs.len());
        for spec in specs {
            let (name, init) = match (&spec.datum, spec.as_list()) {
                (Datum::Symbol(name), _) => (name.clone(), None),
                (_, Some([name])) => (let_name(name)?, None),
                (_, Some([name, init])) => (let_name(name)?, Some(init)),
                _ => return Err(malformed("malformed let binding").located(spec.position)),
            };
            let value = match init {
                Some(form) => self.eval(form, env)?,
                None => Value::Nil,
            };
            values.push((name, value));
        }
        let frame = env.extend();
        for (name, value) in values {
            frame.define(name, SlotKind::Plain, value);
        }
        self.eval_body(body, &frame)
    }

    fn eval_function(&mut self, args: &[Form], env: &Env) -> Result<Value> {
        match args {
            [target] if target.is_call_to("LAMBDA") => {
                Ok(Value::Closure(Rc::new(self.make_lambda(target, env, Mode::Strict)?)))
            }
            [target] => match target.as_symbol() {
                Some(name) => self.function_value(name),
                None => Err(malformed("function takes a symbol or a lambda form")),
            },
            _ => Err(malformed("function takes exactly one form")),
        }
    }

    fn definition<'f>(&self, what: &str, args: &'f [Form]) -> Result<(Symbol, LambdaList, &'f [Form])> {
        match args {
            [name, params, body @ ..] => {
                let name = name
                    .as_symbol()
                    .cloned()
                    .ok_or_else(|| malformed(format!("{what} needs a symbol name")).located(name.position))?;
                Ok((name, LambdaList::parse(params)?, body))
            }
            _ => Err(malformed(format!("{what} needs a name and a parameter list"))),
        }
    }

    fn eval_defun(&mut self, args: &[Form], env: &Env) -> Result<Value> {
        let (name, params, body) = self.definition("defun", args)?;
        let closure = Closure {
            name: Some(name.clone()),
            params: Rc::new(params),
            body: Rc::from(body),
            env: env.clone(),
            mode: Mode::Strict,
        };
        self.functions.insert(name.clone(), Value::Closure(Rc::new(closure)));
        // A plain redefinition leaves no stale lazy twin behind.
        self.lazy_registry.remove(&name);
        Ok(Value::Symbol(name))
    }

    fn eval_deflazy(&mut self, args: &[Form], env: &Env) -> Result<Value> {
        let (name, params, body) = self.definition("deflazy", args)?;
        let name = self.define_lazy(name, params, Rc::from(body), env);
        Ok(Value::Symbol(name))
    }

    fn eval_defparameter(&mut self, args: &[Form], env: &Env) -> Result<Value> {
        match args {
            [name, init] => {
                let name = name
                    .as_symbol()
                    .cloned()
                    .ok_or_else(|| malformed("defparameter needs a symbol name").located(name.position))?;
                let value = self.eval(init, env)?;
                self.globals.insert(name.clone(), value);
                Ok(Value::Symbol(name))
            }
            _ => Err(malformed("defparameter takes a name and an initial value")),
        }
    }

    fn eval_ecase(&mut self, args: &[Form], env: &Env) -> Result<Value> {
        let Some((keyform, clauses)) = args.split_first() else {
            return Err(malformed("ecase needs a key form"));
        };
        let key = self.eval(keyform, env)?;
        for clause in clauses {
            let Some((keys, body)) = clause.as_list().and_then(|c| c.split_first()) else {
                return Err(malformed("ecase clause must be a list").located(clause.position));
            };
            let matches = match keys.as_list() {
                Some(alternatives) => alternatives.iter().any(|k| k.to_value().eql(&key)),
                None => keys.to_value().eql(&key),
            };
            if matches {
                return self.eval_body(body, env);
            }
        }
        Err(Error::eval(
            EvalErrorKind::EcaseNoMatch,
            format!("{key} matches no ecase clause"),
        ))
    }

    fn eval_loop(&mut self, args: &[Form]) -> Result<Value> {
        if !args.is_empty() {
            return Err(malformed("only the empty (loop) form is supported"));
        }
        loop {
            self.step()?;
        }
    }
}

fn let_name(form: &Form) -> Result<Symbol> {
    form.as_symbol()
        .cloned()
        .ok_or_else(|| malformed("let binds symbols only").located(form.position))
}

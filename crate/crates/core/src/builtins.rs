//! Primitive functions.

use std::fmt;
use std::io::Write as _;

use crate::error::{Error, EvalErrorKind, Result};
use crate::interp::Interpreter;
use crate::print::print_value;
use crate::value::Value;

pub type BuiltinFn = fn(&mut Interpreter, Vec<Value>) -> Result<Value>;

/// A primitive implemented in Rust. Always strict.
pub struct Builtin {
    pub name: &'static str,
    pub min_args: usize,
    pub max_args: Option<usize>,
    func: BuiltinFn,
}

impl fmt::Debug for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Builtin({})", self.name)
    }
}

impl Builtin {
    const fn new(name: &'static str, min_args: usize, max_args: Option<usize>, func: BuiltinFn) -> Self {
        Builtin {
            name,
            min_args,
            max_args,
            func,
        }
    }

    pub fn call(&self, interp: &mut Interpreter, args: Vec<Value>) -> Result<Value> {
        let n = args.len();
        if n < self.min_args || self.max_args.is_some_and(|max| n > max) {
            let expected = match self.max_args {
                Some(max) if max == self.min_args => format!("{max}"),
                Some(max) => format!("{} to {max}", self.min_args),
                None => format!("at least {}", self.min_args),
            };
            return Err(Error::eval(
                EvalErrorKind::ArityMismatch,
                format!("{} expects {expected} argument(s), got {n}", self.name),
            ));
        }
        (self.func)(interp, args)
    }
}

pub static BUILTINS: &[Builtin] = &[
    Builtin::new("+", 0, None, add),
    Builtin::new("-", 1, None, sub),
    Builtin::new("*", 0, None, mul),
    Builtin::new("1+", 1, Some(1), inc),
    Builtin::new("1-", 1, Some(1), dec),
    Builtin::new("=", 1, None, num_eq),
    Builtin::new("<", 1, None, num_lt),
    Builtin::new(">", 1, None, num_gt),
    Builtin::new("cons", 2, Some(2), cons),
    Builtin::new("car", 1, Some(1), car),
    Builtin::new("cdr", 1, Some(1), cdr),
    Builtin::new("list", 0, None, list),
    Builtin::new("funcall", 1, None, funcall),
    Builtin::new("not", 1, Some(1), not),
    Builtin::new("null", 1, Some(1), not),
    Builtin::new("eq", 2, Some(2), eq),
    Builtin::new("force", 1, Some(1), force),
    Builtin::new("thunkp", 1, Some(1), thunkp),
    Builtin::new("diverge", 0, Some(0), diverge),
    Builtin::new("tick!", 0, Some(0), tick),
    Builtin::new("ticks", 0, Some(0), ticks),
    Builtin::new("thunk-allocations", 0, Some(0), thunk_allocations),
    Builtin::new("print", 1, Some(1), print),
];

fn integer(name: &str, v: &Value) -> Result<i64> {
    v.as_integer().ok_or_else(|| {
        Error::eval(
            EvalErrorKind::TypeError,
            format!("{name}: {v} is a {}, not an integer", v.type_name()),
        )
    })
}

fn integers(name: &str, args: &[Value]) -> Result<Vec<i64>> {
    args.iter().map(|v| integer(name, v)).collect()
}

fn overflow(name: &str) -> Error {
    Error::eval(EvalErrorKind::Overflow, format!("{name}: integer overflow"))
}

fn add(_: &mut Interpreter, args: Vec<Value>) -> Result<Value> {
    integers("+", &args)?
        .into_iter()
        .try_fold(0i64, |acc, n| acc.checked_add(n))
        .map(Value::Integer)
        .ok_or_else(|| overflow("+"))
}

fn mul(_: &mut Interpreter, args: Vec<Value>) -> Result<Value> {
    integers("*", &args)?
        .into_iter()
        .try_fold(1i64, |acc, n| acc.checked_mul(n))
        .map(Value::Integer)
        .ok_or_else(|| overflow("*"))
}

fn sub(_: &mut Interpreter, args: Vec<Value>) -> Result<Value> {
    let nums = integers("-", &args)?;
    let result = match nums.split_first() {
        Some((first, [])) => first.checked_neg(),
        Some((first, rest)) => rest.iter().try_fold(*first, |acc, n| acc.checked_sub(*n)),
        None => unreachable!("arity checked"),
    };
    result.map(Value::Integer).ok_or_else(|| overflow("-"))
}

fn inc(_: &mut Interpreter, args: Vec<Value>) -> Result<Value> {
    let n = integer("1+", &args[0])?;
    n.checked_add(1).map(Value::Integer).ok_or_else(|| overflow("1+"))
}

fn dec(_: &mut Interpreter, args: Vec<Value>) -> Result<Value> {
    let n = integer("1-", &args[0])?;
    n.checked_sub(1).map(Value::Integer).ok_or_else(|| overflow("1-"))
}

fn compare(name: &str, args: &[Value], holds: fn(i64, i64) -> bool) -> Result<Value> {
    let nums = integers(name, args)?;
    Ok(Value::bool(nums.windows(2).all(|w| holds(w[0], w[1]))))
}

fn num_eq(_: &mut Interpreter, args: Vec<Value>) -> Result<Value> {
    compare("=", &args, |a, b| a == b)
}

fn num_lt(_: &mut Interpreter, args: Vec<Value>) -> Result<Value> {
    compare("<", &args, |a, b| a < b)
}

fn num_gt(_: &mut Interpreter, args: Vec<Value>) -> Result<Value> {
    compare(">", &args, |a, b| a > b)
}

fn cons(_: &mut Interpreter, mut args: Vec<Value>) -> Result<Value> {
    let cdr = args.pop().expect("arity checked");
    let car = args.pop().expect("arity checked");
    Ok(Value::cons(car, cdr))
}

fn car(_: &mut Interpreter, args: Vec<Value>) -> Result<Value> {
    match &args[0] {
        Value::Nil => Ok(Value::Nil),
        Value::Cons(pair) => Ok(pair.0.clone()),
        other => Err(Error::eval(
            EvalErrorKind::TypeError,
            format!("car: {other} is not a list"),
        )),
    }
}

fn cdr(_: &mut Interpreter, args: Vec<Value>) -> Result<Value> {
    match &args[0] {
        Value::Nil => Ok(Value::Nil),
        Value::Cons(pair) => Ok(pair.1.clone()),
        other => Err(Error::eval(
            EvalErrorKind::TypeError,
            format!("cdr: {other} is not a list"),
        )),
    }
}

fn list(_: &mut Interpreter, args: Vec<Value>) -> Result<Value> {
    Ok(Value::list(args))
}

fn funcall(interp: &mut Interpreter, mut args: Vec<Value>) -> Result<Value> {
    let function = args.remove(0);
    interp.apply_strict(&function, args)
}

fn not(_: &mut Interpreter, args: Vec<Value>) -> Result<Value> {
    Ok(Value::bool(args[0].is_nil()))
}

fn eq(_: &mut Interpreter, args: Vec<Value>) -> Result<Value> {
    Ok(Value::bool(args[0].eql(&args[1])))
}

fn force(interp: &mut Interpreter, mut args: Vec<Value>) -> Result<Value> {
    interp.force(args.pop().expect("arity checked"))
}

fn thunkp(_: &mut Interpreter, args: Vec<Value>) -> Result<Value> {
    Ok(Value::bool(args[0].is_thunk()))
}

fn diverge(_: &mut Interpreter, _: Vec<Value>) -> Result<Value> {
    Err(Error::Divergence { position: None })
}

fn tick(interp: &mut Interpreter, _: Vec<Value>) -> Result<Value> {
    interp.ticks += 1;
    Ok(Value::Integer(interp.ticks))
}

fn ticks(interp: &mut Interpreter, _: Vec<Value>) -> Result<Value> {
    Ok(Value::Integer(interp.ticks))
}

fn thunk_allocations(interp: &mut Interpreter, _: Vec<Value>) -> Result<Value> {
    i64::try_from(interp.thunks_allocated)
        .map(Value::Integer)
        .map_err(|_| overflow("thunk-allocations"))
}

fn print(interp: &mut Interpreter, mut args: Vec<Value>) -> Result<Value> {
    let value = args.pop().expect("arity checked");
    // A closed sink cannot be reported through the evaluator's error kinds.
    let _ = writeln!(interp.output, "{}", print_value(&value));
    Ok(value)
}

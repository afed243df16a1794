//! Rendering values as text. Printing never forces a thunk.

use std::fmt::Write;

use crate::value::Value;

pub fn print_value(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value);
    out
}

fn write_value(out: &mut String, value: &Value) {
    match value {
        Value::Nil => out.push_str("NIL"),
        Value::T => out.push('T'),
        Value::Integer(n) => {
            let _ = write!(out, "{n}");
        }
        Value::Symbol(s) => out.push_str(s.name()),
        Value::Keyword(k) => {
            out.push(':');
            out.push_str(k.name());
        }
        Value::Str(s) => {
            out.push('"');
            for c in s.chars() {
                if matches!(c, '"' | '\\') {
                    out.push('\\');
                }
                out.push(c);
            }
            out.push('"');
        }
        Value::Cons(_) => write_list(out, value),
        Value::Closure(c) => match &c.name {
            Some(name) => {
                let _ = write!(out, "#<function {name}>");
            }
            None => out.push_str("#<lambda>"),
        },
        Value::Builtin(b) => {
            let _ = write!(out, "#<function {}>", b.name);
        }
        Value::Thunk(_) => out.push_str("#<thunk>"),
    }
}

fn write_list(out: &mut String, mut value: &Value) {
    out.push('(');
    let mut first = true;
    loop {
        match value {
            Value::Cons(pair) => {
                if !first {
                    out.push(' ');
                }
                first = false;
                write_value(out, &pair.0);
                value = &pair.1;
            }
            Value::Nil => break,
            tail => {
                out.push_str(" . ");
                write_value(out, tail);
                break;
            }
        }
    }
    out.push(')');
}

//! Parameter lists with `&optional`, `&rest` and `&key` sections, and the
//! binding of argument lists against them in strict or lazy mode.

use std::collections::HashSet;

use crate::env::{Env, SlotKind};
use crate::error::{Error, EvalErrorKind, Result};
use crate::interp::Interpreter;
use crate::reader::{Datum, Form};
use crate::value::{Mode, Symbol, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptionalParam {
    pub name: Symbol,
    pub default: Option<Form>,
    pub supplied_p: Option<Symbol>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyParam {
    /// Name of the keyword as written at call sites, without the colon.
    pub keyword: Symbol,
    pub name: Symbol,
    pub default: Option<Form>,
    pub supplied_p: Option<Symbol>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LambdaList {
    pub required: Vec<Symbol>,
    pub optional: Vec<OptionalParam>,
    pub rest: Option<Symbol>,
    /// `None` when there is no `&key` marker at all.
    pub keys: Option<Vec<KeyParam>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Required,
    Optional,
    Rest,
    Key,
}

fn bad(message: impl Into<String>) -> Error {
    Error::eval(EvalErrorKind::BadLambdaList, message)
}

fn variable_name(form: &Form) -> Result<Symbol> {
    match &form.datum {
        Datum::Symbol(s) if !s.name().starts_with('&') => Ok(s.clone()),
        _ => Err(bad(format!("`{}` cannot name a parameter", form.to_value())).located(form.position)),
    }
}

/// `name`, `(name)`, `(name default)` or `(name default supplied-p)`; the
/// `name` slot is handed to `head` so `&key` can accept `(:kw name)` there.
fn parameter_spec<T>(form: &Form, head: impl Fn(&Form) -> Result<T>) -> Result<(T, Option<Form>, Option<Symbol>)> {
    match form.as_list() {
        None => Ok((head(form)?, None, None)),
        Some(items) if items.len() <= 3 => {
            let name = head(&items[0])?;
            let default = items.get(1).cloned();
            let supplied_p = items.get(2).map(variable_name).transpose()?;
            Ok((name, default, supplied_p))
        }
        Some(_) => Err(bad("parameter specifier has too many elements").located(form.position)),
    }
}

fn key_name(form: &Form) -> Result<(Symbol, Symbol)> {
    match form.as_list() {
        None => {
            let name = variable_name(form)?;
            Ok((name.clone(), name))
        }
        Some([kw, name]) => match &kw.datum {
            Datum::Keyword(k) => Ok((k.clone(), variable_name(name)?)),
            _ => Err(bad("keyword alias must be written `(:keyword name)`").located(kw.position)),
        },
        Some(_) => Err(bad("keyword alias must be written `(:keyword name)`").located(form.position)),
    }
}

impl LambdaList {
    /// Parses the parameter list of a `lambda`, `defun` or `deflazy`.
    pub fn parse(form: &Form) -> Result<LambdaList> {
        let items: &[Form] = match &form.datum {
            Datum::Nil => &[],
            Datum::List(items) => items,
            _ => return Err(bad("parameter list must be a list").located(form.position)),
        };
        let mut ll = LambdaList::default();
        let mut section = Section::Required;
        let mut rest_seen = false;
        for item in items {
            if let Some(marker) = item.as_symbol().filter(|s| s.name().starts_with('&')) {
                let next = match marker.name() {
                    "&OPTIONAL" => Section::Optional,
                    "&REST" => Section::Rest,
                    "&KEY" => Section::Key,
                    other => return Err(bad(format!("unsupported lambda-list marker {other}")).located(item.position)),
                };
                if next <= section {
                    return Err(bad(format!("{marker} is out of order")).located(item.position));
                }
                if section == Section::Rest && !rest_seen {
                    return Err(bad("&REST must be followed by a name").located(item.position));
                }
                if next == Section::Key {
                    ll.keys = Some(Vec::new());
                }
                section = next;
                continue;
            }
            match section {
                Section::Required => ll.required.push(variable_name(item)?),
                Section::Optional => {
                    let (name, default, supplied_p) = parameter_spec(item, variable_name)?;
                    ll.optional.push(OptionalParam {
                        name,
                        default,
                        supplied_p,
                    });
                }
                Section::Rest => {
                    if rest_seen {
                        return Err(bad("&REST takes exactly one name").located(item.position));
                    }
                    ll.rest = Some(variable_name(item)?);
                    rest_seen = true;
                }
                Section::Key => {
                    let ((keyword, name), default, supplied_p) = parameter_spec(item, key_name)?;
                    ll.keys.get_or_insert_with(Vec::new).push(KeyParam {
                        keyword,
                        name,
                        default,
                        supplied_p,
                    });
                }
            }
        }
        if section == Section::Rest && !rest_seen {
            return Err(bad("&REST must be followed by a name").located(form.position));
        }
        ll.check_duplicates().map_err(|e| e.located(form.position))?;
        Ok(ll)
    }

    /// Every variable the list binds, in binding order.
    pub fn variables(&self) -> Vec<&Symbol> {
        let mut names: Vec<&Symbol> = self.required.iter().collect();
        for opt in &self.optional {
            names.push(&opt.name);
            names.extend(opt.supplied_p.as_ref());
        }
        names.extend(self.rest.as_ref());
        for key in self.keys.iter().flatten() {
            names.push(&key.name);
            names.extend(key.supplied_p.as_ref());
        }
        names
    }

    fn check_duplicates(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for name in self.variables() {
            if !seen.insert(name) {
                return Err(bad(format!("parameter {name} appears more than once")));
            }
        }
        Ok(())
    }

    pub fn positional_count(&self) -> usize {
        self.required.len() + self.optional.len()
    }
}

fn describe(name: Option<&Symbol>) -> String {
    match name {
        Some(name) => format!("function {name}"),
        None => "anonymous function".to_string(),
    }
}

impl Interpreter {
    /// Binds `args` against `ll` in a fresh frame under `closure_env`.
    ///
    /// In strict mode every slot is plain and defaults are evaluated on the
    /// spot. In lazy mode parameter slots force on read, missing defaults
    /// become thunks, supplied-p flags stay plain booleans and the `&rest`
    /// list holds the raw argument values (thunks included) unforced.
    pub fn bind_lambda_list(
        &mut self,
        ll: &LambdaList,
        args: Vec<Value>,
        mode: Mode,
        closure_env: &Env,
        name: Option<&Symbol>,
    ) -> Result<Env> {
        let frame = closure_env.extend();
        let slot = match mode {
            Mode::Strict => SlotKind::Plain,
            Mode::Lazy => SlotKind::Lazy,
        };
        if args.len() < ll.required.len() {
            return Err(Error::eval(
                EvalErrorKind::ArityMismatch,
                format!(
                    "{} expects at least {} argument(s), got {}",
                    describe(name),
                    ll.required.len(),
                    args.len()
                ),
            ));
        }
        let mut args = args.into_iter();
        for param in &ll.required {
            frame.define(param.clone(), slot, args.next().expect("counted above"));
        }
        for opt in &ll.optional {
            let supplied = match args.next() {
                Some(arg) => {
                    frame.define(opt.name.clone(), slot, arg);
                    true
                }
                None => {
                    let value = self.default_value(opt.default.as_ref(), &frame, mode)?;
                    frame.define(opt.name.clone(), slot, value);
                    false
                }
            };
            if let Some(flag) = &opt.supplied_p {
                frame.define(flag.clone(), SlotKind::Plain, Value::bool(supplied));
            }
        }
        let remaining: Vec<Value> = args.collect();
        if ll.rest.is_none() && ll.keys.is_none() && !remaining.is_empty() {
            return Err(Error::eval(
                EvalErrorKind::ArityMismatch,
                format!(
                    "{} expects at most {} argument(s), got {}",
                    describe(name),
                    ll.positional_count(),
                    ll.positional_count() + remaining.len()
                ),
            ));
        }
        if let Some(rest) = &ll.rest {
            frame.define(rest.clone(), SlotKind::Plain, Value::list(remaining.iter().cloned()));
        }
        if let Some(keys) = &ll.keys {
            let pairs = self.keyword_pairs(keys, &remaining, mode, name)?;
            for key in keys {
                let found = pairs.iter().find(|(k, _)| *k == key.keyword);
                let supplied = match found {
                    Some((_, value)) => {
                        frame.define(key.name.clone(), slot, value.clone());
                        true
                    }
                    None => {
                        let value = self.default_value(key.default.as_ref(), &frame, mode)?;
                        frame.define(key.name.clone(), slot, value);
                        false
                    }
                };
                if let Some(flag) = &key.supplied_p {
                    frame.define(flag.clone(), SlotKind::Plain, Value::bool(supplied));
                }
            }
        }
        Ok(frame)
    }

    fn default_value(&mut self, default: Option<&Form>, frame: &Env, mode: Mode) -> Result<Value> {
        match (default, mode) {
            (None, _) => Ok(Value::Nil),
            (Some(form), Mode::Strict) => self.eval(form, frame),
            (Some(form), Mode::Lazy) => Ok(self.delay(form.clone(), frame.snapshot())),
        }
    }

    /// Splits the keyword tail into (keyword, value) pairs. In lazy mode a
    /// keyword position that arrived as a thunk is forced to learn the key.
    fn keyword_pairs(
        &mut self,
        keys: &[KeyParam],
        tail: &[Value],
        mode: Mode,
        name: Option<&Symbol>,
    ) -> Result<Vec<(Symbol, Value)>> {
        if !tail.len().is_multiple_of(2) {
            return Err(Error::eval(
                EvalErrorKind::OddKeywordArguments,
                format!("odd number of keyword arguments to {}", describe(name)),
            ));
        }
        let mut pairs = Vec::with_capacity(tail.len() / 2);
        for chunk in tail.chunks(2) {
            let key = match mode {
                Mode::Strict => chunk[0].clone(),
                Mode::Lazy => self.force(chunk[0].clone())?,
            };
            let Value::Keyword(key) = key else {
                return Err(Error::eval(
                    EvalErrorKind::UnknownKeywordArgument,
                    format!("{key} is not a keyword (in call to {})", describe(name)),
                ));
            };
            if !keys.iter().any(|k| k.keyword == key) {
                return Err(Error::eval(
                    EvalErrorKind::UnknownKeywordArgument,
                    format!("unknown keyword :{key} for {}", describe(name)),
                ));
            }
            pairs.push((key, chunk[1].clone()));
        }
        Ok(pairs)
    }
}

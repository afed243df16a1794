//! Script runner and REPL.

use std::io::{self, BufRead, Write};
use std::path::PathBuf;

use crate::error::Error;
use crate::interp::{Config, Interpreter};
use crate::print::print_value;
use crate::reader::read_str;

pub const PROMPT: &str = "clz> ";

/// What a process invocation does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mode {
    Repl,
    RunFile(PathBuf),
    /// Evaluate the forms in the string and print the last value.
    Eval(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub config: Config,
    pub mode: Mode,
    /// Replaces the embedded prelude.
    pub prelude: Option<PathBuf>,
}

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Failure = 1,
    Io = 2,
    StepLimit = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn for_error(error: &Error) -> ExitStatus {
        if error.is_step_limit() {
            ExitStatus::StepLimit
        } else {
            ExitStatus::Failure
        }
    }
}

/// `ORIGIN:LINE:COLUMN: KIND: message`, or `ORIGIN: ...` when the error
/// carries no position.
pub fn diagnostic(origin: &str, error: &Error) -> String {
    match error.position() {
        Some(pos) => format!("{origin}:{pos}: {error}"),
        None => format!("{origin}: {error}"),
    }
}

fn make_interpreter(options: &Options, err: &mut dyn Write) -> Result<Interpreter, ExitStatus> {
    let Some(path) = &options.prelude else {
        return Ok(Interpreter::with_config(options.config));
    };
    match Interpreter::with_prelude_file(options.config, path) {
        Ok(Ok(interp)) => Ok(interp),
        Ok(Err(e)) => {
            let _ = writeln!(err, "{}", diagnostic(&path.display().to_string(), &e));
            Err(ExitStatus::for_error(&e))
        }
        Err(e) => {
            let _ = writeln!(err, "{}: {e}", path.display());
            Err(ExitStatus::Io)
        }
    }
}

/// Runs one invocation against the process's standard streams.
pub fn run(options: &Options) -> ExitStatus {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut err = stderr.lock();
    let mut interp = match make_interpreter(options, &mut err) {
        Ok(interp) => interp,
        Err(status) => return status,
    };
    match &options.mode {
        Mode::Repl => {
            let stdin = io::stdin();
            repl(&mut interp, stdin.lock(), &mut stdout.lock(), &mut err)
        }
        Mode::RunFile(path) => run_file(&mut interp, path, &mut err),
        Mode::Eval(text) => eval_string(&mut interp, text, &mut stdout.lock(), &mut err),
    }
}

/// Prompt, read a line, evaluate each form on it and print its value.
/// Errors are reported and the session continues; end of input exits.
pub fn repl(interp: &mut Interpreter, input: impl BufRead, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus {
    let mut lines = input.lines();
    let mut line_no = 0u32;
    loop {
        if write!(out, "{PROMPT}").and_then(|_| out.flush()).is_err() {
            return ExitStatus::Io;
        }
        let line = match lines.next() {
            None => {
                let _ = writeln!(out);
                return ExitStatus::Success;
            }
            Some(Err(_)) => return ExitStatus::Io,
            Some(Ok(line)) => line,
        };
        line_no += 1;
        let origin = format!("<repl {line_no}>");
        let forms = match read_str(&line) {
            Ok(forms) => forms,
            Err(e) => {
                let _ = writeln!(err, "{}", diagnostic(&origin, &e));
                continue;
            }
        };
        for form in forms {
            match interp.eval_toplevel(&form) {
                Ok(value) => {
                    if writeln!(out, "{}", print_value(&value)).is_err() {
                        return ExitStatus::Io;
                    }
                }
                Err(e) => {
                    let _ = writeln!(err, "{}", diagnostic(&origin, &e));
                    break;
                }
            }
        }
    }
}

/// Evaluates every top-level form of a source file, stopping at the first
/// error. Only explicit `print` calls produce output.
pub fn run_file(interp: &mut Interpreter, path: &std::path::Path, err: &mut dyn Write) -> ExitStatus {
    let text = match std::fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) => {
            let _ = writeln!(err, "{}: {e}", path.display());
            return ExitStatus::Io;
        }
    };
    run_source(interp, &path.display().to_string(), &text, err).map_or_else(|s| s, |_| ExitStatus::Success)
}

/// Evaluates the forms in `text` and prints the last value.
pub fn eval_string(interp: &mut Interpreter, text: &str, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus {
    match run_source(interp, "<eval>", text, err) {
        Ok(value) => match writeln!(out, "{}", print_value(&value)) {
            Ok(()) => ExitStatus::Success,
            Err(_) => ExitStatus::Io,
        },
        Err(status) => status,
    }
}

fn run_source(
    interp: &mut Interpreter,
    origin: &str,
    text: &str,
    err: &mut dyn Write,
) -> Result<crate::Value, ExitStatus> {
    let report = |err: &mut dyn Write, e: &Error| {
        let _ = writeln!(err, "{}", diagnostic(origin, e));
        ExitStatus::for_error(e)
    };
    let forms = read_str(text).map_err(|e| report(err, &e))?;
    let mut last = crate::Value::Nil;
    for form in &forms {
        last = interp.eval_toplevel(form).map_err(|e| report(err, &e))?;
    }
    Ok(last)
}

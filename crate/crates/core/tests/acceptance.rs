//! End-to-end acceptance checks. Runs as a plain binary under `cargo test`
//! and prints one PASS/FAIL line per criterion.

use std::cell::Cell;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use lazycall::{Config, Interpreter, Value};
use proptest::prelude::*;
use proptest::test_runner::{Config as RunnerConfig, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lazycall"))
}

fn eval(interp: &mut Interpreter, src: &str) -> Result<Value, String> {
    interp.eval_str(src).map_err(|e| format!("{src}: {e}"))
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn within(limit: Duration, start: Instant) -> Outcome {
    let elapsed = start.elapsed();
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:?}, limit {limit:?}"))
    }
}

const SI_STRICT: &str = "(defun si (condicio ergo alternatio) (if condicio ergo alternatio))";
const SI_LAZY: &str = "(deflazy si (condicio ergo alternatio) (if condicio ergo alternatio))";

fn strict_divergence() -> Outcome {
    let start = Instant::now();
    let mut interp = Interpreter::new();
    eval(&mut interp, SI_STRICT)?;
    match interp.eval_str("(si t 42 (diverge))") {
        Err(e) if e.is_divergence() => within(Duration::from_secs(1), start),
        other => Err(format!("expected divergence, got {other:?}")),
    }
}

fn lazy_si() -> Outcome {
    let src = format!("{SI_LAZY} (lazy-call #'si t 42 (diverge))");
    let out = bin().args(["--eval", &src]).output().map_err(|e| e.to_string())?;
    expect_eq("exit code", out.status.code(), Some(0))?;
    expect_eq("stdout", String::from_utf8_lossy(&out.stdout).as_ref(), "42\n")
}

fn lazy_lambda() -> Outcome {
    let src = "(lazy-call (lazy #'(lambda (c e a) (if c e a))) t (+ 20 20 2) (diverge))";
    let v = eval(&mut Interpreter::new(), src)?;
    expect_eq("value", v.to_string(), "42".to_string())
}

fn keyword_calls() -> Outcome {
    let forms = [
        "(lazy-call (lazy (lambda (x &key (y (diverge) y-supplied-p))
                            (if y-supplied-p y (+ x 21))))
                    21)",
        "(lazy-call (lazy (lambda (x &key ((:y yy) (diverge)))
                            (if x (+ x 21) yy)))
                    21)",
        "(lazy-call (lazy (lambda (x &key ((:y yy) (diverge)))
                            (if x (+ x 21) yy)))
                    nil :y 42)",
    ];
    for (i, src) in forms.iter().enumerate() {
        let v = eval(&mut Interpreter::new(), src)?;
        expect_eq(&format!("keyword call {}", i + 1), v, Value::Integer(42))?;
    }
    Ok(())
}

fn lazy_conses() -> Outcome {
    let mut interp = Interpreter::bare(Config::default());
    eval(
        &mut interp,
        "(deflazy conc (head tail)
            (lambda (selector)
              (ecase selector
                (car head)
                (cdr tail))))
         (deflazy head (cons) (funcall cons 'car))
         (deflazy tail (cons) (funcall cons 'cdr))
         (defparameter ll
           (lazy-call 'conc
                      1
                      (lazy-call 'conc
                                 (diverge)
                                 (lazy-call 'conc
                                            3
                                            (diverge)))))",
    )?;
    let v = eval(&mut interp, "(head (tail (tail ll)))")?;
    expect_eq("(head (tail (tail ll)))", v, Value::Integer(3))?;
    match interp.eval_str("(head (tail ll))") {
        Err(e) if e.is_divergence() => Ok(()),
        other => Err(format!("(head (tail ll)) should diverge, got {other:?}")),
    }
}

fn streams() -> Outcome {
    let start = Instant::now();
    let mut interp = Interpreter::new();
    for n in 0..=64usize {
        let v = eval(&mut interp, &format!("(stream-take (integers-from 0) {n})"))?;
        let got: Option<Vec<i64>> = v
            .list_items()
            .and_then(|items| items.iter().map(Value::as_integer).collect());
        let oracle: Vec<i64> = std::iter::successors(Some(0i64), |x| Some(x + 1)).take(n).collect();
        expect_eq(&format!("prefix of length {n}"), got, Some(oracle))?;
    }
    within(Duration::from_secs(1), start)
}

fn rest_thunks() -> Outcome {
    let mut interp = Interpreter::new();
    eval(&mut interp, "(deflazy keep (&rest r) r)")?;
    eval(
        &mut interp,
        "(defparameter got (lazy-call #'keep (tick!) (tick!) (tick!)))",
    )?;
    let items = interp
        .global("got")
        .and_then(|v| v.list_items())
        .ok_or("rest parameter is not a list")?;
    expect_eq("rest length", items.len(), 3)?;
    if !items.iter().all(Value::is_thunk) {
        return Err(format!("rest elements are not all thunks: {items:?}"));
    }
    expect_eq("ticks before forcing", interp.ticks(), 0)?;
    eval(&mut interp, "(force (car (cdr got)))")?;
    expect_eq("ticks after forcing one element", interp.ticks(), 1)
}

fn constant_pass_through() -> Outcome {
    let mut interp = Interpreter::new();
    eval(&mut interp, SI_LAZY)?;
    interp.reset_counters();
    eval(&mut interp, "(lazy-call #'si t 1 2)")?;
    expect_eq("thunks for (lazy-call #'si t 1 2)", interp.thunks_allocated(), 0)?;
    interp.reset_counters();
    eval(&mut interp, "(lazy-call #'si t 1 (+ 1 1))")?;
    expect_eq("thunks for (lazy-call #'si t 1 (+ 1 1))", interp.thunks_allocated(), 1)
}

fn by_name_versus_by_need() -> Outcome {
    let run = |memoize: bool| -> Result<(i64, Value), String> {
        let mut interp = Interpreter::with_config(Config {
            memoize,
            ..Config::default()
        });
        eval(&mut interp, "(deflazy twice (x) (+ x x))")?;
        // The argument's value does not depend on how often it is forced.
        let v = eval(&mut interp, "(lazy-call #'twice (progn (tick!) 21))")?;
        Ok((interp.ticks(), v))
    };
    let (name_ticks, name_value) = run(false)?;
    let (need_ticks, need_value) = run(true)?;
    expect_eq("ticks without memoization", name_ticks, 2)?;
    expect_eq("ticks with memoization", need_ticks, 1)?;
    expect_eq("value in both modes", name_value, need_value)?;

    let src = "(deflazy twice (x) (+ x x)) (lazy-call #'twice (tick!)) (ticks)";
    let cli = |extra: &[&str]| -> Result<String, String> {
        let out = bin()
            .args(extra)
            .args(["--eval", src])
            .output()
            .map_err(|e| e.to_string())?;
        Ok(String::from_utf8_lossy(&out.stdout).into_owned())
    };
    expect_eq("cli ticks", cli(&[])?, "2\n".to_string())?;
    expect_eq("cli ticks --memoize", cli(&["--memoize"])?, "1\n".to_string())
}

// Generated programs over three parameters.

#[derive(Debug, Clone)]
enum Expr {
    Lit(i64),
    Param(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    IfLess(Box<Expr>, Box<Expr>, Box<Expr>, Box<Expr>),
    IfEqual(Box<Expr>, Box<Expr>, Box<Expr>, Box<Expr>),
}

const PARAMS: [&str; 3] = ["a", "b", "c"];

impl Expr {
    fn source(&self) -> String {
        match self {
            Expr::Lit(n) => n.to_string(),
            Expr::Param(i) => PARAMS[*i].to_string(),
            Expr::Add(x, y) => format!("(+ {} {})", x.source(), y.source()),
            Expr::Sub(x, y) => format!("(- {} {})", x.source(), y.source()),
            Expr::Mul(x, y) => format!("(* {} {})", x.source(), y.source()),
            Expr::IfLess(p, q, t, e) => {
                format!("(if (< {} {}) {} {})", p.source(), q.source(), t.source(), e.source())
            }
            Expr::IfEqual(p, q, t, e) => {
                format!("(if (= {} {}) {} {})", p.source(), q.source(), t.source(), e.source())
            }
        }
    }

    /// Direct evaluation in Rust; `None` on overflow.
    fn oracle(&self, env: &[i64; 3]) -> Option<i64> {
        match self {
            Expr::Lit(n) => Some(*n),
            Expr::Param(i) => Some(env[*i]),
            Expr::Add(x, y) => x.oracle(env)?.checked_add(y.oracle(env)?),
            Expr::Sub(x, y) => x.oracle(env)?.checked_sub(y.oracle(env)?),
            Expr::Mul(x, y) => x.oracle(env)?.checked_mul(y.oracle(env)?),
            Expr::IfLess(p, q, t, e) => {
                if p.oracle(env)? < q.oracle(env)? {
                    t.oracle(env)
                } else {
                    e.oracle(env)
                }
            }
            Expr::IfEqual(p, q, t, e) => {
                if p.oracle(env)? == q.oracle(env)? {
                    t.oracle(env)
                } else {
                    e.oracle(env)
                }
            }
        }
    }
}

fn expr(depth: u32, params: bool) -> BoxedStrategy<Expr> {
    let leaf = if params {
        prop_oneof![(-20i64..20).prop_map(Expr::Lit), (0usize..3).prop_map(Expr::Param)].boxed()
    } else {
        (-20i64..20).prop_map(Expr::Lit).boxed()
    };
    leaf.prop_recursive(depth, 32, 4, |inner| {
        let b = |s: BoxedStrategy<Expr>| s.prop_map(Box::new);
        prop_oneof![
            (b(inner.clone()), b(inner.clone())).prop_map(|(x, y)| Expr::Add(x, y)),
            (b(inner.clone()), b(inner.clone())).prop_map(|(x, y)| Expr::Sub(x, y)),
            (b(inner.clone()), b(inner.clone())).prop_map(|(x, y)| Expr::Mul(x, y)),
            (b(inner.clone()), b(inner.clone()), b(inner.clone()), b(inner.clone()))
                .prop_map(|(p, q, t, e)| Expr::IfLess(p, q, t, e)),
            (b(inner.clone()), b(inner.clone()), b(inner.clone()), b(inner))
                .prop_map(|(p, q, t, e)| Expr::IfEqual(p, q, t, e)),
        ]
    })
    .boxed()
}

fn strict_lazy_equivalence() -> Outcome {
    let start = Instant::now();
    let config = RunnerConfig {
        cases: 1000,
        max_global_rejects: 100_000,
        failure_persistence: None,
        ..RunnerConfig::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let programs = Cell::new(0usize);
    let strategy = (expr(4, true), [expr(2, false), expr(2, false), expr(2, false)]);
    let result = runner.run(&strategy, |(body, args)| {
        let arg_values: Option<Vec<i64>> = args.iter().map(|a| a.oracle(&[0; 3])).collect();
        let Some(arg_values) = arg_values else {
            return Err(TestCaseError::reject("argument overflows"));
        };
        let env = [arg_values[0], arg_values[1], arg_values[2]];
        let Some(expected) = body.oracle(&env) else {
            return Err(TestCaseError::reject("body overflows"));
        };
        programs.set(programs.get() + 1);
        let mut interp = Interpreter::new();
        let def = format!("(deflazy f (a b c) {})", body.source());
        let call_args: Vec<String> = args.iter().map(Expr::source).collect();
        let call_args = call_args.join(" ");
        interp.eval_str(&def).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let strict = interp
            .eval_str(&format!("(f {call_args})"))
            .map_err(|e| TestCaseError::fail(format!("strict: {e}")))?;
        let lazy = interp
            .eval_str(&format!("(lazy-call #'f {call_args})"))
            .map_err(|e| TestCaseError::fail(format!("lazy: {e}")))?;
        prop_assert_eq!(&strict, &lazy, "{} with ({})", def, call_args);
        prop_assert_eq!(strict, Value::Integer(expected));
        Ok(())
    });
    result.map_err(|e| e.to_string())?;
    if programs.get() < 1000 {
        return Err(format!("only {} programs ran", programs.get()));
    }
    within(Duration::from_secs(30), start)
}

fn step_limit() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("spin.lisp");
    std::fs::write(&path, "(loop)\n").map_err(|e| e.to_string())?;
    let start = Instant::now();
    let out = bin()
        .args(["--step-limit", "1000"])
        .arg(&path)
        .output()
        .map_err(|e| e.to_string())?;
    expect_eq("exit code", out.status.code(), Some(3))?;
    within(Duration::from_secs(1), start)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("1  strict si diverges on (si t 42 (diverge))", strict_divergence),
        ("2  lazy si prints 42 via lazy-call", lazy_si),
        ("3  lazy lambda with (+ 20 20 2) yields 42", lazy_lambda),
        ("4  all three keyword calls yield 42", keyword_calls),
        (
            "5  lazy conses: 3 at the third position, divergence at the second",
            lazy_conses,
        ),
        ("6  stream-take matches the unfold oracle for n <= 64", streams),
        ("7  &rest receives unforced thunks", rest_thunks),
        ("8  constants pass through without thunks", constant_pass_through),
        ("9  call-by-name ticks twice, call-by-need once", by_name_versus_by_need),
        (
            "10 strict and lazy calls agree on 1000 generated programs",
            strict_lazy_equivalence,
        ),
        ("11 (loop) under --step-limit 1000 exits with 3", step_limit),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(()) => println!("PASS  {name}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! The same conditional defined as an ordinary function and with `deflazy`.
//!
//!     cargo run --example strict_vs_lazy

use lazycall::Interpreter;

fn main() -> Result<(), lazycall::Error> {
    let mut interp = Interpreter::new();

    interp.eval_str("(defun si (condicio ergo alternatio) (if condicio ergo alternatio))")?;
    match interp.eval_str("(si t 42 (diverge))") {
        Err(e) => println!("strict (si t 42 (diverge))        => {e}"),
        Ok(v) => println!("strict (si t 42 (diverge))        => {v}"),
    }

    // deflazy installs both halves under one name.
    let name = interp.eval_str("(deflazy si (condicio ergo alternatio) (if condicio ergo alternatio))")?;
    println!("(deflazy si ...)                  => {name}");
    let v = interp.eval_str("(lazy-call #'si t 42 (diverge))")?;
    println!("(lazy-call #'si t 42 (diverge))   => {v}");
    let v = interp.eval_str("(si nil 1 2)")?;
    println!("(si nil 1 2)                      => {v}");
    Ok(())
}

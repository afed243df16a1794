//! `lazy` turns a lambda into a function object that is called with
//! `lazy-call`, stored in variables and passed to other functions.
//!
//!     cargo run --example lazy_lambda

use lazycall::Interpreter;

fn main() -> Result<(), lazycall::Error> {
    let mut interp = Interpreter::new();

    let v = interp.eval_str(
        "(lazy-call (lazy #'(lambda (condicio ergo alternatio)
                              (if condicio ergo alternatio)))
                    t
                    (+ 20 20 2)
                    (loop))",
    )?;
    println!("lazy lambda with a (loop) argument => {v}");

    interp.eval_str(
        "(defparameter chooser (lazy (lambda (c a b) (if c a b))))
         (defun pick-second (f) (lazy-call f nil (diverge) 'second))",
    )?;
    println!("(pick-second chooser) => {}", interp.eval_str("(pick-second chooser)")?);

    // A lazy function cannot be reached through the strict convention.
    if let Err(e) = interp.eval_str("(funcall chooser t 1 2)") {
        println!("(funcall chooser t 1 2) => {e}");
    }
    Ok(())
}

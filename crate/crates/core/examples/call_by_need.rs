//! Call-by-name re-evaluates a lazy argument on every read; with memoization
//! each thunk runs at most once.
//!
//!     cargo run --example call_by_need

use lazycall::{Config, Interpreter};

fn main() -> Result<(), lazycall::Error> {
    for memoize in [false, true] {
        let mut interp = Interpreter::with_config(Config {
            memoize,
            ..Config::default()
        });
        interp.eval_str("(deflazy twice (x) (+ x x))")?;
        let v = interp.eval_str("(lazy-call #'twice (progn (tick!) 21))")?;
        let label = if memoize { "call-by-need" } else { "call-by-name" };
        println!("{label}: value {v}, argument evaluated {} time(s)", interp.ticks());
    }
    Ok(())
}

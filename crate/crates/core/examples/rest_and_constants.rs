//! What a lazy call allocates: constants pass straight through, other
//! arguments become thunks, and `&rest` collects the raw thunks.
//!
//!     cargo run --example rest_and_constants

use lazycall::Interpreter;

fn main() -> Result<(), lazycall::Error> {
    let mut interp = Interpreter::new();
    for src in [
        "(lazy-call #'si t 1 2)",
        "(lazy-call #'si t 1 (+ 1 1))",
        "(lazy-call #'si 'yes \"a string\" :keyword)",
    ] {
        interp.reset_counters();
        let v = interp.eval_str(src)?;
        println!("{src} => {v} ({} thunk(s))", interp.thunks_allocated());
    }

    interp.eval_str("(deflazy keep (&rest r) r)")?;
    let kept = interp.eval_str("(defparameter kept (lazy-call #'keep (tick!) 7 (tick!))) kept")?;
    println!("&rest list: {kept}, ticks so far: {}", interp.ticks());
    let first = interp.eval_str("(force (car kept))")?;
    println!("forced first element: {first}, ticks now: {}", interp.ticks());

    // A real cons with a delayed cdr.
    println!("{}", interp.eval_str("(lazy-call 'conc-pair 1 (diverge))")?);
    Ok(())
}

//! Conses as closures, with divergent holes that are never forced.
//!
//!     cargo run --example lazy_conses

use lazycall::Interpreter;

fn main() -> Result<(), lazycall::Error> {
    // conc, head and tail come from the prelude; this is their definition.
    println!(
        "{}",
        lazycall::PRELUDE
            .lines()
            .skip(6)
            .take(11)
            .collect::<Vec<_>>()
            .join("\n")
    );

    let mut interp = Interpreter::new();
    interp.eval_str(
        "(defparameter ll
           (lazy-call 'conc
                      1
                      (lazy-call 'conc
                                 (diverge)
                                 (lazy-call 'conc
                                            3
                                            (diverge)))))",
    )?;
    println!();
    println!("(head ll)               => {}", interp.eval_str("(head ll)")?);
    println!(
        "(head (tail (tail ll))) => {}",
        interp.eval_str("(head (tail (tail ll)))")?
    );
    match interp.eval_str("(head (tail ll))") {
        Err(e) => println!("(head (tail ll))        => {e}"),
        Ok(v) => println!("(head (tail ll))        => {v}"),
    }
    Ok(())
}

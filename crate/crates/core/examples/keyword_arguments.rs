//! `&optional` and `&key` defaults are delayed in lazy functions, so a
//! divergent default is harmless unless it is read.
//!
//!     cargo run --example keyword_arguments

use lazycall::Interpreter;

fn main() -> Result<(), lazycall::Error> {
    let calls = [
        "(lazy-call (lazy (lambda (x &key (y (loop) y-supplied-p))
                            (if y-supplied-p y (+ x 21))))
                    21)",
        "(lazy-call (lazy (lambda (x &key ((:y yy) (loop)))
                            (if x (+ x 21) yy)))
                    21)",
        "(lazy-call (lazy (lambda (x &key ((:y yy) (loop)))
                            (if x (+ x 21) yy)))
                    nil :y 42)",
    ];
    let mut interp = Interpreter::new();
    for src in calls {
        let one_line = src.split_whitespace().collect::<Vec<_>>().join(" ");
        println!("{one_line}\n  => {}", interp.eval_str(src)?);
    }
    Ok(())
}

//! An infinite stream of integers built from lazy conses.
//!
//!     cargo run --example integer_streams [COUNT]

use lazycall::Interpreter;

fn main() -> Result<(), lazycall::Error> {
    let count: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let mut interp = Interpreter::new();
    interp.eval_str("(defparameter integers (integers-from 0))")?;
    let prefix = interp.eval_str(&format!("(stream-take integers {count})"))?;
    println!("(stream-take integers {count}) => {prefix}");
    let fifth = interp.eval_str("(head (tail (tail (tail (tail integers)))))")?;
    println!("fifth element => {fifth}");
    Ok(())
}

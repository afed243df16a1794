//! Driving the interpreter from Rust: limits, captured output and
//! diagnostics.
//!
//!     cargo run --example embedding

use std::cell::RefCell;
use std::io::Write;
use std::rc::Rc;

use lazycall::cli::diagnostic;
use lazycall::{Config, Interpreter};

#[derive(Clone, Default)]
struct Captured(Rc<RefCell<Vec<u8>>>);

impl Write for Captured {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        self.0.borrow_mut().extend_from_slice(buf);
        Ok(buf.len())
    }

    fn flush(&mut self) -> std::io::Result<()> {
        Ok(())
    }
}

fn main() {
    let mut interp = Interpreter::with_config(Config {
        step_limit: Some(10_000),
        recursion_limit: 200,
        ..Config::default()
    });
    let captured = Captured::default();
    interp.set_output(Box::new(captured.clone()));

    let program = "(print (stream-take (integers-from 1) 5))\n(loop)";
    if let Err(e) = interp.eval_str(program) {
        println!("{}", diagnostic("program", &e));
    }
    let source = "(defun deep (n) (1+ (deep n)))\n(deep 0)";
    if let Err(e) = interp.eval_str(source) {
        println!("{}", diagnostic("program", &e));
    }
    print!("captured output: {}", String::from_utf8_lossy(&captured.0.borrow()));
}

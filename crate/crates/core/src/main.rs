use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use lazycall::cli::{self, Mode, Options};
use lazycall::Config;

/// Run lazycall programs, or start a REPL when no file or --eval is given.
#[derive(Parser, Debug)]
#[command(version, about)]
struct Args {
    /// Cache each thunk's value after its first force (call-by-need).
    #[arg(long)]
    memoize: bool,

    /// Evaluation steps plus (loop) iterations allowed per top-level form.
    #[arg(long, value_name = "N", default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    step_limit: u64,

    /// Maximum nesting depth of evaluation.
    #[arg(long, value_name = "N", default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    recursion_limit: u64,

    /// Evaluate FORM and print its value.
    #[arg(long, value_name = "FORM", conflicts_with = "file")]
    eval: Option<String>,

    /// Load this prelude instead of the built-in one.
    #[arg(long, value_name = "PATH")]
    prelude: Option<PathBuf>,

    /// Source file to run.
    file: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mode = match (args.eval, args.file) {
        (Some(text), _) => Mode::Eval(text),
        (None, Some(file)) => Mode::RunFile(file),
        (None, None) => Mode::Repl,
    };
    let options = Options {
        config: Config {
            memoize: args.memoize,
            step_limit: Some(args.step_limit),
            recursion_limit: usize::try_from(args.recursion_limit).unwrap_or(usize::MAX),
        },
        mode,
        prelude: args.prelude,
    };
    ExitCode::from(cli::run(&options).code() as u8)
}

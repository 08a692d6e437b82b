use clap::Parser;

use ellgenus::cli::{run, Cli};

fn main() {
    let outcome = run(&Cli::parse());
    if outcome.code == 0 || outcome.code == 1 {
        print!("{}", outcome.output);
    } else {
        eprint!("{}", outcome.output);
    }
    std::process::exit(outcome.code);
}

use clap::Parser;
use sspec::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}

use clap::Parser;
use oscm_bench::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}

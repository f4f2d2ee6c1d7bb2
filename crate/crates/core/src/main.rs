use clap::Parser;
use lattice_spectra::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}

use clap::Parser;

use cartier_lift::cli::{run, JobDescription};

fn main() {
    let job = JobDescription::parse();
    std::process::exit(run(&job));
}

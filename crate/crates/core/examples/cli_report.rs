//! Running a command-line job in process and printing its JSON report.

use clap::Parser;
use ncpoisson::cli::{execute, exit_code, Cli};

fn main() {
    let argv = ["ncp", "verify", "quasi-poisson", "--builtin", "one-pair"];
    let cli = Cli::parse_from(argv);
    let report = execute(&cli, &argv[1..].join(" "));
    println!("{}", report.to_json());
    println!("exit code {}", exit_code(&report));
}

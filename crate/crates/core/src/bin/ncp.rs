use std::process::exit;

use clap::Parser;
use ncpoisson::cli::{execute, exit_code, Cli};

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            exit(code);
        }
    };
    let echo: Vec<String> = argv[1..].iter().map(|a| if a.contains(char::is_whitespace) { format!("'{}'", a) } else { a.clone() }).collect();
    let report = execute(&cli, &echo.join(" "));
    println!("{}", report.to_json());
    exit(exit_code(&report));
}

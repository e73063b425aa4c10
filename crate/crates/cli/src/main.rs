use clap::Parser;
use ffblock_cli::app::{describe, exit_code, run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => print!("{text}"),
        Err(err) => {
            eprintln!("error: {}", describe(&err));
            std::process::exit(exit_code(&err));
        }
    }
}

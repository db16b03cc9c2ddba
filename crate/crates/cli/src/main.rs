use clap::Parser;

use roadchange_cli::commands::{execute, Cli};

fn main() {
    // keep exit code 2 reserved for I/O failures; usage errors get 64
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 64 } else { 0 };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = execute(cli.command) {
        eprintln!("error: {}", err.message);
        std::process::exit(err.code);
    }
}

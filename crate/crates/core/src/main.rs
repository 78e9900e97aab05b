use std::io::Write;

use clap::Parser;
use mirabolic::cli::{run_command, Cli};

fn main() {
    let cli = Cli::parse();
    let out = run_command(&cli);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.payload.as_bytes());
    let _ = stdout.flush();
    if let Some(msg) = out.diagnostic {
        eprintln!("{msg}");
    }
    std::process::exit(out.status);
}

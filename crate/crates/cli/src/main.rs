use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use connsum_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let out = if cli.options.text { report.render_text() } else { report.render_json() + "\n" };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

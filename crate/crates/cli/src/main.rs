use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use pregal_cli::args::Format;
use pregal_cli::{report, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&v).expect("report serializes") + "\n",
                Format::Text => report::to_text(&v),
            };
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

use std::io::Write;
use std::process::ExitCode;

use ccr_hopf_cli::config::Format;
use ccr_hopf_cli::{exit_code, run, Cli, CliError, EXIT_ERROR};
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR as u8 } else { 0 });
        }
    };
    let echo: Vec<String> = std::env::args().skip(1).collect();
    match execute(&cli, echo) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}

fn execute(cli: &Cli, echo: Vec<String>) -> Result<i32, CliError> {
    let report = run(&cli.command, echo, cli.config.clone())?;
    let text = match cli.config.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    match &cli.config.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(exit_code(&report))
}

mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::{Cli, Format};
use commands::Failure;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out.text) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(out.exit)
        }
        Err(failure) => report_failure(&cli, failure),
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn report_failure(cli: &Cli, failure: Failure) -> ExitCode {
    let exit = failure.exit_code();
    let (code, message) = failure.code_and_message();
    if cli.format == Format::Json {
        let doc = json!({"error": {"code": code, "message": message}});
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        eprintln!("error[{code}]: {message}");
    }
    ExitCode::from(exit)
}

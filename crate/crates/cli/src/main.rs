use std::process::ExitCode;

use chow_cli::{render, run, Cli, CliError};
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = run(&cli.command).and_then(|v| {
        let text = render(&v);
        match &cli.command.common().out {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprint!("{}", render(&e.to_json()));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

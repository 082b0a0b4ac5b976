use std::process::ExitCode;

use clap::Parser;
use thetakit_cli::config::{parse_config, Cli};
use thetakit_cli::{emit, exit_code, run, CliError};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = parse_config(&cli).map_err(CliError::from).and_then(|config| {
        let doc = run(&config)?;
        emit(&config, &doc)?;
        Ok(doc)
    });
    if let Err(e) = &result {
        eprintln!("thetakit: {e}");
    }
    ExitCode::from(exit_code(&result) as u8)
}

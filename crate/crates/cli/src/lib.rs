//! Command-line experiments over the thetakit library.

pub mod config;
pub mod error;
pub mod experiments;
pub mod report;

use std::time::{SystemTime, UNIX_EPOCH};

use config::{Experiment, ExperimentConfig};
pub use error::{CliError, ConfigError, Result};
use report::{Metadata, ReportDocument};

pub fn run(config: &ExperimentConfig) -> Result<ReportDocument> {
    let outcome = match config.experiment {
        Experiment::CohomologySurvey => experiments::cohomology_survey(config)?,
        Experiment::HeisenbergVerify => experiments::heisenberg_verify(config)?,
        Experiment::ObstructionTable => experiments::obstruction_table(config)?,
        Experiment::SymbolTable => experiments::symbol_table(config)?,
        Experiment::Prop28Search => experiments::prop28(config)?,
        Experiment::LangTateIndex => experiments::lang_tate(config)?,
    };
    let timestamp =
        config.timestamp.then(|| SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0));
    Ok(ReportDocument {
        metadata: Metadata {
            experiment: config.experiment.name().to_string(),
            parameters: config.parameters.clone(),
            library_version: thetakit::VERSION.to_string(),
            timestamp,
        },
        columns: outcome.columns,
        rows: outcome.rows,
        verdicts: outcome.verdicts,
    })
}

/// Writes the report to `--out` or stdout.
pub fn emit(config: &ExperimentConfig, doc: &ReportDocument) -> Result<()> {
    let text = doc.render(config.format)?;
    match &config.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

/// Exit status: 0 all verdicts pass, 1 a verdict failed, 2 bad configuration,
/// 3 a library or i/o error.
pub fn exit_code(result: &Result<ReportDocument>) -> i32 {
    match result {
        Ok(doc) if doc.all_passed() => 0,
        Ok(_) => 1,
        Err(CliError::Config(_)) => 2,
        Err(_) => 3,
    }
}

//! Command-line front end: dataset files, family generation, analysis
//! reports, the line-count identity check and SVG figures.

pub mod commands;
pub mod dataset;
pub mod error;
pub mod render;
pub mod report;

use std::ffi::OsString;
use std::process::ExitCode;

use clap::Parser;

pub use commands::{execute, Cli};
pub use dataset::{Dataset, DatasetFile, IntervalRecord};
pub use error::{CliError, CliResult};
pub use report::ReportFile;

/// Arguments after the program name, minus `--threads` (results do not
/// depend on it, so reports should not either).
fn provenance(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        if a == "--threads" {
            it.next();
        } else if !a.starts_with("--threads=") {
            out.push(a.clone());
        }
    }
    out
}

/// Parses and runs; errors go to standard error and map to exit codes.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<String> = args.into_iter().map(|a| a.into().to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code().clamp(0, 255) as u8);
        }
    };
    match execute(&cli, provenance(&args)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(&e)
        }
    }
}

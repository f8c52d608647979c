//! Library side of the `plfun` binary, so commands can be driven from tests.

pub mod args;
pub mod commands;
pub mod config;
pub mod report;

use clap::Parser;

pub use args::Cli;
pub use commands::{cmd_modform, cmd_polygon, cmd_provider, cmd_symcube, cmd_zeta, CliError, Pipeline};
pub use config::RunConfig;
pub use report::{Format, Report, Status};

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VIOLATED: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Merges config file and flags.
pub fn settings(cli: &Cli) -> Result<RunConfig, String> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if let Some(n) = cli.prec {
        cfg.prec = n;
    }
    if let Some(m) = cli.trunc {
        cfg.trunc = m;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn execute(cli: &Cli) -> Outcome {
    let cfg = match settings(cli) {
        Ok(c) => c,
        Err(e) => return Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let res = match &cli.command {
        args::Command::Zeta(a) => cmd_zeta(&cfg, a),
        args::Command::Modform(a) => cmd_modform(&cfg, a),
        args::Command::Polygon { cmd } => cmd_polygon(&cfg, cmd),
        args::Command::Symcube { cmd } => cmd_symcube(&cfg, cmd),
        args::Command::Provider { cmd } => cmd_provider(&cfg, cmd),
    };
    match res {
        Ok(r) => Outcome {
            code: if r.status == Status::Ok { EXIT_OK } else { EXIT_VIOLATED },
            stdout: r.render(cfg.format),
            stderr: String::new(),
        },
        Err(e) => {
            let code = if matches!(e, CliError::Usage(_)) { EXIT_USAGE } else { EXIT_ERROR };
            Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            }
        }
    }
}

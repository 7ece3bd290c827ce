//! `nwvoa` command line: runs a verification suite and writes a JSON report.
//!
//! Exit codes: 0 all checks pass, 1 some check fails, 2 invalid parameters,
//! 3 internal assertion, 4 I/O failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use nwvoa::error::Error;
use nwvoa::lattice::config::load_frame;
use nwvoa::report::{all_passed, emit_report};
use nwvoa::suites::{run_suite, Params, Suite, SuiteConfig};

#[derive(Parser, Debug)]
#[command(name = "nwvoa", version, about = "Exact verification suites for the Nappi-Witten free-field engine")]
struct Cli {
    /// verify-embedding, verify-qhr, hvir-singular, characters, kernel-profile,
    /// classify, relaxed-actions, log-rank or all
    #[arg(long)]
    suite: String,
    /// Weight (or depth) bound
    #[arg(long, default_value_t = 3)]
    max_weight: u32,
    /// Charge or line window
    #[arg(long, default_value_t = 2)]
    charge_window: i64,
    /// Module parameter, x=P/Q, y=P/Q, lambda=P/Q or r=N; repeatable
    #[arg(long = "param", value_name = "KEY=P/Q")]
    params: Vec<String>,
    /// Frame TOML replacing the ambient frame of the embedding suite
    #[arg(long)]
    frame: Option<PathBuf>,
    /// Report path; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

const EXIT_FAIL: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_INTERNAL: u8 = 3;
const EXIT_IO: u8 = 4;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidParameter(_) | Error::Parse(_) | Error::Incompatible(_) | Error::FrameMismatch(_) => EXIT_INVALID,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_INTERNAL,
    }
}

fn config(cli: &Cli) -> Result<SuiteConfig, Error> {
    let mut cfg = SuiteConfig::new(cli.suite.parse::<Suite>()?);
    cfg.max_weight = cli.max_weight;
    cfg.charge_window = cli.charge_window;
    let mut params = Params::default();
    for p in &cli.params {
        params.set(p)?;
    }
    cfg.params = params;
    if let Some(path) = &cli.frame {
        cfg.frame = Some(load_frame(path)?);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<bool, Error> {
    let cfg = config(cli)?;
    let records = run_suite(&cfg)?;
    let text = emit_report(&records) + "\n";
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(all_passed(&records))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(e) => {
            eprintln!("nwvoa: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

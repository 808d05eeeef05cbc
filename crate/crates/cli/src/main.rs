//! `fbmh`: reports on the fBm Hilbert-space norms, their expansions, and the
//! simulation checks.

mod commands;
mod report;
mod settings;

use std::io;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use fbmh_core::FbmhError;

use settings::{Flags, Format, Settings};

#[derive(Parser, Debug)]
#[command(name = "fbmh", version, about = "Norms and expansions in the Hilbert space of fractional Brownian motion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// ‖f_T‖² for f_T(t,s) = e^{-|t-s|}, with its components
    Norm,
    /// a, σ_H² and σ² = a²σ_H²
    Constants,
    /// Large-T expansion of ‖f_T‖²
    Expand,
    /// Scaled residuals |‖f_T‖²/2T - σ²|·T^{min(1,3-4H)} over a grid
    Decay,
    /// Oblique asymptote of ‖f_T‖²/2, plus the gap at each --T
    Asymptote,
    /// Quadrature value against the truncated expansion of one lemma
    Lemma,
    /// Monte Carlo estimate of E[W_T²]
    McWt,
    /// ∫_0^∞ ρ(r)² dr of the stationary fOU process
    RhoIntegral {
        /// Truncation point of the integral
        #[arg(long, value_name = "FLOAT")]
        r_max: Option<f64>,
    },
    /// Run every acceptance check and print a PASS/FAIL table
    VerifyAll,
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if let Some(f) = e.downcast_ref::<FbmhError>() {
        return match f {
            FbmhError::NonConvergence { .. } => 3,
            _ => 2,
        };
    }
    if e.chain().any(|c| c.is::<io::Error>() || c.is::<csv::Error>()) {
        return 1;
    }
    2
}

fn run(cli: Cli) -> Result<u8> {
    commands::threads_from_env()?;
    let s = Settings::resolve(&cli.flags)?;
    let default_format = match cli.command {
        Command::Decay => Format::Csv,
        _ => Format::Json,
    };
    let report = match &cli.command {
        Command::Norm => commands::norm(&s)?,
        Command::Constants => commands::constants(&s)?,
        Command::Expand => commands::expand(&s)?,
        Command::Decay => commands::decay(&s)?,
        Command::Asymptote => commands::asymptote(&s)?,
        Command::Lemma => commands::lemma(&s)?,
        Command::McWt => commands::mc_wt(&s)?,
        Command::RhoIntegral { r_max } => commands::rho_integral(&s, *r_max)?,
        Command::VerifyAll => {
            let (report, criteria) = commands::verify_all(&s)?;
            // the table goes to stdout unless the report itself does
            let table_to_stdout = s.out.is_some() || s.format.is_none();
            for c in &criteria {
                if table_to_stdout {
                    println!("{}", c.line());
                } else {
                    eprintln!("{}", c.line());
                }
            }
            let failed = criteria.iter().filter(|c| !c.passed).count();
            if s.out.is_some() || s.format.is_some() {
                report.emit(s.format.unwrap_or(Format::Json), s.timestamp, s.out.as_deref())?;
            }
            if failed > 0 {
                eprintln!("{failed} of {} criteria failed", criteria.len());
                return Ok(2);
            }
            return Ok(0);
        }
    };
    report.emit(s.format.unwrap_or(default_format), s.timestamp, s.out.as_deref())?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use premon::oracle::Gl1Oracle;
use premon::report::render_validation;
use premon::{emit_report, load_config, run, validate, Format, RunOptions};
use premon_core::linalg::parse_rational;

#[derive(Parser)]
#[command(name = "premon", version, about = "Coherence and ribbon checks for twined enveloping algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Jsonlike,
}

#[derive(Subcommand)]
enum Command {
    /// Validate K, then run the configured check suites.
    Check {
        config: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Exit with status 1 if any check fails.
        #[arg(long)]
        expect_all_pass: bool,
        /// Also run the quasi-triangular variant of the second fusion relation.
        #[arg(long = "variant-eq5")]
        variant_eq5: bool,
    },
    /// Run only the preconditions on K.
    Validate { config: PathBuf },
    /// Print closed-form gl(1) values of k, u, R, Phi and q.
    #[command(name = "oracle-gl1")]
    OracleGl1 {
        k: String,
        #[arg(allow_negative_numbers = true, required = true)]
        weights: Vec<i64>,
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        gamma: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check {
            config,
            format,
            out,
            jobs,
            expect_all_pass,
            variant_eq5,
        } => {
            let cfg = match load_config(&config) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("premon: {}: {e}", config.display());
                    return ExitCode::from(2);
                }
            };
            let opts = RunOptions {
                jobs,
                variant_fusion: variant_eq5,
            };
            let report = match run(&cfg, &opts) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("premon: {e}");
                    return ExitCode::from(e.exit_code() as u8);
                }
            };
            let format = match format {
                OutputFormat::Text => Format::Text,
                OutputFormat::Jsonlike => Format::Jsonlike,
            };
            let bytes = emit_report(&report, format);
            let written = match &out {
                Some(path) => std::fs::write(path, &bytes),
                None => std::io::stdout().write_all(&bytes),
            };
            if let Err(e) = written {
                eprintln!("premon: cannot write report: {e}");
                return ExitCode::from(1);
            }
            let t = report.totals();
            if t.error > 0 || (expect_all_pass && t.fail > 0) {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Command::Validate { config } => {
            let cfg = match load_config(&config) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("premon: {}: {e}", config.display());
                    return ExitCode::from(2);
                }
            };
            match validate(&cfg) {
                Ok((_, v)) => {
                    print!("{}", render_validation(&cfg, &v));
                    if v.passed() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(2)
                    }
                }
                Err(e) => {
                    eprintln!("premon: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Command::OracleGl1 { k, weights, gamma } => {
            let Some(gamma) = parse_rational(&gamma) else {
                eprintln!("premon: gamma {gamma:?} is not a rational p/q");
                return ExitCode::from(2);
            };
            match Gl1Oracle::new(&k, gamma).and_then(|o| o.render(&weights)) {
                Ok(text) => {
                    print!("{text}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("premon: {e}");
                    ExitCode::from(2)
                }
            }
        }
    }
}

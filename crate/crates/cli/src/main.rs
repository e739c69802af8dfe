use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use frabessel_cli::{cmd_eval, cmd_selftest, cmd_table, ConfigArgs, GoldenSource, RunConfig, Status};

/// Fractional powers of the Bessel operator.
#[derive(Parser)]
#[command(name = "frabessel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Value, error estimate, method and timing at one point x
    Eval(ConfigArgs),
    /// One CSV row per grid point (start, step, count)
    Table(ConfigArgs),
    /// Run the property suites
    Selftest {
        /// run only this suite
        #[arg(long)]
        suite: Option<String>,
        /// read example1.csv and example2.csv from this directory
        #[arg(long)]
        golden_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (stdout, stderr) = (io::stdout(), io::stderr());
    let (mut out, mut err) = (stdout.lock(), stderr.lock());
    let status = match cli.command {
        Command::Eval(args) => match RunConfig::resolve(&args, false) {
            Ok(cfg) => cmd_eval(&cfg, &mut out, &mut err),
            Err(e) => config_error(&e),
        },
        Command::Table(args) => match RunConfig::resolve(&args, true) {
            Ok(cfg) => cmd_table(&cfg, &mut out, &mut err),
            Err(e) => config_error(&e),
        },
        Command::Selftest { suite, golden_dir } => {
            let golden = golden_dir.map_or(GoldenSource::Embedded, GoldenSource::Dir);
            cmd_selftest(suite.as_deref(), &golden, &mut out)
        }
    };
    ExitCode::from(status.code())
}

fn config_error(e: &frabessel_cli::config::ConfigError) -> Status {
    eprintln!("error: {e}");
    Status::Domain
}

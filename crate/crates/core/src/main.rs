use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use oortlab::cli::{self, Outcome, RouteChoice};

#[derive(Parser)]
#[command(
    name = "oortlab",
    version,
    about = "Permutation groups and O-group verdicts"
)]
struct Args {
    /// Print a human-readable summary instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group and summarize it.
    Construct { spec: String },
    /// Decide whether a group is an O-group for a prime.
    Check {
        spec: String,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value = "both")]
        route: RouteChoice,
    },
    /// Structure report and claim audit.
    Audit {
        spec: String,
        #[arg(long)]
        p: u64,
    },
    /// Cross-check both routes over a manifest.
    Validate {
        manifest: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Ok(cap) = std::env::var("OORTLAB_ENUM_CAP") {
        match cap.trim().parse::<usize>() {
            Ok(n) if n > 0 => oortlab::set_enum_cap(n),
            _ => {
                eprintln!("error: OORTLAB_ENUM_CAP must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    let outcome: Outcome = match &args.command {
        Command::Construct { spec } => cli::cmd_construct(spec, args.table),
        Command::Check { spec, p, route } => cli::cmd_check(spec, *p, *route, args.table),
        Command::Audit { spec, p } => cli::cmd_audit(spec, *p, args.table),
        Command::Validate {
            manifest,
            jobs,
            out,
        } => cli::cmd_validate(manifest, *jobs, out.as_deref(), args.table),
    };
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.exit as u8)
}

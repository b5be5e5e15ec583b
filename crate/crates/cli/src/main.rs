use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use qsrlab_core::harness::{self, Report, RunConfig};
use qsrlab_core::{Error, Exec};

#[derive(Parser)]
#[command(
    name = "qsrlab",
    version,
    about = "Quasi-semiregular elements of permutation groups"
)]
struct Cli {
    /// Directory holding the group datasets.
    #[arg(long, global = true, value_name = "DIR")]
    data: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Largest group order handled by class-based methods.
    #[arg(
        long,
        global = true,
        value_name = "BIGINT",
        default_value = "1000000000"
    )]
    max_order: BigUint,

    /// Largest degree of a constructed action.
    #[arg(long, global = true, value_name = "N", default_value_t = qsrlab_core::actions::MAX_ACTION_DEGREE)]
    max_degree: usize,

    /// Add per-item wall time to the report.
    #[arg(long, global = true)]
    timings: bool,

    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Jsonl,
}

#[derive(Subcommand)]
enum Command {
    /// Derived actions of symmetric and alternating groups.
    Tables {
        #[arg(long, default_value_t = 13)]
        max_n: usize,
    },
    /// Mathieu groups on the cosets of their maximal subgroups.
    Sporadic {
        #[arg(long, value_name = "NAME")]
        only: Option<String>,
    },
    /// Product, diagonal and holomorph constructions.
    Structural,
    /// Affine and semilinear groups.
    Affine,
    /// Invariant suites.
    Verify {
        #[arg(long, value_name = "NAME")]
        suite: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = RunConfig {
        seed: cli.seed,
        max_degree: cli.max_degree,
        max_order: cli.max_order.clone(),
        timings: cli.timings,
        exec: if cli.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        },
        ..RunConfig::default()
    };
    if let Some(dir) = &cli.data {
        cfg.data_dir = dir.clone();
    }
    let result: Result<Report, Error> = match &cli.command {
        Command::Tables { max_n } => harness::tables::run(&cfg, *max_n),
        Command::Sporadic { only } => harness::sporadic::run(&cfg, only.as_deref()),
        Command::Structural => harness::structural::run(&cfg),
        Command::Affine => harness::affine::run(&cfg),
        Command::Verify { suite } => harness::verify::run(&cfg, suite.as_deref()),
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("qsrlab: {e}");
            return ExitCode::from(2);
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let written = match cli.format {
        Format::Text => report.write_text(&mut out),
        Format::Jsonl => report.write_jsonl(&mut out),
    }
    .and_then(|_| out.flush());
    if let Err(e) = written {
        eprintln!("qsrlab: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_code() as u8)
}

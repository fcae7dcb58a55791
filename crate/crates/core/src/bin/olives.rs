use std::collections::BTreeSet;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};

use plates_olives::analysis::{bound_table_from_counts, first_increase, ratio_table_from_counts};
use plates_olives::cli::{
    count_records, counts_with_cache, render_bounds, render_counts, render_ratios,
    resolve_cache_path, CountCache, Format, Variant,
};
use plates_olives::counting::{Counter, DEFAULT_MAX_STATES};
use plates_olives::game::{enumerate_games, histogram_csv, skeleton, stats_histogram, DEFAULT_ORACLE_CEILING};
use plates_olives::verify::{run_suite, Suite, VerifyConfig};

/// Exact counts for the game of plates and olives.
#[derive(Parser)]
#[command(name = "olives", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,

    /// Count cache file (default: $OLIVE_CACHE, then the user cache directory).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Neither read nor write the count cache.
    #[arg(long, global = true)]
    no_cache: bool,

    /// Cap on interned partitions before giving up.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STATES)]
    max_states: usize,

    /// Largest n for exhaustive game enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_CEILING)]
    oracle_ceiling: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Games,
    Skeletons,
    Histogram,
}

#[derive(Subcommand)]
enum Command {
    /// Print counts for n = 0..=max-n.
    Count {
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Variant::FirstReturn)]
        variant: Variant,
        /// Recompute cached values and fail on any mismatch.
        #[arg(long)]
        self_check: bool,
    },
    /// List every game of length n, its distinct skeletons, or a statistics histogram.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Emit::Games)]
        emit: Emit,
    },
    /// Run a check suite; exits nonzero if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Growth ratio (1/n) M_n^(1/n) for n = 1..=max-n.
    Ratio {
        #[arg(long)]
        max_n: usize,
        /// Decimal places printed for the ratio.
        #[arg(long, default_value_t = 6)]
        precision: usize,
    },
    /// M_n next to the double-factorial lower bound and the asymptotic envelopes.
    Bounds {
        #[arg(long)]
        max_n: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn cached_counts(cli: &Cli, variant: Variant, max_n: usize, self_check: bool) -> Result<Vec<num_bigint::BigUint>> {
    let mut counter = Counter::new(cli.max_states);
    let mut cache = if cli.no_cache {
        None
    } else {
        resolve_cache_path(cli.cache.clone()).map(CountCache::load)
    };
    counts_with_cache(&mut counter, cache.as_mut(), variant, max_n, self_check)
}

fn run(cli: &Cli) -> Result<bool> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match &cli.command {
        Command::Count {
            max_n,
            variant,
            self_check,
        } => {
            let counts = cached_counts(cli, *variant, *max_n, *self_check)?;
            out.write_all(render_counts(&count_records(&counts, *variant), cli.format).as_bytes())?;
        }
        Command::Enumerate { n, emit } => match emit {
            Emit::Games => {
                for game in enumerate_games(*n, cli.oracle_ceiling)? {
                    writeln!(out, "{game}")?;
                }
            }
            Emit::Skeletons => {
                let skeletons: BTreeSet<String> = enumerate_games(*n, cli.oracle_ceiling)?
                    .map(|g| skeleton(&g).to_string())
                    .collect();
                for line in skeletons {
                    writeln!(out, "{line}")?;
                }
            }
            Emit::Histogram => {
                let histogram = stats_histogram(*n, cli.oracle_ceiling)?;
                out.write_all(histogram_csv(&histogram).as_bytes())?;
            }
        },
        Command::Verify { suite } => {
            let config = VerifyConfig {
                oracle_ceiling: cli.oracle_ceiling,
                max_states: cli.max_states,
                ..VerifyConfig::default()
            };
            let checks = run_suite(*suite, &config);
            for check in &checks {
                writeln!(out, "{check}")?;
            }
            let failed = checks.iter().filter(|c| !c.passed()).count();
            writeln!(out, "{} checks, {failed} failed", checks.len())?;
            out.flush()?;
            return Ok(failed == 0);
        }
        Command::Ratio { max_n, precision } => {
            let counts = cached_counts(cli, Variant::FirstReturn, *max_n, false)?;
            let reports = ratio_table_from_counts(&counts);
            out.write_all(render_ratios(&reports, *precision, cli.format).as_bytes())?;
            if let Some(n) = first_increase(&reports) {
                eprintln!("note: ratio does not decrease at n = {n}");
            }
        }
        Command::Bounds { max_n } => {
            let counts = cached_counts(cli, Variant::FirstReturn, *max_n, false)?;
            let reports = bound_table_from_counts(&counts);
            out.write_all(render_bounds(&reports, cli.format).as_bytes())?;
            if reports.iter().any(|r| !r.lower_bound_holds) {
                out.flush()?;
                return Ok(false);
            }
        }
    }
    out.flush()?;
    Ok(true)
}

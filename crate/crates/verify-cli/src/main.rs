//! `verify` - runs the conformal-algebra verification suites.
//!
//! ```text
//! verify <all|algebra|identities|matrix|realization|ID...>
//!        [--particles N] [--seed S] [--jobs J]
//!        [--format json|markdown|text] [--out FILE] [--no-timestamp]
//!        [--config FILE]
//! verify list-checks [--format ...] [--out FILE]
//! ```
//!
//! Exit codes: 0 when every selected check passes, 1 on any fail or error,
//! 2 on usage errors.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use std::path::PathBuf;
use std::process::ExitCode;
use verify_cli::{catalog, run, CatalogListing, Report, RunOptions};

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Markdown,
    Text,
}

#[derive(Parser, Debug)]
#[command(
    name = "verify",
    about = "Exact verification of the conformal algebra of relativistic quantum observables",
    version,
    args_conflicts_with_subcommands = true
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Checks to run: `all`, a group (algebra, identities, matrix,
    /// realization), exact identifiers, or identifier prefixes.
    selection: Vec<String>,

    /// Particle count for the realization checks (at least 2; one massless
    /// particle has no invertible mass).
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..=6))]
    particles: Option<u64>,

    /// Seed for the randomized property checks.
    #[arg(long)]
    seed: Option<u64>,

    /// Worker threads for check execution.
    #[arg(long)]
    jobs: Option<usize>,

    /// Output format.
    #[arg(long, value_enum)]
    format: Option<Format>,

    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Omit the timestamp and zero the durations, making the report
    /// byte-deterministic for a fixed seed and version.
    #[arg(long)]
    no_timestamp: bool,

    /// JSON config file with the same keys as the flags; flags override.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List every check in the catalog with its traceability tag.
    ListChecks {
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=6))]
        particles: Option<u64>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

/// Config file: same keys as the flags.
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    particles: Option<usize>,
    seed: Option<u64>,
    jobs: Option<usize>,
    format: Option<Format>,
    out: Option<PathBuf>,
    no_timestamp: Option<bool>,
}

fn load_config(path: &Option<PathBuf>) -> Result<ConfigFile, String> {
    match path {
        None => Ok(ConfigFile::default()),
        Some(p) => {
            let data = std::fs::read_to_string(p)
                .map_err(|e| format!("cannot read config {}: {e}", p.display()))?;
            serde_json::from_str(&data)
                .map_err(|e| format!("invalid config {}: {e}", p.display()))
        }
    }
}

fn emit(rendered: String, out: &Option<PathBuf>) -> Result<(), String> {
    match out {
        None => {
            print!("{rendered}");
            Ok(())
        }
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match real_main(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn real_main(cli: Cli) -> Result<ExitCode, String> {
    if let Some(Command::ListChecks {
        format,
        out,
        particles,
        config,
    }) = cli.command
    {
        let cfg = load_config(&config)?;
        let particles = particles.map(|p| p as usize).or(cfg.particles).unwrap_or(2);
        if particles < 2 {
            return Err("--particles must be at least 2".into());
        }
        let format = format.or(cfg.format).unwrap_or(Format::Text);
        let listing = CatalogListing::new(catalog(particles));
        let rendered = match format {
            Format::Json => listing.to_json(),
            Format::Markdown => listing.to_markdown(),
            Format::Text => listing.to_text(),
        };
        emit(rendered, &out.or(cfg.out))?;
        return Ok(ExitCode::SUCCESS);
    }

    if cli.selection.is_empty() {
        return Err("nothing selected; try `verify all` or `verify list-checks`".into());
    }
    let cfg = load_config(&cli.config)?;
    let opts = RunOptions {
        particles: cli.particles.map(|p| p as usize).or(cfg.particles).unwrap_or(2),
        seed: cli.seed.or(cfg.seed).unwrap_or(1),
        jobs: cli.jobs.or(cfg.jobs).unwrap_or(1),
        corrupt: None,
    };
    let no_timestamp = cli.no_timestamp || cfg.no_timestamp.unwrap_or(false);
    let format = cli.format.or(cfg.format).unwrap_or(Format::Text);
    let results = run(&cli.selection, &opts)?;
    let report = Report::assemble(results, !no_timestamp);
    let rendered = match format {
        Format::Json => report.to_json(),
        Format::Markdown => report.to_markdown(),
        Format::Text => report.to_text(),
    };
    emit(rendered, &cli.out.or(cfg.out))?;
    Ok(ExitCode::from(report.exit_code() as u8))
}

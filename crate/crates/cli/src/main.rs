use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use z2lab_cli::collapse::{run_collapse, CollapseConfig};
use z2lab_cli::config::{Command, ExperimentConfig};
use z2lab_cli::recipes::{recipe, RECIPES};
use z2lab_cli::runner::{execute, rows_to_csv, write_atomic, write_outputs};
use z2lab_cli::verify::verify;

#[derive(Parser)]
#[command(name = "z2lab", version, about = "Monitored Z2 circuits: ensembles, decoders and scaling fits")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args)]
struct Overrides {
    /// Master seed, replacing the config value.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads, replacing the config value (0 uses every core).
    #[arg(long)]
    workers: Option<usize>,
    /// Output prefix; `<out>.csv` and `<out>.json` are written.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Sub {
    /// Phase observables of the circuit models.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        o: Overrides,
    },
    /// Decoder success probabilities.
    DecodeSweep {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        o: Overrides,
    },
    /// Cluster statistics of sampled bond lattices.
    Percolation {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        o: Overrides,
    },
    /// Crossing and collapse fit of a CSV produced by another command.
    Collapse {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// JSON report path; printed to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized equivalence checks against the reference oracles.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Canned experiment for a figure id; lists the ids when none is given.
    Repro {
        id: Option<String>,
        /// Trials per grid point, replacing the recipe value.
        #[arg(long)]
        trials: Option<u64>,
        #[command(flatten)]
        o: Overrides,
    },
}

fn run_experiment(mut cfg: ExperimentConfig, o: Overrides) -> Result<()> {
    if let Some(s) = o.seed {
        cfg.seed = s;
    }
    if let Some(w) = o.workers {
        cfg.workers = w;
    }
    let out = o.out.or_else(|| cfg.out.as_ref().map(PathBuf::from));
    let result = execute(&cfg)?;
    match out {
        Some(prefix) => {
            let (csv, json) = write_outputs(&result, &prefix)?;
            eprintln!("wrote {} and {}", csv.display(), json.display());
        }
        None => print!("{}", String::from_utf8(rows_to_csv(&result.rows)?)?),
    }
    Ok(())
}

fn load(command: Command, path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ExperimentConfig::from_text(command, &text).with_context(|| format!("in {}", path.display()))
}

fn main_inner() -> Result<bool> {
    match Cli::parse().command {
        Sub::Run { config, o } => run_experiment(load(Command::Run, &config)?, o)?,
        Sub::DecodeSweep { config, o } => run_experiment(load(Command::DecodeSweep, &config)?, o)?,
        Sub::Percolation { config, o } => run_experiment(load(Command::Percolation, &config)?, o)?,
        Sub::Collapse { config, seed, out } => {
            let text = std::fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
            let mut cfg = CollapseConfig::from_text(&text).with_context(|| format!("in {}", config.display()))?;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let base = config.parent().unwrap_or(Path::new("."));
            let report = serde_json::to_string_pretty(&run_collapse(&cfg, base)?)?;
            match out.or_else(|| cfg.out.as_ref().map(PathBuf::from)) {
                Some(p) => write_atomic(&p, report.as_bytes())?,
                None => println!("{report}"),
            }
        }
        Sub::Verify { seed } => {
            let (ok, text) = verify(seed);
            print!("{text}");
            return Ok(ok);
        }
        Sub::Repro { id: None, .. } => {
            for r in RECIPES {
                println!("{:12} {}", r.id, r.about);
            }
        }
        Sub::Repro { id: Some(id), trials, o } => {
            let Some(r) = recipe(&id) else { bail!("unknown figure id `{id}`; run `z2lab repro` for the list") };
            let mut cfg = r.config()?;
            if let Some(t) = trials {
                if t == 0 {
                    bail!("--trials must be at least 1");
                }
                cfg.trials = t;
            }
            run_experiment(cfg, o)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match main_inner() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

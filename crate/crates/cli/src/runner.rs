//! Seeded parallel execution of a config and its CSV / JSON outputs.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use z2lab::observables::MeanAccumulator;
use z2lab::rng::trial_rng;

use crate::config::{ExperimentConfig, GridPoint};
use crate::kernels::{run_point, KernelError};

pub const CSV_HEADER: [&str; 8] = ["model", "observable", "p", "L", "T", "mean", "stderr", "n"];
pub const MANIFEST_SCHEMA: &str = "z2lab-manifest/1";

#[derive(Debug, Error)]
pub enum RunError {
    #[error("trial {trial} of grid point {grid}: {source}")]
    Trial { grid: u64, trial: u64, source: KernelError },
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("thread pool: {0}")]
    Pool(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub model: String,
    pub observable: String,
    pub p: f64,
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "T")]
    pub t: usize,
    pub mean: f64,
    pub stderr: Option<f64>,
    pub n: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema: String,
    pub tool_version: String,
    pub command: String,
    pub seed: u64,
    pub config: ExperimentConfig,
    /// Canonical config text, parseable by the same command.
    pub config_text: String,
    pub grid: Vec<GridPoint>,
    pub rows: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub rows: Vec<Row>,
    pub manifest: Manifest,
}

/// Runs every `(grid point, trial)` task. Trial `k` of grid point `g` draws from
/// `trial_rng(seed, g, k)` and results are merged in trial order, so the output
/// does not depend on the worker count.
pub fn execute(cfg: &ExperimentConfig) -> Result<RunOutput, RunError> {
    let grid = cfg.grid();
    let tasks: Vec<(usize, u64)> = (0..grid.len()).flat_map(|g| (0..cfg.trials).map(move |k| (g, k))).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.workers).build().map_err(|e| RunError::Pool(e.to_string()))?;
    let values: Vec<Vec<f64>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(g, k)| {
                let pt = &grid[g];
                let mut rng = trial_rng(cfg.seed, pt.index, k);
                run_point(cfg, pt, &mut rng).map_err(|source| RunError::Trial { grid: pt.index, trial: k, source })
            })
            .collect::<Result<_, _>>()
    })?;
    let mut rows = Vec::new();
    for (g, pt) in grid.iter().enumerate() {
        let chunk = &values[g * cfg.trials as usize..(g + 1) * cfg.trials as usize];
        for (o, name) in cfg.outputs.iter().enumerate() {
            let acc: MeanAccumulator = chunk.iter().map(|v| v[o]).collect();
            rows.push(Row {
                model: cfg.model.name().to_string(),
                observable: name.clone(),
                p: pt.p,
                l: pt.l,
                t: pt.steps,
                mean: acc.mean(),
                stderr: acc.stderr(),
                n: acc.n,
            });
        }
    }
    let manifest = Manifest {
        schema: MANIFEST_SCHEMA.into(),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        command: cfg.command.name().into(),
        seed: cfg.seed,
        config: cfg.clone(),
        config_text: cfg.to_text(),
        grid,
        rows: rows.len(),
    };
    Ok(RunOutput { rows, manifest })
}

pub fn rows_to_csv(rows: &[Row]) -> Result<Vec<u8>, RunError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.into_inner().map_err(|e| RunError::Io { path: PathBuf::from("<csv>"), source: e.into_error() })
}

pub fn read_csv(path: &Path) -> Result<Vec<Row>, RunError> {
    let mut r = csv::Reader::from_path(path)?;
    r.deserialize().map(|row| row.map_err(RunError::from)).collect()
}

/// Writes `bytes` to a temporary file next to `path`, then renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), RunError> {
    let io = |source| RunError::Io { path: path.to_path_buf(), source };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir).map_err(io)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Writes `<prefix>.csv` and `<prefix>.json`.
pub fn write_outputs(out: &RunOutput, prefix: &Path) -> Result<(PathBuf, PathBuf), RunError> {
    let with = |ext: &str| PathBuf::from(format!("{}.{ext}", prefix.display()));
    let (csv_path, json_path) = (with("csv"), with("json"));
    write_atomic(&csv_path, &rows_to_csv(&out.rows)?)?;
    write_atomic(&json_path, serde_json::to_string_pretty(&out.manifest)?.as_bytes())?;
    Ok((csv_path, json_path))
}

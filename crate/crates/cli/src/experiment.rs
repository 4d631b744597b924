//! Batch runs of the witness pipeline with one CSV row per trial.
//!
//! Columns, in order: `k,c,r,d,seed,success,retries,path_length,wall_ms,failure_stage`.
//! `seed` is the trial's own master seed, `split_seed(master, [k, trial])`,
//! so `linchrom witness --k <k> --colours <c> --seed <seed>` reproduces any
//! row. `wall_ms` is 0 unless timing is switched on, which keeps the file a
//! pure function of the configuration. `failure_stage` is empty on success.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::Context;
use linchrom_core::formats::{parse_witness, write_witness};
use linchrom_core::seed::split_seed;
use linchrom_core::witness::{build_witness, default_d, WitnessError, WitnessParams};

use crate::instance::{path_is_witness, InstanceSpec};

pub const HEADER: [&str; 10] =
    ["k", "c", "r", "d", "seed", "success", "retries", "path_length", "wall_ms", "failure_stage"];

/// How each trial's pseudogrid is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Instances {
    Plain,
    Pseudogrid,
    /// Plain on even trials, random on odd ones.
    Mixed,
}

/// Number of colours for a given `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColourRule {
    Fixed(u32),
    /// `max(1, floor(k / divisor))`.
    Divisor(u32),
}

impl ColourRule {
    pub fn colours(self, k: u32) -> u32 {
        match self {
            ColourRule::Fixed(c) => c,
            ColourRule::Divisor(q) => (k / q).max(1),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub ks: Vec<u32>,
    pub colours: ColourRule,
    pub r: u32,
    /// `None` picks `default_d` per cell.
    pub d: Option<u32>,
    pub budget: u32,
    pub trials: u32,
    pub seed: u64,
    pub instances: Instances,
    pub timing: bool,
    /// Where to keep the witness file of every success.
    pub witness_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentRow {
    pub k: u32,
    pub c: u32,
    pub r: u32,
    pub d: u32,
    pub seed: u64,
    pub success: bool,
    pub retries: u32,
    pub path_length: usize,
    pub wall_ms: u64,
    pub failure_stage: String,
    pub trial: u32,
}

impl ExperimentRow {
    pub fn record(&self) -> [String; 10] {
        [
            self.k.to_string(),
            self.c.to_string(),
            self.r.to_string(),
            self.d.to_string(),
            self.seed.to_string(),
            (self.success as u8).to_string(),
            self.retries.to_string(),
            self.path_length.to_string(),
            self.wall_ms.to_string(),
            self.failure_stage.clone(),
        ]
    }
}

fn stage_of(e: &WitnessError) -> String {
    match e {
        WitnessError::InvalidParams(_) => "params".into(),
        WitnessError::TooManyColours { .. } | WitnessError::PruningExhausted { .. } => "prune".into(),
        WitnessError::Representatives(_) => "representatives".into(),
        WitnessError::BudgetExhausted { stage, .. } => stage.to_string(),
        WitnessError::Precondition(_) => "cover".into(),
        WitnessError::Splice(_) => "route".into(),
        _ => "error".into(),
    }
}

pub fn run_trial(cfg: &ExperimentConfig, k: u32, trial: u32) -> anyhow::Result<ExperimentRow> {
    let c = cfg.colours.colours(k);
    let d = cfg.d.unwrap_or_else(|| default_d(k, c, cfg.r));
    let pseudogrid = match cfg.instances {
        Instances::Plain => false,
        Instances::Pseudogrid => true,
        Instances::Mixed => trial % 2 == 1,
    };
    let inst = InstanceSpec { k, colours: c, pseudogrid, seed: split_seed(cfg.seed, &[k as u64, trial as u64]) };
    let mut row = ExperimentRow {
        k,
        c,
        r: cfg.r,
        d,
        seed: inst.seed,
        success: false,
        retries: 0,
        path_length: 0,
        wall_ms: 0,
        failure_stage: String::new(),
        trial,
    };
    let pg = inst.pseudogrid()?;
    let phi = inst.colouring(pg.vertex_count())?;
    let params = WitnessParams { r: cfg.r, d, budget: cfg.budget, seed: inst.pipeline_seed() };
    let start = Instant::now();
    let outcome = build_witness(&pg, &phi, &params);
    if cfg.timing {
        row.wall_ms = start.elapsed().as_millis() as u64;
    }
    match outcome {
        Ok(report) => {
            let mut file = report.to_file();
            file.colours = c;
            file.seed = inst.seed;
            let text = write_witness(&file);
            // Re-verify from the serialised form against a fresh instance.
            let parsed = parse_witness(&text)?;
            let fresh = inst.pseudogrid()?;
            if path_is_witness(&fresh, &inst.colouring(fresh.vertex_count())?, &parsed.path) {
                row.success = true;
                row.retries = report.retries;
                row.path_length = report.path.len();
            } else {
                row.failure_stage = "reverify".into();
            }
            if let Some(dir) = &cfg.witness_dir {
                let path = dir.join(format!("k{k}_c{c}_t{trial}.witness"));
                fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Err(e) => {
            row.failure_stage = stage_of(&e);
            if let WitnessError::BudgetExhausted { attempts, .. } = e {
                row.retries = attempts;
            }
        }
    }
    Ok(row)
}

/// All trials, sorted by `(k, c, trial)`.
pub fn run_experiment(cfg: &ExperimentConfig) -> anyhow::Result<Vec<ExperimentRow>> {
    anyhow::ensure!(!cfg.ks.is_empty(), "no values of k given");
    if let Some(dir) = &cfg.witness_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut rows = Vec::new();
    for &k in &cfg.ks {
        for trial in 0..cfg.trials {
            rows.push(run_trial(cfg, k, trial)?);
        }
    }
    rows.sort_by_key(|r| (r.k, r.c, r.trial));
    Ok(rows)
}

pub fn write_csv<W: std::io::Write>(rows: &[ExperimentRow], out: W) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()?;
    Ok(())
}

/// One line per `(k, c)` cell: trials, successes and the success rate.
pub fn summary(rows: &[ExperimentRow]) -> String {
    let mut cells: BTreeMap<(u32, u32), (usize, usize)> = BTreeMap::new();
    for row in rows {
        let cell = cells.entry((row.k, row.c)).or_default();
        cell.0 += 1;
        cell.1 += row.success as usize;
    }
    let mut out = String::from("k,c,trials,successes,success_rate\n");
    for ((k, c), (n, ok)) in cells {
        out.push_str(&format!("{k},{c},{n},{ok},{:.3}\n", ok as f64 / n as f64));
    }
    out
}

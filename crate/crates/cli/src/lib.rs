//! Command-line front end for `linchrom-core`.
//!
//! Exit status: 0 on success, 1 when a check fails (a witness does not
//! verify, the pipeline finds none, a packing census is too large), 2 on
//! usage errors and unreadable input.

pub mod experiment;
pub mod instance;

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use linchrom_core::exact::{chi_cen, chi_lin, treedepth, SmallGraph};
use linchrom_core::formats::{
    parse_colouring, parse_graph, parse_spec, parse_witness, write_colouring, write_graph, write_spec, write_witness,
};
use linchrom_core::gridcore::{random_spec, RandomSpecParams};
use linchrom_core::seed::{rng_from, split_seed};
use linchrom_core::witness::{build_witness, default_d, packing_census, random_maximal_packing, WitnessError, WitnessParams};
use linchrom_core::{Colouring, GridGraph, Pseudogrid};

use experiment::{run_experiment, summary, write_csv, ColourRule, ExperimentConfig, Instances};
use instance::{path_is_witness, InstanceSpec};

#[derive(Debug, Parser)]
#[command(name = "linchrom", version, about = "Uncentred-path witnesses in pseudogrids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExactKind {
    Chilin,
    Chicen,
    Treedepth,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the plain grid graph in graph format.
    GenGrid {
        #[arg(long)]
        k: u32,
        /// Number of rows; defaults to `k`.
        #[arg(long)]
        height: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a random pseudogrid spec.
    GenPseudogrid {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        height: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a uniform random colouring of a spec's or graph's vertices.
    ColourRandom {
        #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
        spec: Option<PathBuf>,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        colours: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for an uncentred path and write a witness file.
    ///
    /// Without `--spec` and `--colouring` the instance is generated from
    /// `--k`, `--colours` and `--seed`.
    Witness {
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        colours: Option<u32>,
        #[arg(long, default_value_t = 9)]
        r: u32,
        /// Objects demanded per colour; defaults to `floor(k/c) - 2r`.
        #[arg(long)]
        d: Option<u32>,
        #[arg(long, default_value_t = 64)]
        budget: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Generate a random pseudogrid instead of the plain grid.
        #[arg(long)]
        pseudogrid: bool,
        #[arg(long, requires = "colouring")]
        spec: Option<PathBuf>,
        #[arg(long, requires = "spec")]
        colouring: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a witness file; exit 1 if it does not verify.
    Verify {
        witness: PathBuf,
        /// The witness was made with `--pseudogrid`.
        #[arg(long)]
        pseudogrid: bool,
        #[arg(long, requires = "colouring")]
        spec: Option<PathBuf>,
        #[arg(long, requires = "spec")]
        colouring: Option<PathBuf>,
    },
    /// Exact parameters of a small graph file.
    Exact {
        #[arg(value_enum)]
        what: ExactKind,
        graph: PathBuf,
    },
    /// Run the pipeline over many seeded instances and write CSV.
    Experiment {
        /// Grid sides, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<u32>,
        #[arg(long, conflicts_with = "divisor", required_unless_present = "divisor")]
        colours: Option<u32>,
        /// Use `floor(k / divisor)` colours.
        #[arg(long)]
        divisor: Option<u32>,
        #[arg(long, default_value_t = 9)]
        r: u32,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long, default_value_t = 64)]
        budget: u32,
        #[arg(long, default_value_t = 10)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Instances::Plain)]
        instances: Instances,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Record wall-clock milliseconds (makes output vary between runs).
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        witness_dir: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest census over random maximal packings; exit 1 if above 16.
    PackingCensus {
        #[arg(long, default_value_t = 200)]
        k: u32,
        #[arg(long, default_value_t = 10)]
        r: u32,
        #[arg(long, default_value_t = 100)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A failed check, as opposed to an error running the command.
#[derive(Debug)]
pub struct CheckFailed(pub String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn load_instance(spec: &Path, colouring: &Path) -> anyhow::Result<(Pseudogrid, Colouring)> {
    let pg = Pseudogrid::build(&parse_spec(&read(spec)?).with_context(|| format!("parsing {}", spec.display()))?)?;
    let phi = parse_colouring(&read(colouring)?).with_context(|| format!("parsing {}", colouring.display()))?;
    Ok((pg, phi))
}

pub fn execute(command: Command) -> anyhow::Result<()> {
    match command {
        Command::GenGrid { k, height, out } => {
            let pg = Pseudogrid::plain(k, height.unwrap_or(k))?;
            emit(&out, &write_graph(pg.graph()))
        }
        Command::GenPseudogrid { k, height, seed, out } => {
            let params = RandomSpecParams { b: height.unwrap_or(k), ..RandomSpecParams::square(k) };
            let spec = random_spec(&params, &mut rng_from(seed))?;
            emit(&out, &write_spec(&spec))
        }
        Command::ColourRandom { spec, graph, colours, seed, out } => {
            anyhow::ensure!(colours > 0, "--colours must be positive");
            let n = match (spec, graph) {
                (Some(s), _) => Pseudogrid::build(&parse_spec(&read(&s)?)?)?.vertex_count(),
                (None, Some(g)) => parse_graph(&read(&g)?)?.vertex_count(),
                (None, None) => anyhow::bail!("give --spec or --graph"),
            };
            emit(&out, &write_colouring(&Colouring::random(n, colours, &mut rng_from(seed))))
        }
        Command::Witness { k, colours, r, d, budget, seed, pseudogrid, spec, colouring, out } => {
            let (pg, phi, c, pipeline_seed) = match (spec, colouring) {
                (Some(s), Some(col)) => {
                    let (pg, phi) = load_instance(&s, &col)?;
                    let c = phi.used().len() as u32;
                    (pg, phi, c, seed)
                }
                _ => {
                    let k = k.context("--k is required without --spec")?;
                    let c = colours.context("--colours is required without --colouring")?;
                    let inst = InstanceSpec { k, colours: c, pseudogrid, seed };
                    let pg = inst.pseudogrid()?;
                    let phi = inst.colouring(pg.vertex_count())?;
                    (pg, phi, c, inst.pipeline_seed())
                }
            };
            let side = pg.grid().width();
            let d = d.unwrap_or_else(|| default_d(side, c, r)).max(1);
            let params = WitnessParams { r, d, budget, seed: pipeline_seed };
            match build_witness(&pg, &phi, &params) {
                Ok(report) => {
                    let mut file = report.to_file();
                    file.colours = c;
                    file.seed = seed;
                    emit(&out, &write_witness(&file))
                }
                Err(e @ WitnessError::BudgetExhausted { .. }) => Err(CheckFailed(e.to_string()).into()),
                Err(e) => Err(e.into()),
            }
        }
        Command::Verify { witness, pseudogrid, spec, colouring } => {
            let file = parse_witness(&read(&witness)?).with_context(|| format!("parsing {}", witness.display()))?;
            let (pg, phi) = match (spec, colouring) {
                (Some(s), Some(c)) => load_instance(&s, &c)?,
                _ => {
                    let inst = InstanceSpec { k: file.k, colours: file.colours, pseudogrid, seed: file.seed };
                    let pg = inst.pseudogrid()?;
                    let phi = inst.colouring(pg.vertex_count())?;
                    (pg, phi)
                }
            };
            if !file.verified {
                return Err(CheckFailed("witness file is marked unverified".into()).into());
            }
            if !path_is_witness(&pg, &phi, &file.path) {
                return Err(CheckFailed("path is not an uncentred simple path".into()).into());
            }
            println!("ok: uncentred path of {} vertices", file.path.len());
            Ok(())
        }
        Command::Exact { what, graph } => {
            let g = parse_graph(&read(&graph)?).with_context(|| format!("parsing {}", graph.display()))?;
            let small = SmallGraph::from_graph(&g)?;
            let value = match what {
                ExactKind::Chilin => chi_lin(&small)?,
                ExactKind::Chicen => chi_cen(&small)?,
                ExactKind::Treedepth => treedepth(&small)?,
            };
            println!("{value}");
            Ok(())
        }
        Command::Experiment {
            k,
            colours,
            divisor,
            r,
            d,
            budget,
            trials,
            seed,
            instances,
            format: Format::Csv,
            timing,
            witness_dir,
            out,
        } => {
            let colours = match (colours, divisor) {
                (Some(c), _) => ColourRule::Fixed(c),
                (None, Some(q)) if q > 0 => ColourRule::Divisor(q),
                _ => anyhow::bail!("give --colours or a positive --divisor"),
            };
            let cfg = ExperimentConfig { ks: k, colours, r, d, budget, trials, seed, instances, timing, witness_dir };
            let rows = run_experiment(&cfg)?;
            let mut csv = Vec::new();
            write_csv(&rows, &mut csv)?;
            emit(&out, std::str::from_utf8(&csv)?)?;
            eprint!("{}", summary(&rows));
            Ok(())
        }
        Command::PackingCensus { k, r, trials, seed } => {
            let g = GridGraph::square(k)?;
            let mut worst = 0;
            for trial in 0..trials {
                let mut rng = rng_from(split_seed(seed, &[trial as u64]));
                let q = random_maximal_packing(&g, r, &mut rng);
                worst = worst.max(packing_census(&q, r, &g)?);
            }
            println!("max census {worst} over {trials} trials");
            if worst > 16 {
                return Err(CheckFailed(format!("census {worst} exceeds 16")).into());
            }
            Ok(())
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) if e.is::<CheckFailed>() => {
            eprintln!("check failed: {e}");
            1
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

use std::collections::BTreeMap;
use std::fmt;

use super::doubled::doubled_colour_set;
use super::prune::prune_to_frequent;
use super::representatives::choose_representatives;
use super::snake::pick_up_everything;
use super::WitnessError;
use crate::colorings::{centre_of, Colouring};
use crate::formats::WitnessFile;
use crate::gridcore::{vol, Pseudogrid};
use crate::seed::{rng_from, split_seed};

/// Pipeline stage, for failure reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    Prune,
    Representatives,
    DoubledSet,
    Cover,
    Route,
    Verify,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Prune => "prune",
            Stage::Representatives => "representatives",
            Stage::DoubledSet => "doubled-set",
            Stage::Cover => "cover",
            Stage::Route => "route",
            Stage::Verify => "verify",
        })
    }
}

/// Sizes recorded along the way.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Telemetry {
    /// Side of the grid after pruning.
    pub k_prime: u64,
    pub q1: u64,
    /// Colours that failed the first round.
    pub x: u64,
    pub q2: u64,
    pub s: u64,
    pub retries: u64,
}

impl Telemetry {
    pub fn to_array(self) -> [u64; 6] {
        [self.k_prime, self.q1, self.x, self.q2, self.s, self.retries]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WitnessParams {
    /// Box radius, at least 9.
    pub r: u32,
    /// Objects demanded per colour.
    pub d: u32,
    /// Attempts before giving up.
    pub budget: u32,
    pub seed: u64,
}

impl WitnessParams {
    /// Radius of the boxes the path detours through.
    pub fn p(&self) -> u32 {
        self.r.saturating_sub(5) / 4
    }
}

/// Largest `d` the colour-count precondition allows: `floor(k/c) - 2r`,
/// or 0 if none does.
pub fn default_d(k: u32, colours: u32, r: u32) -> u32 {
    if colours == 0 {
        return 0;
    }
    (k / colours).saturating_sub(2 * r)
}

/// `32 vol(7r)^2 + 1`, the weight denominator under which a good claiming
/// order is guaranteed to exist.
pub fn reference_tau(r: u32) -> u128 {
    let v = vol(7 * r as u64) as u128;
    32 * v * v + 1
}

/// Smallest fixpoint of `d = ceil(A (ln(A + 1) + 2 vol(2r+1) ln(2d)))` with
/// `A = 32 vol(7r)`: a demand large enough for the existence argument to go
/// through. Far beyond desk scale (about 10^11 for `r = 9`); informational
/// only.
pub fn reference_d(r: u32) -> f64 {
    let a = 32.0 * vol(7 * r as u64) as f64;
    let v = vol(2 * r as u64 + 1) as f64;
    let mut d = 1.0f64;
    for _ in 0..200 {
        let next = (a * ((a + 1.0).ln() + 2.0 * v * (2.0 * d).ln())).ceil();
        if next == d {
            break;
        }
        d = next;
    }
    d
}

/// Outcome of a successful run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    /// Vertex ids of the input pseudogrid.
    pub path: Vec<usize>,
    pub verified: bool,
    pub colour_multiplicity: BTreeMap<u32, usize>,
    pub retries: u32,
    pub params: WitnessParams,
    pub k: u32,
    /// Number of colours in use.
    pub colours: u32,
    pub telemetry: Telemetry,
}

impl WitnessReport {
    pub fn to_file(&self) -> WitnessFile {
        WitnessFile {
            k: self.k,
            colours: self.colours,
            r: self.params.r,
            d: self.params.d,
            seed: self.params.seed,
            verified: self.verified,
            path: self.path.clone(),
            telemetry: self.telemetry.to_array(),
        }
    }
}

/// Independent check: `path` is a simple path of `pg` and no vertex on it
/// has a colour of its own.
pub fn verify_witness_path(pg: &Pseudogrid, phi: &Colouring, path: &[usize]) -> bool {
    !path.is_empty()
        && phi.len() == pg.vertex_count()
        && pg.graph().is_simple_path(path)
        && centre_of(phi, path).is_none()
}

/// Finds a path without a centre under `phi`.
///
/// Prunes to frequent colours once, then makes up to `budget` attempts, each
/// with its own sub-seed: choose representatives, build the doubled set with
/// one claiming order, thread the snake, and check the result. The first
/// verified path is returned, mapped back to the ids of `pg`.
pub fn build_witness(pg: &Pseudogrid, phi: &Colouring, params: &WitnessParams) -> Result<WitnessReport, WitnessError> {
    let WitnessParams { r, d, budget, seed } = *params;
    if r < 9 {
        return Err(WitnessError::InvalidParams(format!("r must be at least 9, got {r}")));
    }
    if d < 1 || budget < 1 {
        return Err(WitnessError::InvalidParams("d and budget must be positive".into()));
    }
    phi.check_len(pg.vertex_count())?;
    let g = pg.grid();
    if g.width() != g.height() {
        return Err(WitnessError::NotSquare { a: g.width(), b: g.height() });
    }
    let k = g.width();
    let colours = phi.used().len() as u32;
    let pruned = prune_to_frequent(pg, phi, d, r)?;
    let mut telemetry = Telemetry { k_prime: pruned.k() as u64, ..Telemetry::default() };
    let (qg, qphi) = (&pruned.pg, &pruned.phi);
    let mut stage = Stage::Representatives;
    for attempt in 0..budget {
        telemetry.retries = attempt as u64;
        let mut rng = rng_from(split_seed(seed, &[attempt as u64]));
        let rep = choose_representatives(qg, qphi, d, r, &mut rng)?;
        let set = match doubled_colour_set(qg, qphi, &rep, r, 1, &mut rng) {
            Ok(set) => set,
            Err(WitnessError::BudgetExhausted { telemetry: t, .. }) => {
                telemetry.q1 = t.q1;
                telemetry.x = t.x;
                stage = Stage::DoubledSet;
                continue;
            }
            Err(e) => return Err(e),
        };
        telemetry.q1 = set.q1 as u64;
        telemetry.x = set.failed as u64;
        telemetry.q2 = set.q2 as u64;
        telemetry.s = set.s.len() as u64;
        let pick = match pick_up_everything(qg, &set.s, r) {
            Ok(pick) => pick,
            Err(WitnessError::Precondition(_)) => {
                stage = Stage::Cover;
                continue;
            }
            Err(WitnessError::Splice(_)) => {
                stage = Stage::Route;
                continue;
            }
            Err(e) => return Err(e),
        };
        let path: Vec<usize> = pick.path.iter().map(|&v| qg.origin(v)).collect();
        if !verify_witness_path(pg, phi, &path) {
            stage = Stage::Verify;
            continue;
        }
        let mut colour_multiplicity = BTreeMap::new();
        for &v in &path {
            *colour_multiplicity.entry(phi.colour(v)).or_insert(0) += 1;
        }
        return Ok(WitnessReport {
            path,
            verified: true,
            colour_multiplicity,
            retries: attempt,
            params: *params,
            k,
            colours,
            telemetry,
        });
    }
    telemetry.retries = budget as u64;
    Err(WitnessError::BudgetExhausted { stage, attempts: budget, telemetry })
}

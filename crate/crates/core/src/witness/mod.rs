//! Construction of uncentred paths in pseudogrids.
//!
//! The pipeline, for a `k x k` pseudogrid and a colouring with few colours:
//!
//! 1. [`prune_to_frequent`] deletes rows and columns until every remaining
//!    colour occurs on at least `d` objects of the `r`-interior per colour,
//!    in the Hall sense.
//! 2. [`choose_representatives`] gives each interior object at most one
//!    colour so that every colour keeps exactly `d` objects.
//! 3. [`doubled_colour_set`] picks two objects per colour, well spread out:
//!    a greedy first round, then a random claiming round settled by a 2-fold
//!    matching. Failed permutations are resampled.
//! 4. [`pick_up_everything`] covers the chosen vertices with disjoint boxes
//!    ([`make_disjoint`]) and threads a snake through the grid, detouring
//!    inside each box with [`pick_up_two`].
//! 5. The path is re-checked with the independent centre test.

mod disjoint;
mod doubled;
mod packing;
mod pipeline;
mod prune;
mod representatives;
mod route;
mod snake;

pub use disjoint::{make_disjoint, verify_cover, Centre, CoverClass};
pub use doubled::{
    audit_doubled_set, claim_in_order, claiming_round2, doubled_colour_set, greedy_round1, spread_violations,
    ClaimGraph, DoubledSet, RoundOne,
};
pub use packing::{is_packing, packing_census, random_maximal_packing};
pub use pipeline::{
    build_witness, default_d, reference_d, reference_tau, verify_witness_path, Stage, Telemetry,
    WitnessParams, WitnessReport,
};
pub use prune::{prune_to_frequent, PruneRound, Pruned};
pub use representatives::{choose_representatives, RepresentativeColouring};
pub use route::{classify_case, pick_up_two, CaseLabel, PickCase};
pub use snake::{pick_up_everything, snake_rows, PickUp};

use thiserror::Error;

use crate::colorings::ColouringError;
use crate::gridcore::GridError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{colours} colours exceed k/(d+2r) = {k}/({d}+2*{r})")]
    TooManyColours { colours: usize, k: u32, d: u32, r: u32 },
    #[error("pseudogrid must be square, got {a}x{b}")]
    NotSquare { a: u32, b: u32 },
    #[error("pruning left a {k}x{k} grid, too small to continue")]
    PruningExhausted { k: u32 },
    #[error("colours {0:?} lack enough interior objects for representatives")]
    Representatives(Vec<u32>),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("could not route through box around {0}")]
    Splice(String),
    #[error("retry budget exhausted at stage {stage} after {attempts} attempts")]
    BudgetExhausted { stage: Stage, attempts: u32, telemetry: Telemetry },
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Colouring(#[from] ColouringError),
}

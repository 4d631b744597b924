//! Seeded instances shared by `witness`, `verify` and `experiment`.
//!
//! From a master seed `s`:
//! - the pseudogrid is the plain `k x k` grid, or with `--pseudogrid` a
//!   random one drawn from `split_seed(s, [0])`;
//! - the colouring is uniform over `c` colours, drawn from `split_seed(s, [1])`;
//! - the pipeline runs on `split_seed(s, [2])`.

use linchrom_core::colorings::centre_of;
use linchrom_core::gridcore::{random_spec, RandomSpecParams};
use linchrom_core::seed::{rng_from, split_seed};
use linchrom_core::{Colouring, Pseudogrid};

pub const GRID_LABEL: u64 = 0;
pub const COLOUR_LABEL: u64 = 1;
pub const PIPELINE_LABEL: u64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceSpec {
    pub k: u32,
    pub colours: u32,
    pub pseudogrid: bool,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn pseudogrid(&self) -> anyhow::Result<Pseudogrid> {
        if self.pseudogrid {
            let mut rng = rng_from(split_seed(self.seed, &[GRID_LABEL]));
            let spec = random_spec(&RandomSpecParams::square(self.k), &mut rng)?;
            Ok(Pseudogrid::build(&spec)?)
        } else {
            Ok(Pseudogrid::plain(self.k, self.k)?)
        }
    }

    pub fn colouring(&self, n: usize) -> anyhow::Result<Colouring> {
        anyhow::ensure!(self.colours > 0, "--colours must be positive");
        let mut rng = rng_from(split_seed(self.seed, &[COLOUR_LABEL]));
        Ok(Colouring::random(n, self.colours, &mut rng))
    }

    pub fn pipeline_seed(&self) -> u64 {
        split_seed(self.seed, &[PIPELINE_LABEL])
    }
}

/// The check `verify` applies, written against the graph and colouring only:
/// the path is nonempty, its ids are in range, consecutive vertices are
/// adjacent, no vertex repeats, and no colour occurs on it exactly once.
pub fn path_is_witness(pg: &Pseudogrid, phi: &Colouring, path: &[usize]) -> bool {
    let g = pg.graph();
    let n = g.vertex_count();
    if path.is_empty() || phi.len() != n || path.iter().any(|&v| v >= n) {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in path {
        if std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    path.windows(2).all(|w| g.has_edge(w[0], w[1])) && centre_of(phi, path).is_none()
}

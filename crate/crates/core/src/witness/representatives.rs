use rand::seq::SliceRandom;
use rand::Rng;

use super::WitnessError;
use crate::bipartite::{polygamous_matching, BipartiteGraph, MatchingOutcome};
use crate::colorings::{frequency_graph, profile, Colouring};
use crate::gridcore::{interior_rect, GridGraph, GridObject, ObjectId, Pseudogrid};

/// At most one representative colour per grid object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentativeColouring {
    grid: GridGraph,
    rep: Vec<Option<u32>>,
    colours: Vec<u32>,
}

impl RepresentativeColouring {
    /// Builds one from explicit assignments; unlisted objects get none.
    pub fn from_assignments(grid: GridGraph, pairs: &[(GridObject, u32)]) -> Self {
        let mut rep = vec![None; grid.object_count()];
        let mut colours = Vec::new();
        for &(mu, c) in pairs {
            rep[grid.object_id(mu).expect("object in grid")] = Some(c);
            colours.push(c);
        }
        colours.sort_unstable();
        colours.dedup();
        RepresentativeColouring { grid, rep, colours }
    }

    pub fn grid(&self) -> &GridGraph {
        &self.grid
    }

    pub fn get(&self, mu: GridObject) -> Option<u32> {
        self.grid.object_id(mu).and_then(|id| self.rep[id])
    }

    pub fn get_id(&self, id: ObjectId) -> Option<u32> {
        self.rep[id]
    }

    /// Colours with at least one representative object, sorted.
    pub fn colours(&self) -> &[u32] {
        &self.colours
    }

    /// Objects represented by `colour`, in row-major order.
    pub fn objects_of(&self, colour: u32) -> Vec<GridObject> {
        let mut out: Vec<GridObject> = (0..self.rep.len())
            .filter(|&id| self.rep[id] == Some(colour))
            .map(|id| self.grid.object(id))
            .collect();
        out.sort_by_key(|o| o.row_major_key());
        out
    }

    /// All represented objects with their colours, by object id.
    pub fn assigned(&self) -> impl Iterator<Item = (GridObject, u32)> + '_ {
        self.rep
            .iter()
            .enumerate()
            .filter_map(|(id, c)| c.map(|c| (self.grid.object(id), c)))
    }

    /// Checks: nothing outside the `r`-interior is represented, every
    /// representative colour occurs on the object's part, and every colour in
    /// `colours` has at least `d` objects.
    pub fn audit(&self, pg: &Pseudogrid, phi: &Colouring, colours: &[u32], d: usize, r: u32) -> Result<(), String> {
        let rect = interior_rect(&self.grid, r);
        let mut counts = std::collections::BTreeMap::new();
        for (mu, c) in self.assigned() {
            if !rect.is_some_and(|rect| rect.contains_object(mu)) {
                return Err(format!("{mu} is outside the interior"));
            }
            if !pg.part(mu).iter().any(|&v| phi.colour(v) == c) {
                return Err(format!("{mu} does not carry colour {c}"));
            }
            *counts.entry(c).or_insert(0usize) += 1;
        }
        for c in colours {
            let n = counts.get(c).copied().unwrap_or(0);
            if n < d {
                return Err(format!("colour {c} has {n} representatives, need {d}"));
            }
        }
        Ok(())
    }
}

/// Gives each of `d` interior objects per colour that colour, through a
/// `d`-fold matching between colours and interior objects. Adjacency lists
/// are shuffled first so the chosen objects spread over the grid instead of
/// piling up in the first rows.
pub fn choose_representatives<R: Rng>(
    pg: &Pseudogrid,
    phi: &Colouring,
    d: u32,
    r: u32,
    rng: &mut R,
) -> Result<RepresentativeColouring, WitnessError> {
    let prof = profile(pg, phi);
    let colours = phi.used();
    let (h, right) = frequency_graph(&prof, &colours, r);
    let adj = (0..h.left_count())
        .map(|x| {
            let mut list = h.neighbours(x).to_vec();
            list.shuffle(rng);
            list
        })
        .collect();
    let h = BipartiteGraph::from_adjacency(h.right_count(), adj).expect("same ranges");
    match polygamous_matching(&h, d as usize).map_err(|e| WitnessError::InvalidParams(e.to_string()))? {
        MatchingOutcome::Matching(m) => {
            let grid = *pg.grid();
            let mut rep = vec![None; grid.object_count()];
            for (x, ys) in m.left_to_right.iter().enumerate() {
                for &y in ys {
                    rep[right[y]] = Some(colours[x]);
                }
            }
            Ok(RepresentativeColouring { grid, rep, colours })
        }
        MatchingOutcome::Violator(a) => Err(WitnessError::Representatives(a.into_iter().map(|x| colours[x]).collect())),
    }
}

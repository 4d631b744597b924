//! Vertex colourings, centre checks and colour profiles over grid objects.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::bipartite::{polygamous_matching, BipartiteGraph, MatchingOutcome};
use crate::graph::Graph;
use crate::gridcore::{interior, GridGraph, ObjectId, Pseudogrid};

/// Default vertex limit for [`is_linear`]; overridable through
/// `LINCHROM_LINEAR_GUARD`.
pub const LINEAR_GUARD: usize = 16;
/// Default vertex limit for [`is_centred`]; overridable through
/// `LINCHROM_CENTRED_GUARD`.
pub const CENTRED_GUARD: usize = 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColouringError {
    #[error("vertex {vertex} has colour {colour} but only {count} colours are allowed")]
    ColourOutOfRange { vertex: usize, colour: u32, count: u32 },
    #[error("colouring covers {got} vertices, graph has {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("graph has {n} vertices, above the exhaustive-search limit of {limit}")]
    TooLarge { n: usize, limit: usize },
}

/// Total map from vertex ids to colours in `0..count`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Colouring {
    colours: Vec<u32>,
    count: u32,
}

impl Colouring {
    pub fn new(colours: Vec<u32>, count: u32) -> Result<Self, ColouringError> {
        if let Some((vertex, &colour)) = colours.iter().enumerate().find(|(_, &c)| c >= count) {
            return Err(ColouringError::ColourOutOfRange { vertex, colour, count });
        }
        Ok(Colouring { colours, count })
    }

    /// Colour count taken as one more than the largest colour used.
    pub fn from_colours(colours: Vec<u32>) -> Self {
        let count = colours.iter().max().map_or(0, |&c| c + 1);
        Colouring { colours, count }
    }

    pub fn random<R: rand::Rng>(n: usize, count: u32, rng: &mut R) -> Self {
        assert!(count > 0, "need at least one colour");
        Colouring {
            colours: (0..n).map(|_| rng.gen_range(0..count)).collect(),
            count,
        }
    }

    pub fn colour(&self, v: usize) -> u32 {
        self.colours[v]
    }

    pub fn colours(&self) -> &[u32] {
        &self.colours
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn count(&self) -> u32 {
        self.count
    }

    /// Colours actually used, sorted.
    pub fn used(&self) -> Vec<u32> {
        self.colours.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Colouring of a derived graph whose vertex `v` corresponds to
    /// `origin[v]` here.
    pub fn pull_back(&self, origin: &[usize]) -> Colouring {
        Colouring {
            colours: origin.iter().map(|&v| self.colours[v]).collect(),
            count: self.count,
        }
    }

    pub fn check_len(&self, n: usize) -> Result<(), ColouringError> {
        if self.colours.len() != n {
            return Err(ColouringError::LengthMismatch {
                got: self.colours.len(),
                expected: n,
            });
        }
        Ok(())
    }
}

/// The first vertex of `vertices` whose colour occurs exactly once among
/// them.
pub fn centre_of(phi: &Colouring, vertices: &[usize]) -> Option<usize> {
    let mut counts = std::collections::HashMap::new();
    for &v in vertices {
        *counts.entry(phi.colour(v)).or_insert(0usize) += 1;
    }
    vertices.iter().copied().find(|&v| counts[&phi.colour(v)] == 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Every path (or connected subgraph) has a centre.
    Holds,
    /// A path (or connected vertex set) without a centre.
    Counterexample(Vec<usize>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn counterexample(&self) -> Option<&[usize]> {
        match self {
            Verdict::Holds => None,
            Verdict::Counterexample(c) => Some(c),
        }
    }
}

fn guard_from_env(var: &str, default: usize) -> usize {
    std::env::var(var).ok().and_then(|s| s.parse().ok()).unwrap_or(default)
}

/// Whether every simple path has a centre, by exhaustive enumeration.
pub fn is_linear(g: &Graph, phi: &Colouring) -> Result<Verdict, ColouringError> {
    is_linear_with_limit(g, phi, guard_from_env("LINCHROM_LINEAR_GUARD", LINEAR_GUARD))
}

pub fn is_linear_with_limit(g: &Graph, phi: &Colouring, limit: usize) -> Result<Verdict, ColouringError> {
    let n = g.vertex_count();
    if n > limit {
        return Err(ColouringError::TooLarge { n, limit });
    }
    phi.check_len(n)?;
    // A vertex whose colour is unique among the remaining vertices centres
    // every path through it, so no uncentred path can use it.
    let mut alive = vec![true; n];
    loop {
        let mut counts = vec![0usize; phi.count() as usize];
        for v in (0..n).filter(|&v| alive[v]) {
            counts[phi.colour(v) as usize] += 1;
        }
        let peel: Vec<usize> = (0..n)
            .filter(|&v| alive[v] && counts[phi.colour(v) as usize] == 1)
            .collect();
        if peel.is_empty() {
            break;
        }
        for v in peel {
            alive[v] = false;
        }
    }
    let mut search = PathSearch {
        g,
        phi,
        alive: &alive,
        on_path: vec![false; n],
        counts: vec![0; phi.count() as usize],
        unique: 0,
        path: Vec::with_capacity(n),
    };
    for (s, &live) in alive.iter().enumerate() {
        if live && search.extend(s) {
            return Ok(Verdict::Counterexample(search.path));
        }
    }
    Ok(Verdict::Holds)
}

struct PathSearch<'a> {
    g: &'a Graph,
    phi: &'a Colouring,
    alive: &'a [bool],
    on_path: Vec<bool>,
    counts: Vec<u32>,
    unique: usize,
    path: Vec<usize>,
}

impl PathSearch<'_> {
    /// Pushes `v`; returns true (leaving the path in place) if an uncentred
    /// path was found in the subtree.
    fn extend(&mut self, v: usize) -> bool {
        let c = self.phi.colour(v) as usize;
        self.counts[c] += 1;
        match self.counts[c] {
            1 => self.unique += 1,
            2 => self.unique -= 1,
            _ => {}
        }
        self.on_path[v] = true;
        self.path.push(v);
        if self.unique == 0 {
            return true;
        }
        for &w in self.g.neighbors(v) {
            if self.alive[w] && !self.on_path[w] && self.extend(w) {
                return true;
            }
        }
        self.path.pop();
        self.on_path[v] = false;
        match self.counts[c] {
            1 => self.unique -= 1,
            2 => self.unique += 1,
            _ => {}
        }
        self.counts[c] -= 1;
        false
    }
}

/// Whether every connected vertex set has a centre.
pub fn is_centred(g: &Graph, phi: &Colouring) -> Result<Verdict, ColouringError> {
    is_centred_with_limit(g, phi, guard_from_env("LINCHROM_CENTRED_GUARD", CENTRED_GUARD))
}

pub fn is_centred_with_limit(g: &Graph, phi: &Colouring, limit: usize) -> Result<Verdict, ColouringError> {
    let n = g.vertex_count();
    if n > limit || n >= 64 {
        return Err(ColouringError::TooLarge { n, limit: limit.min(63) });
    }
    phi.check_len(n)?;
    let nbr: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    for mask in 1u64..(1u64 << n) {
        if !connected(mask, &nbr) {
            continue;
        }
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if centre_of(phi, &set).is_none() {
            return Ok(Verdict::Counterexample(set));
        }
    }
    Ok(Verdict::Holds)
}

fn connected(mask: u64, nbr: &[u64]) -> bool {
    let start = mask & mask.wrapping_neg();
    let mut reach = start;
    let mut frontier = start;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = nbr[v] & mask & !reach;
        reach |= new;
        frontier |= new;
    }
    reach == mask
}

/// Colour sets of the parts of a pseudogrid, and the inverse map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColourProfile {
    grid: GridGraph,
    sets: Vec<Vec<u32>>,
    inverse: Vec<Vec<ObjectId>>,
}

impl ColourProfile {
    pub fn grid(&self) -> &GridGraph {
        &self.grid
    }

    /// Sorted colours on `P_mu`.
    pub fn colours_of(&self, mu: ObjectId) -> &[u32] {
        &self.sets[mu]
    }

    /// Objects whose part carries `colour`, in increasing id order.
    pub fn objects_of(&self, colour: u32) -> &[ObjectId] {
        self.inverse.get(colour as usize).map_or(&[], |v| v.as_slice())
    }

    pub fn colour_count(&self) -> u32 {
        self.inverse.len() as u32
    }
}

pub fn profile(pg: &Pseudogrid, phi: &Colouring) -> ColourProfile {
    let grid = *pg.grid();
    let mut sets = Vec::with_capacity(grid.object_count());
    let mut inverse = vec![Vec::new(); phi.count() as usize];
    for id in 0..grid.object_count() {
        let mut set: Vec<u32> = pg.part_by_id(id).iter().map(|&v| phi.colour(v)).collect();
        set.sort_unstable();
        set.dedup();
        for &c in &set {
            inverse[c as usize].push(id);
        }
        sets.push(set);
    }
    ColourProfile { grid, sets, inverse }
}

/// Bipartite graph between `colours` (left, in the given order) and the
/// objects of the `r`-interior (right, row-major ids as returned), joining a
/// colour to every interior object whose part carries it.
pub fn frequency_graph(profile: &ColourProfile, colours: &[u32], r: u32) -> (BipartiteGraph, Vec<ObjectId>) {
    let g = profile.grid();
    let right: Vec<ObjectId> = interior(g, r)
        .into_iter()
        .map(|mu| g.object_id(mu).expect("interior objects are in the grid"))
        .collect();
    let mut slot = vec![usize::MAX; g.object_count()];
    for (k, &id) in right.iter().enumerate() {
        slot[id] = k;
    }
    let adj = colours
        .iter()
        .map(|&c| {
            profile
                .objects_of(c)
                .iter()
                .filter(|&&id| slot[id] != usize::MAX)
                .map(|&id| slot[id])
                .collect()
        })
        .collect();
    let h = BipartiteGraph::from_adjacency(right.len(), adj).expect("slots are in range");
    (h, right)
}

/// A colour set `A` whose parts meet fewer than `d|A|` interior objects, if
/// one exists. The violator from the matching certificate is shrunk by
/// dropping single colours while the inequality still holds.
pub fn deficiency_set(profile: &ColourProfile, colours: &[u32], d: usize, r: u32) -> Option<Vec<u32>> {
    if colours.is_empty() || d == 0 {
        return None;
    }
    let (h, _) = frequency_graph(profile, colours, r);
    let MatchingOutcome::Violator(mut set) = polygamous_matching(&h, d).expect("d >= 1") else {
        return None;
    };
    let mut k = 0;
    while k < set.len() && set.len() > 1 {
        let mut smaller = set.clone();
        smaller.remove(k);
        if h.is_violator(&smaller, d) {
            set = smaller;
        } else {
            k += 1;
        }
    }
    let mut out: Vec<u32> = set.into_iter().map(|x| colours[x]).collect();
    out.sort_unstable();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_graph, path_graph};
    use crate::gridcore::{Coord, GridObject, PseudogridSpec};
    use crate::seed::rng_from;
    use rand::Rng;

    fn col(c: &[u32]) -> Colouring {
        Colouring::from_colours(c.to_vec())
    }

    #[test]
    fn centres() {
        assert_eq!(centre_of(&col(&[4]), &[0]), Some(0));
        assert_eq!(centre_of(&col(&[1, 1]), &[0, 1]), None);
        assert_eq!(centre_of(&col(&[1, 2, 1]), &[0, 1, 2]), Some(1));
    }

    #[test]
    fn linear_examples() {
        let c4 = cycle_graph(4);
        let v = is_linear(&c4, &col(&[1, 2, 1, 2])).unwrap();
        let path = v.counterexample().unwrap();
        assert!(path.len() >= 3 && c4.is_simple_path(path));
        assert!(centre_of(&col(&[1, 2, 1, 2]), path).is_none());
        let p7 = path_graph(7);
        assert!(is_linear(&p7, &col(&[1, 2, 1, 3, 1, 2, 1])).unwrap().holds());
        assert!(is_linear(&p7, &col(&[0, 1, 2, 3, 4, 5, 6])).unwrap().holds());
        assert!(is_linear_with_limit(&path_graph(5), &col(&[0; 5]), 4).is_err());
    }

    #[test]
    fn centred_examples() {
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(is_centred(&star, &col(&[2, 1, 1, 1])).unwrap().holds());
        let c4 = cycle_graph(4);
        let v = is_centred(&c4, &col(&[1, 2, 1, 2])).unwrap();
        assert!(centre_of(&col(&[1, 2, 1, 2]), v.counterexample().unwrap()).is_none());
        assert!(is_centred(&c4, &col(&[0, 1, 2, 3])).unwrap().holds());
    }

    #[test]
    fn profiles() {
        let pg = Pseudogrid::plain(3, 3).unwrap();
        let phi = Colouring::from_colours((0..9).collect());
        let prof = profile(&pg, &phi);
        for id in 0..pg.grid().object_count() {
            let expect = if id < 9 { 1 } else { 0 };
            assert_eq!(prof.colours_of(id).len(), expect);
        }
        let mono = profile(&pg, &Colouring::new(vec![0; 9], 1).unwrap());
        assert_eq!(mono.objects_of(0).len(), 9);

        let mut spec = PseudogridSpec::new(3, 3).unwrap();
        let e = GridObject::edge(Coord::new(1, 1), Coord::new(2, 1)).unwrap();
        spec.set_subdiv(e, 2).unwrap();
        let pg = Pseudogrid::build(&spec).unwrap();
        let mut colours = vec![0; pg.vertex_count()];
        let part = pg.part(e);
        colours[part[0]] = 3;
        colours[part[1]] = 5;
        let prof = profile(&pg, &Colouring::from_colours(colours));
        assert_eq!(prof.colours_of(pg.grid().object_id(e).unwrap()), &[3, 5]);
    }

    /// Colouring of a plain grid given colours on chosen interior vertices;
    /// everything else gets `filler`.
    fn grid_colouring(pg: &Pseudogrid, spots: &[(u32, u32, u32)], filler: u32, count: u32) -> Colouring {
        let mut colours = vec![filler; pg.vertex_count()];
        for &(i, j, c) in spots {
            colours[pg.part(GridObject::vertex(i, j))[0]] = c;
        }
        Colouring::new(colours, count).unwrap()
    }

    #[test]
    fn deficiency_examples() {
        let pg = Pseudogrid::plain(8, 8).unwrap();
        // Colours 1 and 2 each on three disjoint interior vertices.
        let phi = grid_colouring(
            &pg,
            &[(2, 2, 1), (3, 3, 1), (4, 4, 1), (5, 5, 2), (6, 6, 2), (7, 7, 2)],
            0,
            3,
        );
        let prof = profile(&pg, &phi);
        assert_eq!(deficiency_set(&prof, &[1, 2], 3, 1), None);
        assert_eq!(deficiency_set(&prof, &[1, 2], 4, 1), Some(vec![1]));
        // Colour 3 on two vertices, so it fails at d = 3 on its own.
        let phi = grid_colouring(&pg, &[(2, 2, 1), (3, 3, 1), (4, 4, 1), (5, 5, 3), (6, 6, 3)], 0, 4);
        let prof = profile(&pg, &phi);
        assert_eq!(deficiency_set(&prof, &[1, 3], 3, 1), Some(vec![3]));
    }

    #[test]
    fn deficiency_shared_objects() {
        // Two colours on the same two subdivided edges: together they meet
        // two objects, fewer than 2 * 2.
        let mut spec = PseudogridSpec::new(6, 6).unwrap();
        let e1 = GridObject::edge(Coord::new(2, 3), Coord::new(3, 3)).unwrap();
        let e2 = GridObject::edge(Coord::new(4, 4), Coord::new(4, 5)).unwrap();
        spec.set_subdiv(e1, 2).unwrap();
        spec.set_subdiv(e2, 2).unwrap();
        let pg = Pseudogrid::build(&spec).unwrap();
        let mut colours = vec![0; pg.vertex_count()];
        for e in [e1, e2] {
            colours[pg.part(e)[0]] = 1;
            colours[pg.part(e)[1]] = 2;
        }
        let prof = profile(&pg, &Colouring::from_colours(colours));
        assert_eq!(deficiency_set(&prof, &[1, 2], 2, 1), Some(vec![1, 2]));
        assert_eq!(deficiency_set(&prof, &[1, 2], 1, 1), None);
    }

    #[test]
    fn deficiency_agrees_with_subset_scan() {
        let mut rng = rng_from(3);
        let pg = Pseudogrid::plain(7, 7).unwrap();
        for _ in 0..200 {
            let count = rng.gen_range(2..=6);
            let colours: Vec<u32> = (0..pg.vertex_count()).map(|_| rng.gen_range(0..count)).collect();
            let phi = Colouring::new(colours, count).unwrap();
            let prof = profile(&pg, &phi);
            let used = phi.used();
            let d = rng.gen_range(1..=8);
            let (h, _) = frequency_graph(&prof, &used, 1);
            let brute = (1u32..1 << used.len()).any(|m| {
                let set: Vec<usize> = (0..used.len()).filter(|&x| m >> x & 1 == 1).collect();
                h.is_violator(&set, d)
            });
            let got = deficiency_set(&prof, &used, d, 1);
            assert_eq!(got.is_some(), brute);
            if let Some(a) = got {
                let idx: Vec<usize> = a.iter().map(|c| used.binary_search(c).unwrap()).collect();
                assert!(h.is_violator(&idx, d));
            }
        }
    }
}

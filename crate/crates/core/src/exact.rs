//! Brute-force oracles on graphs with at most 16 vertices.

use thiserror::Error;

use crate::colorings::{is_centred_with_limit, is_linear_with_limit, Colouring};
use crate::graph::Graph;

pub const SMALL_LIMIT: usize = 16;
/// Vertex limit for the chromatic-number searches.
pub const CHROMATIC_LIMIT: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("graph has {n} vertices, above the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("colouring covers {got} vertices, graph has {expected}")]
    LengthMismatch { got: usize, expected: usize },
}

/// Simple graph on at most 16 vertices with bitmask adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallGraph {
    nbr: Vec<u32>,
}

impl SmallGraph {
    pub fn from_graph(g: &Graph) -> Result<Self, ExactError> {
        let n = g.vertex_count();
        if n > SMALL_LIMIT {
            return Err(ExactError::TooLarge { n, limit: SMALL_LIMIT });
        }
        let nbr = (0..n)
            .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
            .collect();
        Ok(SmallGraph { nbr })
    }

    pub fn vertex_count(&self) -> usize {
        self.nbr.len()
    }

    pub fn to_graph(&self) -> Graph {
        let n = self.nbr.len();
        let edges = (0..n).flat_map(|u| (u + 1..n).filter(move |&w| self.nbr[u] >> w & 1 == 1).map(move |w| (u, w)));
        Graph::from_edges(n, edges).expect("bitmask edges are valid")
    }

    fn full(&self) -> u32 {
        if self.nbr.len() == 32 {
            u32::MAX
        } else {
            (1u32 << self.nbr.len()) - 1
        }
    }

    /// Connected component of `mask` containing its lowest vertex.
    fn component(&self, mask: u32) -> u32 {
        let mut reach = mask & mask.wrapping_neg();
        let mut frontier = reach;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.nbr[v] & mask & !reach;
            reach |= new;
            frontier |= new;
        }
        reach
    }

    fn is_connected(&self, mask: u32) -> bool {
        mask != 0 && self.component(mask) == mask
    }
}

fn guard(g: &SmallGraph, limit: usize) -> Result<(), ExactError> {
    let n = g.vertex_count();
    if n > limit {
        return Err(ExactError::TooLarge { n, limit });
    }
    Ok(())
}

/// Treedepth by elimination: `td(G) = 1 + min_v td(G - v)` for connected
/// `G`, the maximum over components otherwise, memoized on vertex subsets.
pub fn treedepth(g: &SmallGraph) -> Result<u32, ExactError> {
    guard(g, SMALL_LIMIT)?;
    let mut memo = vec![u8::MAX; 1usize << g.vertex_count()];
    Ok(td_rec(g, g.full(), &mut memo) as u32)
}

fn td_rec(g: &SmallGraph, mask: u32, memo: &mut [u8]) -> u8 {
    if mask == 0 {
        return 0;
    }
    if memo[mask as usize] != u8::MAX {
        return memo[mask as usize];
    }
    let comp = g.component(mask);
    let value = if comp != mask {
        td_rec(g, comp, memo).max(td_rec(g, mask & !comp, memo))
    } else if mask.count_ones() == 1 {
        1
    } else {
        let mut best = u8::MAX;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            best = best.min(1 + td_rec(g, mask & !(1 << v), memo));
        }
        best
    };
    memo[mask as usize] = value;
    value
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Rule {
    Centred,
    Linear,
}

/// Least number of colours admitting a centred colouring.
pub fn chi_cen(g: &SmallGraph) -> Result<u32, ExactError> {
    chromatic(g, Rule::Centred).map(|(c, _)| c)
}

/// Least number of colours admitting a linear colouring.
pub fn chi_lin(g: &SmallGraph) -> Result<u32, ExactError> {
    chromatic(g, Rule::Linear).map(|(c, _)| c)
}

/// Like [`chi_cen`] but also returns an optimal colouring.
pub fn optimal_centred(g: &SmallGraph) -> Result<(u32, Colouring), ExactError> {
    chromatic(g, Rule::Centred)
}

/// Like [`chi_lin`] but also returns an optimal colouring.
pub fn optimal_linear(g: &SmallGraph) -> Result<(u32, Colouring), ExactError> {
    chromatic(g, Rule::Linear)
}

fn chromatic(g: &SmallGraph, rule: Rule) -> Result<(u32, Colouring), ExactError> {
    guard(g, CHROMATIC_LIMIT)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok((0, Colouring::from_colours(Vec::new())));
    }
    let order = bfs_order(g);
    let graph = g.to_graph();
    for c in 1..=n as u32 {
        let mut search = ColourSearch {
            g,
            rule,
            order: &order,
            colours: vec![u32::MAX; n],
            coloured: 0,
            limit: c,
        };
        if search.assign(0, 0) {
            let phi = Colouring::new(search.colours, c).expect("colours below limit");
            // Independent confirmation through the colorings module.
            let verdict = match rule {
                Rule::Centred => is_centred_with_limit(&graph, &phi, CHROMATIC_LIMIT),
                Rule::Linear => is_linear_with_limit(&graph, &phi, CHROMATIC_LIMIT),
            }
            .expect("within limits");
            assert!(verdict.holds(), "search produced an invalid colouring");
            return Ok((c, phi));
        }
    }
    unreachable!("an injective colouring is both centred and linear")
}

fn bfs_order(g: &SmallGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut seen = 0u32;
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if seen >> s & 1 == 1 {
            continue;
        }
        seen |= 1 << s;
        let mut k = order.len();
        order.push(s);
        while k < order.len() {
            let v = order[k];
            k += 1;
            let mut new = g.nbr[v] & !seen;
            seen |= new;
            while new != 0 {
                order.push(new.trailing_zeros() as usize);
                new &= new - 1;
            }
        }
    }
    order
}

struct ColourSearch<'a> {
    g: &'a SmallGraph,
    rule: Rule,
    order: &'a [usize],
    colours: Vec<u32>,
    coloured: u32,
    limit: u32,
}

impl ColourSearch<'_> {
    /// Colours `order[k..]`; colours up to `used` are in play, plus one new
    /// colour (first-use symmetry breaking).
    fn assign(&mut self, k: usize, used: u32) -> bool {
        if k == self.order.len() {
            return true;
        }
        let v = self.order[k];
        let top = (used + 1).min(self.limit);
        for c in 0..top {
            // Adjacent vertices sharing a colour form an uncentred path.
            let mut clash = false;
            let mut nb = self.g.nbr[v] & self.coloured;
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if self.colours[w] == c {
                    clash = true;
                    break;
                }
            }
            if clash {
                continue;
            }
            self.colours[v] = c;
            self.coloured |= 1 << v;
            let ok = match self.rule {
                Rule::Centred => self.centred_through(v),
                Rule::Linear => self.linear_through(v),
            };
            if ok && self.assign(k + 1, used.max(c + 1)) {
                return true;
            }
            self.coloured &= !(1 << v);
            self.colours[v] = u32::MAX;
        }
        false
    }

    fn has_centre(&self, mask: u32) -> bool {
        let mut counts = [0u8; 32];
        let mut rest = mask;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            counts[self.colours[w] as usize] += 1;
        }
        counts.contains(&1)
    }

    /// Every connected set of coloured vertices through `v` has a centre.
    fn centred_through(&self, v: usize) -> bool {
        let others = self.coloured & !(1 << v);
        // Enumerate submasks of the other coloured vertices.
        let mut sub = others;
        loop {
            let mask = sub | 1 << v;
            if self.g.is_connected(mask) && !self.has_centre(mask) {
                return false;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
        true
    }

    /// Every path of coloured vertices through `v` has a centre.
    fn linear_through(&self, v: usize) -> bool {
        let mut counts = [0u8; 32];
        counts[self.colours[v] as usize] = 1;
        let mut st = ArmState {
            counts,
            unique: 1,
        };
        self.first_arm(v, v, 1 << v, &mut st)
    }

    fn push(&self, w: usize, st: &mut ArmState) {
        let c = self.colours[w] as usize;
        st.counts[c] += 1;
        match st.counts[c] {
            1 => st.unique += 1,
            2 => st.unique -= 1,
            _ => {}
        }
    }

    fn pop(&self, w: usize, st: &mut ArmState) {
        let c = self.colours[w] as usize;
        match st.counts[c] {
            1 => st.unique -= 1,
            2 => st.unique += 1,
            _ => {}
        }
        st.counts[c] -= 1;
    }

    /// Grows the first arm from `tip`; for every first arm, grows the second
    /// arm from `v` as well.
    fn first_arm(&self, v: usize, tip: usize, used: u32, st: &mut ArmState) -> bool {
        if !self.second_arm(v, used, st) {
            return false;
        }
        let mut nb = self.g.nbr[tip] & self.coloured & !used;
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            self.push(w, st);
            let ok = self.first_arm(v, w, used | 1 << w, st);
            self.pop(w, st);
            if !ok {
                return false;
            }
        }
        true
    }

    fn second_arm(&self, tip: usize, used: u32, st: &mut ArmState) -> bool {
        if st.unique == 0 {
            return false;
        }
        let mut nb = self.g.nbr[tip] & self.coloured & !used;
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            self.push(w, st);
            let ok = self.second_arm(w, used | 1 << w, st);
            self.pop(w, st);
            if !ok {
                return false;
            }
        }
        true
    }
}

struct ArmState {
    counts: [u8; 32],
    unique: u32,
}

/// A simple path with no centre under `phi`, or `None` when `phi` is linear.
pub fn find_uncentred_path(g: &SmallGraph, phi: &Colouring) -> Result<Option<Vec<usize>>, ExactError> {
    guard(g, SMALL_LIMIT)?;
    let n = g.vertex_count();
    if phi.len() != n {
        return Err(ExactError::LengthMismatch {
            got: phi.len(),
            expected: n,
        });
    }
    // Vertices with a colour unique among the remaining ones cannot lie on
    // an uncentred path.
    let mut alive = g.full();
    loop {
        let mut drop = 0u32;
        for v in 0..n {
            if alive >> v & 1 == 0 {
                continue;
            }
            let same = (0..n).filter(|&w| alive >> w & 1 == 1 && phi.colour(w) == phi.colour(v)).count();
            if same == 1 {
                drop |= 1 << v;
            }
        }
        if drop == 0 {
            break;
        }
        alive &= !drop;
    }
    let mut path = Vec::with_capacity(n);
    for s in 0..n {
        if alive >> s & 1 == 1 && walk(g, phi, alive, s, 1 << s, &mut path) {
            return Ok(Some(path));
        }
    }
    Ok(None)
}

fn walk(g: &SmallGraph, phi: &Colouring, alive: u32, v: usize, on: u32, path: &mut Vec<usize>) -> bool {
    path.push(v);
    // Recount from scratch: slower, but shares nothing with the other checks.
    let mut counts = std::collections::BTreeMap::new();
    for &w in path.iter() {
        *counts.entry(phi.colour(w)).or_insert(0u32) += 1;
    }
    if counts.values().all(|&c| c >= 2) {
        return true;
    }
    let mut nb = g.nbr[v] & alive & !on;
    while nb != 0 {
        let w = nb.trailing_zeros() as usize;
        nb &= nb - 1;
        if walk(g, phi, alive, w, on | 1 << w, path) {
            return true;
        }
    }
    path.pop();
    false
}

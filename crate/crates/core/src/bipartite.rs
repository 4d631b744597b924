//! Bipartite matchings with Hall-violator certificates.
//!
//! [`polygamous_matching`] asks for a subgraph in which every left vertex has
//! degree exactly `d` and every right vertex degree at most 1. It reduces to
//! an ordinary saturating matching by giving each left vertex `d - 1` twins
//! with the same neighbourhood. When no such subgraph exists, the left
//! vertices reachable by alternating paths from an unsaturated twin, projected
//! back to their originals, form a set `A` with `|N(A)| < d|A|`.

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BipartiteError {
    #[error("edge ({x}, {y}) outside a {left}x{right} bipartite graph")]
    OutOfRange { x: usize, y: usize, left: usize, right: usize },
    #[error("matching degree must be at least 1")]
    ZeroDegree,
}

/// Bipartite graph given by adjacency lists from the left part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    right: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        BipartiteGraph {
            right,
            adj: vec![Vec::new(); left],
        }
    }

    /// Takes adjacency lists as given; duplicates are removed but the order of
    /// first occurrence is kept, since it steers which matching is found.
    pub fn from_adjacency(right: usize, adj: Vec<Vec<usize>>) -> Result<Self, BipartiteError> {
        let left = adj.len();
        let mut seen = vec![usize::MAX; right];
        let mut clean = Vec::with_capacity(left);
        for (x, list) in adj.into_iter().enumerate() {
            let mut out = Vec::with_capacity(list.len());
            for y in list {
                if y >= right {
                    return Err(BipartiteError::OutOfRange { x, y, left, right });
                }
                if seen[y] != x {
                    seen[y] = x;
                    out.push(y);
                }
            }
            clean.push(out);
        }
        Ok(BipartiteGraph { right, adj: clean })
    }

    pub fn add_edge(&mut self, x: usize, y: usize) -> Result<(), BipartiteError> {
        if x >= self.adj.len() || y >= self.right {
            return Err(BipartiteError::OutOfRange {
                x,
                y,
                left: self.adj.len(),
                right: self.right,
            });
        }
        if !self.adj[x].contains(&y) {
            self.adj[x].push(y);
        }
        Ok(())
    }

    pub fn left_count(&self) -> usize {
        self.adj.len()
    }

    pub fn right_count(&self) -> usize {
        self.right
    }

    pub fn neighbours(&self, x: usize) -> &[usize] {
        &self.adj[x]
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.adj[x].contains(&y)
    }

    /// `|N(A)|`.
    pub fn neighbourhood_size(&self, set: &[usize]) -> usize {
        let mut mark = vec![false; self.right];
        let mut count = 0;
        for &x in set {
            for &y in &self.adj[x] {
                if !mark[y] {
                    mark[y] = true;
                    count += 1;
                }
            }
        }
        count
    }

    /// Whether `|N(A)| < d|A|`.
    pub fn is_violator(&self, set: &[usize], d: usize) -> bool {
        !set.is_empty() && self.neighbourhood_size(set) < d * set.len()
    }
}

/// A subgraph with left degrees `d` and right degrees at most 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeMatching {
    pub d: usize,
    pub left_to_right: Vec<Vec<usize>>,
    pub right_to_left: Vec<Option<usize>>,
}

impl DegreeMatching {
    /// Checks the degree conditions and that every edge belongs to `h`.
    pub fn is_valid_for(&self, h: &BipartiteGraph) -> bool {
        if self.left_to_right.len() != h.left_count() || self.right_to_left.len() != h.right_count() {
            return false;
        }
        let mut used = vec![None; h.right_count()];
        for (x, ys) in self.left_to_right.iter().enumerate() {
            if ys.len() != self.d {
                return false;
            }
            for &y in ys {
                if !h.has_edge(x, y) || used[y].is_some() {
                    return false;
                }
                used[y] = Some(x);
            }
        }
        used == self.right_to_left
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingOutcome {
    Matching(DegreeMatching),
    /// Sorted left vertices `A` with `|N(A)| < d|A|`.
    Violator(Vec<usize>),
}

impl MatchingOutcome {
    pub fn matching(self) -> Option<DegreeMatching> {
        match self {
            MatchingOutcome::Matching(m) => Some(m),
            MatchingOutcome::Violator(_) => None,
        }
    }
}

/// Maximum matching of the graph in which left vertex `t` has neighbours
/// `neighbours(t)`, by Hopcroft-Karp. Returns `(left -> right, right -> left)`.
fn hopcroft_karp<'a, F>(left: usize, right: usize, neighbours: F) -> (Vec<Option<usize>>, Vec<Option<usize>>)
where
    F: Fn(usize) -> &'a [usize],
{
    const INF: usize = usize::MAX;
    let mut ml: Vec<Option<usize>> = vec![None; left];
    let mut mr: Vec<Option<usize>> = vec![None; right];
    let mut dist = vec![INF; left];
    loop {
        // BFS layering from free left vertices.
        let mut queue = VecDeque::new();
        for x in 0..left {
            if ml[x].is_none() {
                dist[x] = 0;
                queue.push_back(x);
            } else {
                dist[x] = INF;
            }
        }
        let mut found = false;
        while let Some(x) = queue.pop_front() {
            for &y in neighbours(x) {
                match mr[y] {
                    None => found = true,
                    Some(x2) if dist[x2] == INF => {
                        dist[x2] = dist[x] + 1;
                        queue.push_back(x2);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }
        // Layered augmenting paths, iterative DFS.
        let mut next = vec![0usize; left];
        for root in 0..left {
            if ml[root].is_some() {
                continue;
            }
            let mut stack = vec![root];
            while let Some(&x) = stack.last() {
                let adj = neighbours(x);
                if next[x] == adj.len() {
                    dist[x] = INF;
                    stack.pop();
                    continue;
                }
                let y = adj[next[x]];
                next[x] += 1;
                match mr[y] {
                    None => {
                        // Augment along the stack.
                        let mut y = y;
                        while let Some(x) = stack.pop() {
                            let prev = ml[x];
                            ml[x] = Some(y);
                            mr[y] = Some(x);
                            match prev {
                                Some(p) => y = p,
                                None => break,
                            }
                        }
                        stack.clear();
                    }
                    Some(x2) if dist[x2] == dist[x] + 1 => stack.push(x2),
                    Some(_) => {}
                }
            }
        }
    }
    (ml, mr)
}

/// Matching saturating the left part, or a Hall violator.
pub fn saturating_matching(h: &BipartiteGraph) -> MatchingOutcome {
    polygamous_matching(h, 1).expect("d = 1 is valid")
}

/// Subgraph with every left degree `d` and right degrees at most 1, or a
/// violator `A` with `|N(A)| < d|A|`.
pub fn polygamous_matching(h: &BipartiteGraph, d: usize) -> Result<MatchingOutcome, BipartiteError> {
    if d == 0 {
        return Err(BipartiteError::ZeroDegree);
    }
    let left = h.left_count() * d;
    let (ml, mr) = hopcroft_karp(left, h.right, |t| &h.adj[t / d]);
    let Some(free) = ml.iter().position(|m| m.is_none()) else {
        let mut left_to_right = vec![Vec::with_capacity(d); h.left_count()];
        for (t, y) in ml.iter().enumerate() {
            left_to_right[t / d].push(y.expect("saturated"));
        }
        for ys in &mut left_to_right {
            ys.sort_unstable();
        }
        let right_to_left = mr.iter().map(|m| m.map(|t| t / d)).collect();
        return Ok(MatchingOutcome::Matching(DegreeMatching {
            d,
            left_to_right,
            right_to_left,
        }));
    };
    // Alternating reachability from the free twin.
    let mut seen_left = vec![false; left];
    let mut seen_right = vec![false; h.right];
    seen_left[free] = true;
    let mut queue = VecDeque::from([free]);
    while let Some(t) = queue.pop_front() {
        for &y in &h.adj[t / d] {
            if seen_right[y] {
                continue;
            }
            seen_right[y] = true;
            if let Some(t2) = mr[y] {
                if !seen_left[t2] {
                    seen_left[t2] = true;
                    queue.push_back(t2);
                }
            }
        }
    }
    let mut violator: Vec<usize> = (0..left).filter(|&t| seen_left[t]).map(|t| t / d).collect();
    violator.dedup();
    debug_assert!(h.is_violator(&violator, d));
    Ok(MatchingOutcome::Violator(violator))
}

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use super::pipeline::{Stage, Telemetry};
use super::representatives::RepresentativeColouring;
use super::WitnessError;
use crate::bipartite::{polygamous_matching, BipartiteGraph, MatchingOutcome};
use crate::colorings::Colouring;
use crate::gridcore::{box_radius, box_rect, in_box, interior_rect, tilde_box, GridObject, Pseudogrid};

/// Result of the greedy first round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundOne {
    /// Selected objects and their colours, two per successful colour, in
    /// selection order.
    pub q1: Vec<(GridObject, u32)>,
    pub successes: Vec<u32>,
    pub failures: Vec<u32>,
}

impl RoundOne {
    pub fn objects(&self) -> Vec<GridObject> {
        self.q1.iter().map(|&(mu, _)| mu).collect()
    }
}

fn separated(a: GridObject, b: GridObject, radius: u32) -> bool {
    !in_box(a, b, radius) && !in_box(b, a, radius)
}

/// For each colour in increasing order, takes the first two represented
/// objects (row-major) that are `(2r+1)`-separated from each other and from
/// everything taken so far.
pub fn greedy_round1(rep: &RepresentativeColouring, r: u32) -> RoundOne {
    let radius = 2 * r + 1;
    let mut q1: Vec<(GridObject, u32)> = Vec::new();
    let mut successes = Vec::new();
    let mut failures = Vec::new();
    for &alpha in rep.colours() {
        let free: Vec<GridObject> = rep
            .objects_of(alpha)
            .into_iter()
            .filter(|&mu| q1.iter().all(|&(x, _)| separated(mu, x, radius)))
            .collect();
        let pair = free.iter().enumerate().find_map(|(a, &m1)| {
            free[a + 1..].iter().find(|&&m2| separated(m1, m2, radius)).map(|&m2| (m1, m2))
        });
        match pair {
            Some((m1, m2)) => {
                q1.push((m1, alpha));
                q1.push((m2, alpha));
                successes.push(alpha);
            }
            None => failures.push(alpha),
        }
    }
    RoundOne { q1, successes, failures }
}

/// Colours against first-round objects: `alpha -- mu_i` whenever `mu_i`
/// claimed an object represented by `alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimGraph {
    /// The first-round objects in claiming order.
    pub order: Vec<GridObject>,
    /// Left side: the colours that failed the first round.
    pub colours: Vec<u32>,
    pub graph: BipartiteGraph,
    /// For each edge `(colour index, order index)`, the claimed object
    /// nearest to the claimer.
    pub claims: BTreeMap<(usize, usize), GridObject>,
    /// Per claimer, how many distinct represented colours it claimed.
    pub claimed_colours: Vec<usize>,
}

impl ClaimGraph {
    pub fn claimed(&self, x: usize, i: usize) -> Option<GridObject> {
        self.claims.get(&(x, i)).copied()
    }
}

/// Claiming with a fixed order: each object in turn claims every unmarked
/// object of its `(2r+1)`-box, then marks its `(3r+1)`-box.
pub fn claim_in_order(order: &[GridObject], failed: &[u32], rep: &RepresentativeColouring, r: u32) -> ClaimGraph {
    let g = *rep.grid();
    let mut marked = vec![false; g.object_count()];
    let mut graph = BipartiteGraph::new(failed.len(), order.len());
    let mut claims = BTreeMap::new();
    let mut claimed_colours = Vec::with_capacity(order.len());
    for (i, &mu) in order.iter().enumerate() {
        let mut seen = Vec::new();
        for nu in box_rect(mu, 2 * r + 1).clip(&g).objects(&g) {
            let id = g.object_id(nu).expect("clipped to grid");
            if marked[id] {
                continue;
            }
            let Some(alpha) = rep.get_id(id) else { continue };
            if !seen.contains(&alpha) {
                seen.push(alpha);
            }
            let Some(x) = failed.iter().position(|&c| c == alpha) else { continue };
            let key = (box_radius(nu, mu), nu.row_major_key());
            let slot = claims.entry((x, i)).or_insert(nu);
            if key < (box_radius(*slot, mu), slot.row_major_key()) {
                *slot = nu;
            }
            graph.add_edge(x, i).expect("indices in range");
        }
        claimed_colours.push(seen.len());
        for nu in box_rect(mu, 3 * r + 1).clip(&g).objects(&g) {
            marked[g.object_id(nu).expect("clipped to grid")] = true;
        }
    }
    ClaimGraph { order: order.to_vec(), colours: failed.to_vec(), graph, claims, claimed_colours }
}

/// Claiming in a uniformly random order of `q1`.
pub fn claiming_round2<R: Rng>(
    q1: &[GridObject],
    failed: &[u32],
    rep: &RepresentativeColouring,
    r: u32,
    rng: &mut R,
) -> ClaimGraph {
    let mut order = q1.to_vec();
    order.shuffle(rng);
    claim_in_order(&order, failed, rep, r)
}

/// Members `mu` of `q` whose `r`-box holds more than two members.
pub fn spread_violations(q: &[GridObject], r: u32) -> Vec<GridObject> {
    q.iter()
        .copied()
        .filter(|&mu| q.iter().filter(|&&nu| in_box(nu, mu, r)).count() > 2)
        .collect()
}

/// Checks the two properties of a doubled set on the vertex level: exactly
/// two vertices of every colour of `phi`, and no lifted `r`-box around a
/// member holding more than two members. Members must lie in the
/// `r`-interior.
pub fn audit_doubled_set(pg: &Pseudogrid, phi: &Colouring, s: &[usize], r: u32) -> Result<(), String> {
    let inner = interior_rect(pg.grid(), r).ok_or("empty interior")?;
    let mut counts = BTreeMap::new();
    for &v in s {
        if !inner.contains_object(pg.owner(v)) {
            return Err(format!("vertex {v} is outside the {r}-interior"));
        }
        *counts.entry(phi.colour(v)).or_insert(0usize) += 1;
    }
    for c in phi.used() {
        let n = counts.get(&c).copied().unwrap_or(0);
        if n != 2 {
            return Err(format!("colour {c} appears {n} times"));
        }
    }
    for &v in s {
        let near = tilde_box(pg, v, r);
        let n = s.iter().filter(|w| near.binary_search(w).is_ok()).count();
        if n > 2 {
            return Err(format!("the {r}-box around vertex {v} holds {n} members"));
        }
    }
    Ok(())
}

/// Two vertices of every colour, spread out, with the objects they came
/// from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubledSet {
    pub s: Vec<usize>,
    /// Objects with their representative colour; `q1` of them from the
    /// first round, the rest from the matching.
    pub q: Vec<(GridObject, u32)>,
    pub q1: usize,
    pub failed: usize,
    pub q2: usize,
    /// Claiming orders tried before success (0 when the first round sufficed).
    pub orders_tried: u32,
}

/// Lowest-id vertex of `P_mu` with the given colour.
fn pick_vertex(pg: &Pseudogrid, phi: &Colouring, mu: GridObject, colour: u32) -> Option<usize> {
    pg.part(mu).iter().copied().filter(|&v| phi.colour(v) == colour).min()
}

fn finish(
    pg: &Pseudogrid,
    phi: &Colouring,
    q: Vec<(GridObject, u32)>,
    q1: usize,
    failed: usize,
    orders_tried: u32,
    r: u32,
) -> Result<DoubledSet, String> {
    let objects: Vec<GridObject> = q.iter().map(|&(mu, _)| mu).collect();
    if let Some(mu) = spread_violations(&objects, r).first() {
        return Err(format!("too many chosen objects near {mu}"));
    }
    let mut s = Vec::with_capacity(q.len());
    for &(mu, c) in &q {
        s.push(pick_vertex(pg, phi, mu, c).ok_or_else(|| format!("{mu} carries no vertex of colour {c}"))?);
    }
    audit_doubled_set(pg, phi, &s, r)?;
    let q2 = q.len() - q1;
    Ok(DoubledSet { s, q, q1, failed, q2, orders_tried })
}

/// Builds the doubled set. Colours that fail the greedy round are settled
/// by a 2-fold matching in a random claim graph; a claiming order that
/// admits no such matching, or whose result fails the spread check, is
/// replaced by a fresh one, up to `budget` orders.
pub fn doubled_colour_set<R: Rng>(
    pg: &Pseudogrid,
    phi: &Colouring,
    rep: &RepresentativeColouring,
    r: u32,
    budget: u32,
    rng: &mut R,
) -> Result<DoubledSet, WitnessError> {
    let round = greedy_round1(rep, r);
    let q1 = round.q1.len();
    let failed = round.failures.len();
    if round.failures.is_empty() {
        return finish(pg, phi, round.q1, q1, 0, 0, r).map_err(WitnessError::Precondition);
    }
    let objects = round.objects();
    for attempt in 0..budget {
        let cg = claiming_round2(&objects, &round.failures, rep, r, rng);
        let outcome = polygamous_matching(&cg.graph, 2).map_err(|e| WitnessError::InvalidParams(e.to_string()))?;
        let MatchingOutcome::Matching(m) = outcome else { continue };
        let mut q = round.q1.clone();
        for (x, ys) in m.left_to_right.iter().enumerate() {
            for &i in ys {
                q.push((cg.claimed(x, i).expect("edge has a claim"), cg.colours[x]));
            }
        }
        if let Ok(set) = finish(pg, phi, q, q1, failed, attempt + 1, r) {
            return Ok(set);
        }
    }
    Err(WitnessError::BudgetExhausted {
        stage: Stage::DoubledSet,
        attempts: budget,
        telemetry: Telemetry { q1: q1 as u64, x: failed as u64, ..Telemetry::default() },
    })
}

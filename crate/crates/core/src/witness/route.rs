//! Routing a path through a rectangular window of a pseudogrid so that it
//! collects up to two prescribed vertices.
//!
//! Routes are planned on grid cells. Inside a window with local coordinates
//! `(x, y)`, `1 <= x <= A`, `1 <= y <= B`, a route runs up column 1 from the
//! entry cell, then along a monotone staircase of right/up moves through the
//! targets, then along column `A` to the exit cell. Mirroring the window
//! horizontally or vertically gives the other orientations. A grid vertex
//! target is crossed with one of four local patterns (straight across,
//! straight up, right-then-up, up-then-right); which ones actually pick up the
//! target depends on how its path was wired, so candidates are realised on
//! the pseudogrid and checked.

use std::fmt;

use super::WitnessError;
use crate::gridcore::{interior_rect, Coord, Dir, GridObject, Pseudogrid, Rect, VertexKind};

/// Which branch of the two-target case split a pair of targets falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PickCase {
    /// Neither target lies on the path of a grid vertex.
    EdgesOnly,
    /// The other target is a vertical edge at the vertex target.
    VerticalIncident,
    /// The other target is a horizontal edge at the vertex target.
    HorizontalIncident,
    /// The other target meets the vertex target's column elsewhere.
    SameColumn,
    /// The other target avoids the vertex target's column.
    DifferentColumns,
}

impl fmt::Display for PickCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PickCase::EdgesOnly => "edges-only",
            PickCase::VerticalIncident => "vertical-incident",
            PickCase::HorizontalIncident => "horizontal-incident",
            PickCase::SameColumn => "same-column",
            PickCase::DifferentColumns => "different-columns",
        };
        f.write_str(s)
    }
}

/// Case plus the kinds of the grid vertices involved (`None` for edges).
/// `first` is the vertex target the case is measured from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CaseLabel {
    pub case: PickCase,
    pub first: Option<VertexKind>,
    pub second: Option<VertexKind>,
}

/// Labels the pair `v`, `w` by the owner objects' relative position.
pub fn classify_case(pg: &Pseudogrid, v: usize, w: usize) -> CaseLabel {
    let kind = |mu: GridObject| match mu {
        GridObject::Vertex(c) => Some(pg.kind(c)),
        _ => None,
    };
    let (mut a, mut b) = (pg.owner(v), pg.owner(w));
    if !a.is_vertex() && !b.is_vertex() {
        return CaseLabel { case: PickCase::EdgesOnly, first: None, second: None };
    }
    // Measure from the vertex target, the leftmost one if both are vertices.
    let swap = match (a, b) {
        (GridObject::Vertex(ca), GridObject::Vertex(cb)) => (cb.i, cb.j) < (ca.i, ca.j),
        _ => !a.is_vertex(),
    };
    if swap {
        std::mem::swap(&mut a, &mut b);
    }
    let GridObject::Vertex(c) = a else { unreachable!() };
    let case = if b.is_vertical_edge() && b.contains_coord(c) {
        PickCase::VerticalIncident
    } else if b.is_horizontal_edge() && b.contains_coord(c) {
        PickCase::HorizontalIncident
    } else if b.touches_column(c.i) {
        PickCase::SameColumn
    } else {
        PickCase::DifferentColumns
    };
    CaseLabel { case, first: kind(a), second: kind(b) }
}

/// How a realised path starts or ends inside its first or last cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Endpoint {
    /// Through the port towards this direction.
    Port(Dir),
    /// At this position of the cell's part.
    Position(u32),
    /// Wherever the route leaves (or enters) the cell.
    Free,
}

/// Turns a sequence of adjacent grid cells into pseudogrid vertices:
/// each cell contributes the stretch of its part between entry and exit port,
/// each step the internal vertices of the edge crossed. `None` if a needed
/// port is missing.
pub(crate) fn realize(pg: &Pseudogrid, cells: &[Coord], first: Endpoint, last: Endpoint) -> Option<Vec<usize>> {
    let n = cells.len();
    let mut out = Vec::new();
    for (t, &c) in cells.iter().enumerate() {
        let exit = if t + 1 < n { Some(pg.port(c, c.dir_to(cells[t + 1])?)?) } else { None };
        let entry = if t > 0 { Some(pg.port(c, c.dir_to(cells[t - 1])?)?) } else { None };
        let resolve = |e: Endpoint| -> Option<Option<u32>> {
            match e {
                Endpoint::Port(d) => pg.port(c, d).map(Some),
                Endpoint::Position(p) => Some(Some(p)),
                Endpoint::Free => Some(None),
            }
        };
        let from = match entry {
            Some(p) => p,
            None => resolve(first)?.or(exit).unwrap_or(0),
        };
        let to = match exit {
            Some(p) => p,
            None => resolve(last)?.unwrap_or(from),
        };
        out.extend(pg.span(c, from, to));
        if t + 1 < n {
            out.extend(pg.edge_internals(c, c.dir_to(cells[t + 1])?));
        }
    }
    Some(out)
}

/// Local coordinate system on a window, possibly mirrored.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Frame {
    pub rect: Rect,
    pub flip_x: bool,
    pub flip_y: bool,
}

impl Frame {
    fn width(&self) -> i64 {
        self.rect.width()
    }

    fn height(&self) -> i64 {
        self.rect.height()
    }

    fn to_global(self, x: i64, y: i64) -> Coord {
        let gi = if self.flip_x { self.rect.i1 - (x - 1) } else { self.rect.i0 + (x - 1) };
        let gj = if self.flip_y { self.rect.j1 - (y - 1) } else { self.rect.j0 + (y - 1) };
        Coord::new(gi as u32, gj as u32)
    }

    fn to_local(self, c: Coord) -> (i64, i64) {
        let (gi, gj) = (c.i as i64, c.j as i64);
        let x = if self.flip_x { self.rect.i1 - gi + 1 } else { gi - self.rect.i0 + 1 };
        let y = if self.flip_y { self.rect.j1 - gj + 1 } else { gj - self.rect.j0 + 1 };
        (x, y)
    }
}

type Cell = (i64, i64);

const PATTERNS: [[Cell; 2]; 4] = [
    [(-1, 0), (1, 0)], // across
    [(0, -1), (0, 1)], // up
    [(-1, 0), (0, 1)], // right then up
    [(0, -1), (1, 0)], // up then right
];

/// Cells a target forces into the staircase, in local coordinates.
fn target_segments(frame: &Frame, mu: GridObject) -> Vec<Vec<Cell>> {
    match mu {
        GridObject::Vertex(c) => {
            let (x, y) = frame.to_local(c);
            PATTERNS
                .iter()
                .map(|[a, b]| vec![(x + a.0, y + a.1), (x, y), (x + b.0, y + b.1)])
                .collect()
        }
        _ => {
            let (u, w) = mu.endpoints();
            let (mut a, mut b) = (frame.to_local(u), frame.to_local(w));
            if (b.0 + b.1) < (a.0 + a.1) {
                std::mem::swap(&mut a, &mut b);
            }
            vec![vec![a, b]]
        }
    }
}

/// Appends `seg` to `path`, overlapping or connecting monotonically.
fn join(path: &mut Vec<Cell>, seg: &[Cell], up_first: bool) -> bool {
    let Some(&a) = path.last() else {
        path.extend_from_slice(seg);
        return true;
    };
    for k in (1..=seg.len().min(path.len())).rev() {
        if path[path.len() - k..] == seg[..k] {
            path.extend_from_slice(&seg[k..]);
            return true;
        }
    }
    let b = seg[0];
    if b.0 < a.0 || b.1 < a.1 {
        return false;
    }
    let (mut x, mut y) = a;
    if up_first {
        while y < b.1 {
            y += 1;
            path.push((x, y));
        }
    }
    while x < b.0 {
        x += 1;
        path.push((x, y));
    }
    while y < b.1 {
        y += 1;
        path.push((x, y));
    }
    path.extend_from_slice(&seg[1..]);
    true
}

/// Builds the staircase through `segs` from `(1, y0)` to `(A, y1)` and checks
/// it is monotone and stays off columns 1 and `A` in between.
fn staircase(frame: &Frame, segs: &[&[Cell]], y0: i64, y1: i64, up_first: bool) -> Option<Vec<Cell>> {
    let (aw, bh) = (frame.width(), frame.height());
    let mut path: Vec<Cell> = Vec::new();
    let start = [(1, y0), (2, y0)];
    let end = [(aw - 1, y1), (aw, y1)];
    if !join(&mut path, &start, up_first) {
        return None;
    }
    for seg in segs {
        if !join(&mut path, seg, up_first) {
            return None;
        }
    }
    if !join(&mut path, &end, up_first) {
        return None;
    }
    for w in path.windows(2) {
        let (d0, d1) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        if !((d0 == 1 && d1 == 0) || (d0 == 0 && d1 == 1)) {
            return None;
        }
    }
    let last = path.len() - 1;
    for (t, &(x, y)) in path.iter().enumerate() {
        if y < 1 || y > bh || x < 1 || x > aw {
            return None;
        }
        if (x == 1 && t != 0) || (x == aw && t != last) {
            return None;
        }
    }
    Some(path)
}

fn column(x: i64, from: i64, to: i64) -> Vec<Cell> {
    if from <= to {
        (from..=to).map(|y| (x, y)).collect()
    } else {
        (to..=from).rev().map(|y| (x, y)).collect()
    }
}

fn by_distance(target: i64, max: i64) -> Vec<i64> {
    let mut ys: Vec<i64> = (1..=max).collect();
    ys.sort_by_key(|&y| ((y - target).abs(), y));
    ys
}

/// Calls `accept` on candidate global cell routes through `frame.rect`,
/// from `entry` (column `i0` unless mirrored) to `exit` (the opposite side),
/// collecting every object in `targets`, until `accept` returns true.
/// Both vertical mirror images are tried; `flip_x` fixes which side of the
/// window counts as column 1.
pub(crate) fn staircase_routes(
    rect: Rect,
    flip_x: bool,
    entry: Coord,
    exit: Coord,
    targets: &[GridObject],
    mut accept: impl FnMut(&[Coord]) -> bool,
) -> bool {
    let orders: Vec<Vec<GridObject>> = match targets.len() {
        0 => vec![vec![]],
        1 => vec![targets.to_vec()],
        2 => vec![targets.to_vec(), vec![targets[1], targets[0]]],
        _ => return false,
    };
    for flip_y in [false, true] {
        let frame = Frame { rect, flip_x, flip_y };
        let ye = frame.to_local(entry).1;
        let yx = frame.to_local(exit).1;
        let (aw, bh) = (frame.width(), frame.height());
        for order in &orders {
            let options: Vec<Vec<Vec<Cell>>> = order.iter().map(|&mu| target_segments(&frame, mu)).collect();
            let mut choice = vec![0usize; options.len()];
            loop {
                let segs: Vec<&[Cell]> = choice.iter().zip(&options).map(|(&k, o)| o[k].as_slice()).collect();
                for up_first in [false, true] {
                    for &y0 in &by_distance(ye, bh) {
                        for &y1 in &by_distance(yx, bh) {
                            let Some(stairs) = staircase(&frame, &segs, y0, y1, up_first) else {
                                continue;
                            };
                            let mut local = column(1, ye, y0);
                            local.pop();
                            local.extend(stairs);
                            local.pop();
                            local.extend(column(aw, y1, yx));
                            let cells: Vec<Coord> = local.iter().map(|&(x, y)| frame.to_global(x, y)).collect();
                            if accept(&cells) {
                                return true;
                            }
                        }
                    }
                }
                // Next combination of patterns.
                let mut k = 0;
                while k < choice.len() {
                    choice[k] += 1;
                    if choice[k] < options[k].len() {
                        break;
                    }
                    choice[k] = 0;
                    k += 1;
                }
                if k == choice.len() {
                    break;
                }
            }
        }
    }
    false
}

/// Staircase candidates first, then the depth-first fallback.
pub(crate) fn search_routes(
    rect: Rect,
    flip_x: bool,
    entry: Coord,
    exit: Coord,
    targets: &[GridObject],
    mut accept: impl FnMut(&[Coord]) -> bool,
) -> bool {
    staircase_routes(rect, flip_x, entry, exit, targets, &mut accept) || free_search(rect, entry, exit, targets, &mut accept)
}

/// Steps a depth-first route search may take before giving up.
const FREE_SEARCH_STEPS: usize = 200_000;

/// Fallback for layouts no staircase fits, such as two horizontal edges
/// stacked in the same columns: depth-first search over simple cell routes
/// inside `rect`, always heading for the nearest target not yet collected
/// (then the exit) first.
pub(crate) fn free_search(
    rect: Rect,
    entry: Coord,
    exit: Coord,
    targets: &[GridObject],
    accept: &mut impl FnMut(&[Coord]) -> bool,
) -> bool {
    struct Search<'a, F> {
        rect: Rect,
        exit: Coord,
        targets: &'a [GridObject],
        accept: &'a mut F,
        path: Vec<Coord>,
        steps: usize,
    }

    impl<F: FnMut(&[Coord]) -> bool> Search<'_, F> {
        fn collected(&self, mu: GridObject) -> bool {
            match mu {
                GridObject::Vertex(c) => self.path.contains(&c),
                _ => {
                    let (u, w) = mu.endpoints();
                    self.path.windows(2).any(|p| (p[0] == u && p[1] == w) || (p[0] == w && p[1] == u))
                }
            }
        }

        fn goal(&self) -> Coord {
            let here = *self.path.last().expect("nonempty");
            let mut best: Option<Coord> = None;
            for &mu in self.targets.iter().filter(|&&mu| !self.collected(mu)) {
                let (u, w) = mu.endpoints();
                for c in [u, w] {
                    if best.is_none_or(|b| here.cheb(c) < here.cheb(b)) {
                        best = Some(c);
                    }
                }
            }
            best.unwrap_or(self.exit)
        }

        /// False once an edge target can no longer be crossed (an endpoint
        /// was left some other way) or the exit or a remaining target is cut
        /// off from the current cell.
        fn alive(&self) -> bool {
            let here = *self.path.last().expect("nonempty");
            let mut needed = vec![self.exit];
            for &mu in self.targets.iter().filter(|&&mu| !self.collected(mu)) {
                let (u, w) = mu.endpoints();
                let passed = |c: Coord| self.path.contains(&c) && c != here;
                if mu != GridObject::Vertex(u) && (passed(u) || passed(w)) {
                    return false;
                }
                needed.push(u);
                needed.push(w);
            }
            let mut seen = vec![here];
            let mut stack = vec![here];
            while let Some(c) = stack.pop() {
                for d in [Dir::West, Dir::East, Dir::South, Dir::North] {
                    if let Some(n) = c.step(d) {
                        if self.rect.contains(n) && !self.path.contains(&n) && !seen.contains(&n) {
                            seen.push(n);
                            stack.push(n);
                        }
                    }
                }
            }
            needed.iter().all(|c| seen.contains(c))
        }

        fn go(&mut self) -> bool {
            self.steps += 1;
            if self.steps > FREE_SEARCH_STEPS {
                return false;
            }
            let here = *self.path.last().expect("nonempty");
            if here == self.exit {
                return self.targets.iter().all(|&mu| self.collected(mu)) && (self.accept)(&self.path);
            }
            if !self.alive() {
                return false;
            }
            let goal = self.goal();
            let mut next: Vec<Coord> = [Dir::West, Dir::East, Dir::South, Dir::North]
                .into_iter()
                .filter_map(|d| here.step(d))
                .filter(|&c| self.rect.contains(c) && !self.path.contains(&c))
                .collect();
            let manhattan = |c: Coord| c.i.abs_diff(goal.i) + c.j.abs_diff(goal.j);
            next.sort_by_key(|&c| manhattan(c));
            for c in next {
                self.path.push(c);
                if self.go() {
                    return true;
                }
                self.path.pop();
            }
            false
        }
    }

    if !rect.contains(entry) || !rect.contains(exit) {
        return false;
    }
    let mut search = Search { rect, exit, targets, accept, path: vec![entry], steps: 0 };
    search.go()
}

/// Distinct owner objects of `vertices`, in first-seen order.
pub(crate) fn owners(pg: &Pseudogrid, vertices: &[usize]) -> Vec<GridObject> {
    let mut out = Vec::new();
    for &v in vertices {
        let mu = pg.owner(v);
        if !out.contains(&mu) {
            out.push(mu);
        }
    }
    out
}

/// How a path can reach a boundary vertex `s`: the cell it passes through
/// next, the vertices between `s` and that cell (in order away from `s`),
/// and where in the cell the path begins.
fn terminal_options(pg: &Pseudogrid, s: usize) -> Vec<(Coord, Vec<usize>, Endpoint)> {
    match pg.owner(s) {
        GridObject::Vertex(c) => vec![(c, Vec::new(), Endpoint::Position(pg.position(s) as u32))],
        e => {
            let (u, w) = e.endpoints();
            let mut out = Vec::new();
            for (c, d) in [(u, u.dir_to(w).expect("adjacent")), (w, w.dir_to(u).expect("adjacent"))] {
                // Internals read from c outwards; the lead runs from s back to c.
                let internals = pg.edge_internals(c, d);
                let at = internals.iter().position(|&x| x == s).expect("s on edge");
                let lead: Vec<usize> = internals[..=at].iter().rev().copied().collect();
                out.push((c, lead, Endpoint::Port(d)));
            }
            out
        }
    }
}

/// A path from `s` (column 1) to `t` (last column) of a square pseudogrid
/// that contains `v` and `w`, both in the 1-interior.
pub fn pick_up_two(pg: &Pseudogrid, s: usize, v: usize, w: usize, t: usize) -> Result<Vec<usize>, WitnessError> {
    let g = *pg.grid();
    let a = g.width();
    let pre = |msg: String| Err(WitnessError::Precondition(msg));
    if g.height() != a || a < 5 {
        return pre(format!("need a square grid of side at least 5, got {}x{}", a, g.height()));
    }
    let n = pg.vertex_count();
    if [s, v, w, t].iter().any(|&x| x >= n) {
        return pre("vertex out of range".into());
    }
    let column_only = |x: usize, i: u32| {
        let mu = pg.owner(x);
        let (p, q) = mu.endpoints();
        p.i == i && q.i == i
    };
    if !column_only(s, 1) {
        return pre(format!("s = {s} is not in column 1"));
    }
    if !column_only(t, a) {
        return pre(format!("t = {t} is not in column {a}"));
    }
    let inner = interior_rect(&g, 1).expect("side at least 5");
    for x in [v, w] {
        if !inner.contains_object(pg.owner(x)) {
            return pre(format!("{x} is not in the 1-interior"));
        }
    }
    let rect = Rect { i0: 1, i1: a as i64, j0: 1, j1: a as i64 };
    let targets = owners(pg, &[v, w]);
    let options: Vec<_> = terminal_options(pg, s)
        .into_iter()
        .flat_map(|a| terminal_options(pg, t).into_iter().map(move |b| (a.clone(), b)))
        .collect();
    // Cheap staircases for every choice of terminals before any exhaustive
    // search.
    for thorough in [false, true] {
        for ((sc, slead, sfirst), (tc, tlead, tlast)) in &options {
            let mut found = None;
            let mut accept = |cells: &[Coord]| {
                let Some(body) = realize(pg, cells, *sfirst, *tlast) else {
                    return false;
                };
                let mut path = slead.clone();
                path.extend(body);
                path.extend(tlead.iter().rev());
                if path.contains(&v) && path.contains(&w) && pg.graph().is_simple_path(&path) {
                    found = Some(path);
                    true
                } else {
                    false
                }
            };
            if thorough {
                free_search(rect, *sc, *tc, &targets, &mut accept);
            } else {
                staircase_routes(rect, false, *sc, *tc, &targets, &mut accept);
            }
            if let Some(path) = found {
                return Ok(path);
            }
        }
    }
    Err(WitnessError::Splice(format!("no route from {s} to {t} through {v} and {w}")))
}

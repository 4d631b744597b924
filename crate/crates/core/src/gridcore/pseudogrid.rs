use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::{Coord, Dir, GridError, GridGraph, GridObject, ObjectId};
use crate::graph::Graph;

const NO_PORT: u32 = u32::MAX;

/// How a grid vertex is realized in a pseudogrid.
///
/// For the path kinds the part `P_v` is stored from `p` to `q`:
/// - `Q1`: `p` attaches west and south, `q` east and north;
/// - `Q2`: `p` attaches north and west, `q` south and east;
/// - `Q3`: `p` attaches west and east, `q` south and north.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    Single,
    Q1,
    Q2,
    Q3,
}

impl VertexKind {
    /// Straight kinds let a path traverse the whole part by going straight
    /// through the vertex; a bent kind requires a turn.
    pub fn is_straight(self) -> bool {
        matches!(self, VertexKind::Q1 | VertexKind::Q2)
    }

    pub fn is_bent(self) -> bool {
        self == VertexKind::Q3
    }

    /// Position within `P_v` of the vertex attached in direction `dir`.
    pub fn port_position(self, dir: Dir, len: u32) -> u32 {
        let last = len.saturating_sub(1);
        let at_p = match self {
            VertexKind::Single => return 0,
            VertexKind::Q1 => matches!(dir, Dir::West | Dir::South),
            VertexKind::Q2 => matches!(dir, Dir::North | Dir::West),
            VertexKind::Q3 => dir.is_horizontal(),
        };
        if at_p {
            0
        } else {
            last
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            VertexKind::Single => "single",
            VertexKind::Q1 => "q1",
            VertexKind::Q2 => "q2",
            VertexKind::Q3 => "q3",
        }
    }
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VertexKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "single" => Ok(VertexKind::Single),
            "q1" => Ok(VertexKind::Q1),
            "q2" => Ok(VertexKind::Q2),
            "q3" => Ok(VertexKind::Q3),
            other => Err(format!("unknown vertex kind {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Row,
    Column,
}

impl Axis {
    /// (minus, plus) directions travelled along a line of this axis.
    fn along(self) -> (Dir, Dir) {
        match self {
            Axis::Row => (Dir::West, Dir::East),
            Axis::Column => (Dir::South, Dir::North),
        }
    }

    /// (minus, plus) directions crossing a line of this axis.
    fn across(self) -> (Dir, Dir) {
        match self {
            Axis::Row => (Dir::South, Dir::North),
            Axis::Column => (Dir::West, Dir::East),
        }
    }

    /// Coordinate at position `t` along line `s`.
    fn coord(self, t: u32, s: u32) -> Coord {
        match self {
            Axis::Row => Coord::new(t, s),
            Axis::Column => Coord::new(s, t),
        }
    }

    fn cross_index(self, c: Coord) -> u32 {
        match self {
            Axis::Row => c.j,
            Axis::Column => c.i,
        }
    }

    fn line_count(self, g: &GridGraph) -> u32 {
        match self {
            Axis::Row => g.height(),
            Axis::Column => g.width(),
        }
    }

    fn line_length(self, g: &GridGraph) -> u32 {
        match self {
            Axis::Row => g.width(),
            Axis::Column => g.height(),
        }
    }
}

/// Declarative recipe for a pseudogrid: subdivision counts per grid edge and a
/// kind plus path length per grid vertex. Unset entries are 0 and `Single`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudogridSpec {
    grid: GridGraph,
    subdiv: Vec<u32>,
    kinds: Vec<(VertexKind, u32)>,
}

impl PseudogridSpec {
    pub fn new(a: u32, b: u32) -> Result<Self, GridError> {
        let grid = GridGraph::new(a, b)?;
        Ok(PseudogridSpec {
            grid,
            subdiv: vec![0; grid.object_count()],
            kinds: vec![(VertexKind::Single, 1); grid.vertex_count()],
        })
    }

    pub fn grid(&self) -> &GridGraph {
        &self.grid
    }

    pub fn set_subdiv(&mut self, edge: GridObject, count: u32) -> Result<(), GridError> {
        match (edge, self.grid.object_id(edge)) {
            (GridObject::Edge(..), Some(id)) => {
                self.subdiv[id] = count;
                Ok(())
            }
            _ => Err(GridError::OutsideGrid(edge.to_string())),
        }
    }

    pub fn subdiv(&self, edge: GridObject) -> u32 {
        self.grid.object_id(edge).map_or(0, |id| self.subdiv[id])
    }

    pub fn set_vertex(&mut self, c: Coord, kind: VertexKind, len: u32) -> Result<(), GridError> {
        if !self.grid.contains(c) {
            return Err(GridError::OutsideGrid(c.to_string()));
        }
        let id = self.grid.vertex_id(c);
        self.kinds[id] = (kind, len);
        Ok(())
    }

    pub fn vertex(&self, c: Coord) -> (VertexKind, u32) {
        self.kinds[self.grid.vertex_id(c)]
    }

    pub fn validate(&self) -> Result<(), GridError> {
        for c in self.grid.vertices() {
            let (kind, len) = self.vertex(c);
            if len == 0 {
                return Err(GridError::ZeroPathLength { i: c.i, j: c.j });
            }
            match kind {
                VertexKind::Single if len > 1 => {
                    return Err(GridError::SingleWithPath { i: c.i, j: c.j, len })
                }
                VertexKind::Single => {}
                _ => {
                    let degree = self.grid.degree(c);
                    if degree < 4 {
                        return Err(GridError::KindOnBoundary { i: c.i, j: c.j, degree });
                    }
                }
            }
        }
        Ok(())
    }

    /// Vertex count of the realized pseudogrid.
    pub fn expected_vertex_count(&self) -> usize {
        let subdiv: usize = self.subdiv.iter().map(|&s| s as usize).sum();
        let paths: usize = self.kinds.iter().map(|&(_, len)| len as usize - 1).sum();
        self.grid.vertex_count() + subdiv + paths
    }

    /// Grid edges with a nonzero subdivision count.
    pub fn subdivided_edges(&self) -> impl Iterator<Item = (GridObject, u32)> + '_ {
        self.grid
            .edges()
            .map(|e| (e, self.subdiv(e)))
            .filter(|&(_, s)| s > 0)
    }

    /// Grid vertices that are not plain singletons.
    pub fn path_vertices(&self) -> impl Iterator<Item = (Coord, VertexKind, u32)> + '_ {
        self.grid
            .vertices()
            .map(|c| {
                let (k, l) = self.vertex(c);
                (c, k, l)
            })
            .filter(|&(_, k, _)| k != VertexKind::Single)
    }
}

/// Knobs for [`random_spec`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomSpecParams {
    pub a: u32,
    pub b: u32,
    /// Probability that an edge is subdivided at all.
    pub subdiv_prob: f64,
    pub max_subdiv: u32,
    /// Probability that an inner vertex becomes a Q-kind path.
    pub path_prob: f64,
    pub max_path_len: u32,
}

impl RandomSpecParams {
    pub fn square(k: u32) -> Self {
        RandomSpecParams {
            a: k,
            b: k,
            subdiv_prob: 0.3,
            max_subdiv: 2,
            path_prob: 0.3,
            max_path_len: 3,
        }
    }
}

pub fn random_spec<R: Rng>(params: &RandomSpecParams, rng: &mut R) -> Result<PseudogridSpec, GridError> {
    let mut spec = PseudogridSpec::new(params.a, params.b)?;
    let grid = spec.grid;
    for e in grid.edges() {
        if params.max_subdiv > 0 && rng.gen_bool(params.subdiv_prob) {
            let n = rng.gen_range(1..=params.max_subdiv);
            spec.set_subdiv(e, n)?;
        }
    }
    for c in grid.vertices() {
        if grid.degree(c) == 4 && params.max_path_len >= 2 && rng.gen_bool(params.path_prob) {
            let kind = [VertexKind::Q1, VertexKind::Q2, VertexKind::Q3][rng.gen_range(0..3)];
            let len = rng.gen_range(2..=params.max_path_len);
            spec.set_vertex(c, kind, len)?;
        }
    }
    Ok(spec)
}

/// A realized pseudogrid with its grid-partition.
///
/// Every grid object owns a part: an ordered list of vertex ids. Vertex parts
/// run from `p` to `q`; edge parts hold the internal subdivision vertices,
/// ordered from the first (west or south) endpoint. `origin` maps vertex ids
/// back to the pseudogrid this one was derived from by line deletions.
#[derive(Clone)]
pub struct Pseudogrid {
    grid: GridGraph,
    graph: Graph,
    parts: Vec<Vec<usize>>,
    kinds: Vec<VertexKind>,
    ports: Vec<[u32; 4]>,
    owner: Vec<ObjectId>,
    origin: Vec<usize>,
}

impl fmt::Debug for Pseudogrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Pseudogrid({}x{}, {} vertices, {} edges)",
            self.grid.width(),
            self.grid.height(),
            self.graph.vertex_count(),
            self.graph.edge_count()
        )
    }
}

impl Pseudogrid {
    pub fn build(spec: &PseudogridSpec) -> Result<Self, GridError> {
        spec.validate()?;
        let grid = spec.grid;
        let mut parts = Vec::with_capacity(grid.object_count());
        let mut kinds = Vec::with_capacity(grid.vertex_count());
        let mut ports = Vec::with_capacity(grid.vertex_count());
        let mut next = 0usize;
        for id in 0..grid.object_count() {
            let len = match grid.object(id) {
                GridObject::Vertex(c) => {
                    let (mut kind, len) = spec.vertex(c);
                    if len == 1 {
                        kind = VertexKind::Single;
                    }
                    let mut p = [NO_PORT; 4];
                    for (d, _) in grid.neighbors(c) {
                        p[d.index()] = kind.port_position(d, len);
                    }
                    kinds.push(kind);
                    ports.push(p);
                    len as usize
                }
                GridObject::Edge(..) => spec.subdiv[id] as usize,
            };
            parts.push((next..next + len).collect());
            next += len;
        }
        let origin = (0..next).collect();
        Ok(Self::assemble(grid, parts, kinds, ports, origin))
    }

    /// The plain `a x b` grid as a pseudogrid.
    pub fn plain(a: u32, b: u32) -> Result<Self, GridError> {
        Self::build(&PseudogridSpec::new(a, b)?)
    }

    fn assemble(
        grid: GridGraph,
        parts: Vec<Vec<usize>>,
        kinds: Vec<VertexKind>,
        ports: Vec<[u32; 4]>,
        origin: Vec<usize>,
    ) -> Self {
        let n = origin.len();
        let mut owner = vec![usize::MAX; n];
        let mut edges = Vec::new();
        for (id, part) in parts.iter().enumerate() {
            for &v in part {
                owner[v] = id;
            }
            edges.extend(part.windows(2).map(|w| (w[0], w[1])));
        }
        for id in grid.vertex_count()..grid.object_count() {
            let (u, w) = grid.object(id).endpoints();
            let d = u.dir_to(w).expect("grid edge endpoints are adjacent");
            let pu = ports[grid.vertex_id(u)][d.index()] as usize;
            let pw = ports[grid.vertex_id(w)][d.opposite().index()] as usize;
            let mut chain = vec![parts[grid.vertex_id(u)][pu]];
            chain.extend(&parts[id]);
            chain.push(parts[grid.vertex_id(w)][pw]);
            edges.extend(chain.windows(2).map(|w| (w[0], w[1])));
        }
        let graph = Graph::from_edges(n, edges).expect("structural edges are valid");
        Pseudogrid {
            grid,
            graph,
            parts,
            kinds,
            ports,
            owner,
            origin,
        }
    }

    pub fn grid(&self) -> &GridGraph {
        &self.grid
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// `P_mu`; empty for objects outside the grid.
    pub fn part(&self, mu: GridObject) -> &[usize] {
        self.grid.object_id(mu).map_or(&[], |id| &self.parts[id])
    }

    pub fn part_by_id(&self, id: ObjectId) -> &[usize] {
        &self.parts[id]
    }

    /// The grid object whose part contains `v`.
    pub fn owner(&self, v: usize) -> GridObject {
        self.grid.object(self.owner[v])
    }

    pub fn owner_id(&self, v: usize) -> ObjectId {
        self.owner[v]
    }

    /// Position of `v` within its part.
    pub fn position(&self, v: usize) -> usize {
        let part = &self.parts[self.owner[v]];
        part.iter().position(|&x| x == v).expect("vertex lies in its own part")
    }

    pub fn kind(&self, c: Coord) -> VertexKind {
        self.kinds[self.grid.vertex_id(c)]
    }

    /// Position in `P_c` of the vertex attached towards `dir`, if `c` has a
    /// neighbour that way.
    pub fn port(&self, c: Coord, dir: Dir) -> Option<u32> {
        let p = self.ports[self.grid.vertex_id(c)][dir.index()];
        (p != NO_PORT).then_some(p)
    }

    /// Vertices of `P_c` from position `from` to position `to`, inclusive.
    pub fn span(&self, c: Coord, from: u32, to: u32) -> Vec<usize> {
        let part = self.part(GridObject::Vertex(c));
        if from <= to {
            part[from as usize..=to as usize].to_vec()
        } else {
            part[to as usize..=from as usize].iter().rev().copied().collect()
        }
    }

    /// Internal vertices of the grid edge `c -> c.step(dir)`, in travel order.
    pub fn edge_internals(&self, c: Coord, dir: Dir) -> Vec<usize> {
        let Some(w) = c.step(dir).filter(|w| self.grid.contains(*w)) else {
            return Vec::new();
        };
        let e = GridObject::edge(c, w).expect("adjacent");
        let part = self.part(e);
        if matches!(dir, Dir::East | Dir::North) {
            part.to_vec()
        } else {
            part.iter().rev().copied().collect()
        }
    }

    /// Id of `v` in the pseudogrid this one was derived from by deletions.
    pub fn origin(&self, v: usize) -> usize {
        self.origin[v]
    }

    pub fn origins(&self) -> &[usize] {
        &self.origin
    }

    /// The same pseudogrid with every vertex its own origin.
    pub fn rebased(&self) -> Pseudogrid {
        let mut out = self.clone();
        out.origin = (0..self.vertex_count()).collect();
        out
    }

    /// Vertices of the `r`-interior.
    pub fn interior_vertices(&self, r: u32) -> Vec<usize> {
        let mut out: Vec<usize> = super::interior(&self.grid, r)
            .into_iter()
            .flat_map(|mu| self.part(mu).iter().copied())
            .collect();
        out.sort_unstable();
        out
    }

    /// Audit of the structural invariants; returns a description of the first
    /// violation found.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        for (id, part) in self.parts.iter().enumerate() {
            for &v in part {
                if v >= n || seen[v] {
                    return Err(format!("vertex {v} appears twice or is out of range"));
                }
                seen[v] = true;
                if self.owner[v] != id {
                    return Err(format!("owner map disagrees for vertex {v}"));
                }
            }
            for (x, &u) in part.iter().enumerate() {
                for (y, &w) in part.iter().enumerate().skip(x + 1) {
                    if self.graph.has_edge(u, w) != (y == x + 1) {
                        return Err(format!("part of {} is not an induced path", self.grid.object(id)));
                    }
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(format!("vertex {v} lies in no part"));
        }
        for c in self.grid.vertices() {
            let len = self.part(GridObject::Vertex(c)).len();
            if len == 0 {
                return Err(format!("vertex part of {c} is empty"));
            }
            if self.grid.degree(c) < 4 && len != 1 {
                return Err(format!("boundary vertex {c} has a path of length {len}"));
            }
        }
        let (a, b) = (self.grid.width(), self.grid.height());
        for v in 0..n {
            let deg = self.graph.degree(v);
            if deg > 4 {
                return Err(format!("vertex {v} has degree {deg}"));
            }
            if a >= 2 && b >= 2 && deg < 2 {
                return Err(format!("vertex {v} has degree {deg}"));
            }
        }
        Ok(())
    }
}

/// The row (or column) path with the given index, from its first to its last
/// grid vertex. Vertex parts contribute only the stretch between the ports the
/// line uses, so a bent vertex contributes a single vertex.
pub fn line_path(pg: &Pseudogrid, axis: Axis, index: u32) -> Result<Vec<usize>, GridError> {
    let g = pg.grid();
    let count = axis.line_count(g);
    if index == 0 || index > count {
        return Err(GridError::LineOutOfRange { index, max: count });
    }
    let (minus, plus) = axis.along();
    let len = axis.line_length(g);
    let mut out = Vec::new();
    for t in 1..=len {
        let c = axis.coord(t, index);
        let entry = pg.port(c, minus).or(pg.port(c, plus)).unwrap_or(0);
        let exit = pg.port(c, plus).unwrap_or(entry);
        out.extend(pg.span(c, entry, exit));
        if t < len {
            out.extend(pg.edge_internals(c, plus));
        }
    }
    Ok(out)
}

/// Deletes one row or column and re-derives the grid-partition.
///
/// The along-line edge paths are removed. Where the line crossed a vertex,
/// the stretch of its part between the two crossing ports joins the two
/// crossing edges into one; the rest of the part falls away. A boundary line
/// takes its crossing edges with it, and vertices that drop below degree 4
/// shrink to a single vertex, handing the rest of their path to the adjacent
/// edges. The result is cross-checked against plain edge removal followed by
/// repeated removal of vertices of degree at most 1.
pub fn delete_line(pg: &Pseudogrid, axis: Axis, index: u32) -> Result<Pseudogrid, GridError> {
    let old = pg.grid();
    let count = axis.line_count(old);
    if index == 0 || index > count {
        return Err(GridError::LineOutOfRange { index, max: count });
    }
    let (a, b) = (old.width(), old.height());
    if a < 2 || b < 2 || count < 3 {
        return Err(GridError::TooSmallToDelete { a, b });
    }
    let grid = match axis {
        Axis::Row => GridGraph::new(a, b - 1)?,
        Axis::Column => GridGraph::new(a - 1, b)?,
    };
    let (cross_minus, cross_plus) = axis.across();
    let old_of = |c: Coord| -> Coord {
        let s = axis.cross_index(c);
        let t = match axis {
            Axis::Row => c.i,
            Axis::Column => c.j,
        };
        axis.coord(t, if s < index { s } else { s + 1 })
    };

    // Parts in terms of old vertex ids.
    let mut parts: Vec<Vec<usize>> = Vec::with_capacity(grid.object_count());
    let mut kinds = Vec::with_capacity(grid.vertex_count());
    let mut ports = Vec::with_capacity(grid.vertex_count());
    for id in 0..grid.object_count() {
        match grid.object(id) {
            GridObject::Vertex(c) => {
                let oc = old_of(c);
                let mut p = [NO_PORT; 4];
                for (d, _) in grid.neighbors(c) {
                    p[d.index()] = pg.port(oc, d).expect("surviving neighbours keep their port");
                }
                kinds.push(pg.kind(oc));
                ports.push(p);
                parts.push(pg.part(GridObject::Vertex(oc)).to_vec());
            }
            GridObject::Edge(u, w) => {
                let (ou, ow) = (old_of(u), old_of(w));
                if let Ok(e) = GridObject::edge(ou, ow) {
                    parts.push(pg.part(e).to_vec());
                } else {
                    // The edge jumps over the deleted line.
                    let mid = axis.coord(
                        match axis {
                            Axis::Row => ou.i,
                            Axis::Column => ou.j,
                        },
                        index,
                    );
                    let from = pg.port(mid, cross_minus).expect("inner line vertex");
                    let to = pg.port(mid, cross_plus).expect("inner line vertex");
                    let mut internals = pg.edge_internals(ou, cross_plus);
                    internals.extend(pg.span(mid, from, to));
                    internals.extend(pg.edge_internals(mid, cross_plus));
                    parts.push(internals);
                }
            }
        }
    }

    // Vertices that lost a port become singletons.
    for c in grid.vertices() {
        let vid = grid.vertex_id(c);
        if grid.degree(c) == 4 || parts[vid].len() == 1 {
            continue;
        }
        let present: Vec<(Dir, u32)> = Dir::ALL
            .into_iter()
            .filter_map(|d| {
                let p = ports[vid][d.index()];
                (p != NO_PORT).then_some((d, p))
            })
            .collect();
        let mut positions: Vec<u32> = present.iter().map(|&(_, p)| p).collect();
        positions.sort_unstable();
        let m = positions[(positions.len() - 1) / 2];
        let old_part = parts[vid].clone();
        for &(d, x) in &present {
            if x == m {
                continue;
            }
            let w = c.step(d).expect("present port has a neighbour");
            let eid = grid.object_id(GridObject::edge(c, w).expect("adjacent")).expect("inside");
            // Vertices from just past m up to x, in travel order away from c.
            let moved: Vec<usize> = if x > m {
                old_part[m as usize + 1..=x as usize].to_vec()
            } else {
                old_part[x as usize..m as usize].iter().rev().copied().collect()
            };
            let internals = &mut parts[eid];
            if matches!(d, Dir::East | Dir::North) {
                let mut joined = moved;
                joined.extend(internals.iter());
                *internals = joined;
            } else {
                internals.extend(moved.into_iter().rev());
            }
        }
        parts[vid] = vec![old_part[m as usize]];
        kinds[vid] = VertexKind::Single;
        ports[vid] = [NO_PORT; 4];
        for &(d, _) in &present {
            ports[vid][d.index()] = 0;
        }
    }

    // Renumber surviving vertices in increasing old-id order.
    let survivors: BTreeSet<usize> = parts.iter().flatten().copied().collect();
    let cascade = cascade_survivors(pg, axis, index);
    if survivors != cascade {
        return Err(GridError::DeletionMismatch(format!(
            "structural rebuild keeps {} vertices, cascade keeps {}",
            survivors.len(),
            cascade.len()
        )));
    }
    let mut new_id = vec![usize::MAX; pg.vertex_count()];
    let mut origin = Vec::with_capacity(survivors.len());
    for (k, &v) in survivors.iter().enumerate() {
        new_id[v] = k;
        origin.push(pg.origin(v));
    }
    for part in &mut parts {
        for v in part.iter_mut() {
            *v = new_id[*v];
        }
    }
    let out = Pseudogrid::assemble(grid, parts, kinds, ports, origin);

    // The rebuilt adjacency must be exactly what edge removal left behind.
    let old_ids: Vec<usize> = survivors.iter().copied().collect();
    let removed = along_edges(pg, axis, index);
    for (u, w) in out.graph.edges() {
        let (ou, ow) = (old_ids[u], old_ids[w]);
        if !pg.graph.has_edge(ou, ow) || removed.contains(&(ou.min(ow), ou.max(ow))) {
            return Err(GridError::DeletionMismatch(format!("edge {ou}-{ow} should not exist")));
        }
    }
    let expected = pg
        .graph
        .edges()
        .filter(|&(u, w)| new_id[u] != usize::MAX && new_id[w] != usize::MAX)
        .filter(|e| !removed.contains(e))
        .count();
    if expected != out.graph.edge_count() {
        return Err(GridError::DeletionMismatch(format!(
            "expected {expected} edges, rebuilt {}",
            out.graph.edge_count()
        )));
    }
    Ok(out)
}

/// Edges `(u, w)` with `u < w` of the edge paths running along the line.
fn along_edges(pg: &Pseudogrid, axis: Axis, index: u32) -> BTreeSet<(usize, usize)> {
    let g = pg.grid();
    let (_, plus) = axis.along();
    let mut out = BTreeSet::new();
    for t in 1..axis.line_length(g) {
        let c = axis.coord(t, index);
        let w = c.step(plus).expect("inside");
        let pc = pg.port(c, plus).expect("inside") as usize;
        let mut chain = vec![pg.part(GridObject::Vertex(c))[pc]];
        chain.extend(pg.edge_internals(c, plus));
        let pw = pg.port(w, plus.opposite()).unwrap();
        chain.push(pg.part(GridObject::Vertex(w))[pw as usize]);
        for win in chain.windows(2) {
            out.insert((win[0].min(win[1]), win[0].max(win[1])));
        }
    }
    out
}

/// Vertex set left after removing the line's edges and then repeatedly
/// removing vertices of degree at most 1.
fn cascade_survivors(pg: &Pseudogrid, axis: Axis, index: u32) -> BTreeSet<usize> {
    let removed = along_edges(pg, axis, index);
    let g = pg.graph();
    let n = g.vertex_count();
    let mut degree: Vec<usize> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| !removed.contains(&(v.min(w), v.max(w))))
                .count()
        })
        .collect();
    let mut alive = vec![true; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] && !removed.contains(&(v.min(w), v.max(w))) {
                degree[w] -= 1;
                if degree[w] <= 1 {
                    stack.push(w);
                }
            }
        }
    }
    (0..n).filter(|&v| alive[v]).collect()
}

/// Deletes several lines of one axis, given by their indices in `pg`.
pub fn delete_lines(pg: &Pseudogrid, axis: Axis, indices: &[u32]) -> Result<Pseudogrid, GridError> {
    let mut sorted: Vec<u32> = indices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut cur = pg.clone();
    for &index in sorted.iter().rev() {
        cur = delete_line(&cur, axis, index)?;
    }
    Ok(cur)
}

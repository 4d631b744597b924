use std::fmt;

use super::GridError;

/// Grid vertex `(i, j)`: column `i`, row `j`, both starting at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord {
    pub i: u32,
    pub j: u32,
}

impl Coord {
    pub const fn new(i: u32, j: u32) -> Self {
        Coord { i, j }
    }

    /// Chebyshev distance.
    pub fn cheb(self, other: Coord) -> u32 {
        self.i.abs_diff(other.i).max(self.j.abs_diff(other.j))
    }

    pub fn step(self, dir: Dir) -> Option<Coord> {
        let Coord { i, j } = self;
        match dir {
            Dir::West => i.checked_sub(1).map(|i| Coord { i, j }),
            Dir::East => Some(Coord { i: i + 1, j }),
            Dir::South => j.checked_sub(1).map(|j| Coord { i, j }),
            Dir::North => Some(Coord { i, j: j + 1 }),
        }
    }

    /// Direction from `self` to an adjacent coordinate.
    pub fn dir_to(self, other: Coord) -> Option<Dir> {
        Dir::ALL.into_iter().find(|&d| self.step(d) == Some(other))
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// The four grid directions. West/East change the column, South/North the row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    West = 0,
    East = 1,
    South = 2,
    North = 3,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::West, Dir::East, Dir::South, Dir::North];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn opposite(self) -> Dir {
        match self {
            Dir::West => Dir::East,
            Dir::East => Dir::West,
            Dir::South => Dir::North,
            Dir::North => Dir::South,
        }
    }

    pub fn is_horizontal(self) -> bool {
        matches!(self, Dir::West | Dir::East)
    }
}

/// A vertex or an edge of the underlying grid. Edge endpoints are stored in
/// sorted order, so the first endpoint is the west (or south) one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridObject {
    Vertex(Coord),
    Edge(Coord, Coord),
}

impl GridObject {
    pub fn vertex(i: u32, j: u32) -> Self {
        GridObject::Vertex(Coord::new(i, j))
    }

    pub fn edge(u: Coord, w: Coord) -> Result<Self, GridError> {
        if u.i.abs_diff(w.i) + u.j.abs_diff(w.j) != 1 {
            return Err(GridError::NotAnEdge(u.i, u.j, w.i, w.j));
        }
        Ok(if u < w {
            GridObject::Edge(u, w)
        } else {
            GridObject::Edge(w, u)
        })
    }

    /// Both endpoints; a vertex returns itself twice.
    pub fn endpoints(self) -> (Coord, Coord) {
        match self {
            GridObject::Vertex(c) => (c, c),
            GridObject::Edge(u, w) => (u, w),
        }
    }

    pub fn is_vertex(self) -> bool {
        matches!(self, GridObject::Vertex(_))
    }

    pub fn is_horizontal_edge(self) -> bool {
        matches!(self, GridObject::Edge(u, w) if u.j == w.j)
    }

    pub fn is_vertical_edge(self) -> bool {
        matches!(self, GridObject::Edge(u, w) if u.i == w.i)
    }

    pub fn touches_column(self, i: u32) -> bool {
        let (u, w) = self.endpoints();
        u.i == i || w.i == i
    }

    pub fn contains_coord(self, c: Coord) -> bool {
        let (u, w) = self.endpoints();
        u == c || w == c
    }

    /// Row-major ordering key: row of the first endpoint, then column, then
    /// vertex < horizontal edge < vertical edge.
    pub fn row_major_key(self) -> (u32, u32, u8) {
        match self {
            GridObject::Vertex(c) => (c.j, c.i, 0),
            GridObject::Edge(u, w) if u.j == w.j => (u.j, u.i, 1),
            GridObject::Edge(u, _) => (u.j, u.i, 2),
        }
    }
}

impl fmt::Display for GridObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridObject::Vertex(c) => write!(f, "{c}"),
            GridObject::Edge(u, w) => write!(f, "{u}-{w}"),
        }
    }
}

/// Dense index of a grid object, see [`GridGraph::object_id`].
pub type ObjectId = usize;

/// The `a x b` grid: vertex set `{1..a} x {1..b}`, edges at L1-distance 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridGraph {
    a: u32,
    b: u32,
}

impl GridGraph {
    pub fn new(a: u32, b: u32) -> Result<Self, GridError> {
        if a == 0 || b == 0 {
            return Err(GridError::EmptyGrid { a, b });
        }
        Ok(GridGraph { a, b })
    }

    pub fn square(k: u32) -> Result<Self, GridError> {
        Self::new(k, k)
    }

    pub fn width(&self) -> u32 {
        self.a
    }

    pub fn height(&self) -> u32 {
        self.b
    }

    pub fn vertex_count(&self) -> usize {
        self.a as usize * self.b as usize
    }

    pub fn horizontal_edge_count(&self) -> usize {
        (self.a as usize - 1) * self.b as usize
    }

    pub fn vertical_edge_count(&self) -> usize {
        self.a as usize * (self.b as usize - 1)
    }

    pub fn edge_count(&self) -> usize {
        self.horizontal_edge_count() + self.vertical_edge_count()
    }

    /// `|VE(G)|`.
    pub fn object_count(&self) -> usize {
        self.vertex_count() + self.edge_count()
    }

    pub fn contains(&self, c: Coord) -> bool {
        (1..=self.a).contains(&c.i) && (1..=self.b).contains(&c.j)
    }

    pub fn contains_object(&self, obj: GridObject) -> bool {
        let (u, w) = obj.endpoints();
        self.contains(u) && self.contains(w)
    }

    pub fn vertex_id(&self, c: Coord) -> usize {
        debug_assert!(self.contains(c));
        (c.j as usize - 1) * self.a as usize + (c.i as usize - 1)
    }

    pub fn vertex_at(&self, id: usize) -> Coord {
        let a = self.a as usize;
        Coord::new((id % a) as u32 + 1, (id / a) as u32 + 1)
    }

    /// Dense index: vertices first (row-major), then horizontal edges, then
    /// vertical edges, each by their first endpoint in row-major order.
    pub fn object_id(&self, obj: GridObject) -> Option<ObjectId> {
        if !self.contains_object(obj) {
            return None;
        }
        let (a, b) = (self.a as usize, self.b as usize);
        Some(match obj {
            GridObject::Vertex(c) => self.vertex_id(c),
            GridObject::Edge(u, w) if u.j == w.j => {
                a * b + (u.j as usize - 1) * (a - 1) + (u.i as usize - 1)
            }
            GridObject::Edge(u, _) => {
                a * b + (a - 1) * b + (u.j as usize - 1) * a + (u.i as usize - 1)
            }
        })
    }

    pub fn object(&self, id: ObjectId) -> GridObject {
        let (a, b) = (self.a as usize, self.b as usize);
        let nv = a * b;
        let nh = (a - 1) * b;
        if id < nv {
            GridObject::Vertex(self.vertex_at(id))
        } else if id < nv + nh {
            let k = id - nv;
            let u = Coord::new((k % (a - 1)) as u32 + 1, (k / (a - 1)) as u32 + 1);
            GridObject::Edge(u, Coord::new(u.i + 1, u.j))
        } else {
            let k = id - nv - nh;
            let u = Coord::new((k % a) as u32 + 1, (k / a) as u32 + 1);
            GridObject::Edge(u, Coord::new(u.i, u.j + 1))
        }
    }

    pub fn degree(&self, c: Coord) -> usize {
        self.neighbors(c).count()
    }

    pub fn neighbors(&self, c: Coord) -> impl Iterator<Item = (Dir, Coord)> + '_ {
        Dir::ALL
            .into_iter()
            .filter_map(move |d| c.step(d).filter(|&n| self.contains(n)).map(|n| (d, n)))
    }

    pub fn vertices(&self) -> impl Iterator<Item = Coord> + '_ {
        (0..self.vertex_count()).map(|id| self.vertex_at(id))
    }

    pub fn edges(&self) -> impl Iterator<Item = GridObject> + '_ {
        (self.vertex_count()..self.object_count()).map(|id| self.object(id))
    }

    /// All objects in row-major order (see [`GridObject::row_major_key`]).
    pub fn objects_row_major(&self) -> Vec<GridObject> {
        let mut out: Vec<GridObject> = (0..self.object_count()).map(|id| self.object(id)).collect();
        out.sort_by_key(|o| o.row_major_key());
        out
    }
}

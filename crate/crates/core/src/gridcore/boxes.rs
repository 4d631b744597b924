use super::{Coord, GridGraph, GridObject, Pseudogrid};

/// Upper bound on `|VE(G_r(mu))|` for any object `mu`: `12r^2 + 14r + 3`.
pub fn vol(r: u64) -> u64 {
    12 * r * r + 14 * r + 3
}

/// Inclusive axis-aligned rectangle of grid coordinates. Bounds may lie
/// outside the grid; use [`Rect::clip`] when that matters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rect {
    pub i0: i64,
    pub i1: i64,
    pub j0: i64,
    pub j1: i64,
}

impl Rect {
    pub fn is_empty(&self) -> bool {
        self.i0 > self.i1 || self.j0 > self.j1
    }

    pub fn contains(&self, c: Coord) -> bool {
        let (i, j) = (c.i as i64, c.j as i64);
        self.i0 <= i && i <= self.i1 && self.j0 <= j && j <= self.j1
    }

    /// Both endpoints inside, i.e. the object belongs to the induced subgraph.
    pub fn contains_object(&self, obj: GridObject) -> bool {
        let (u, w) = obj.endpoints();
        self.contains(u) && self.contains(w)
    }

    pub fn clip(&self, g: &GridGraph) -> Rect {
        Rect {
            i0: self.i0.max(1),
            i1: self.i1.min(g.width() as i64),
            j0: self.j0.max(1),
            j1: self.j1.min(g.height() as i64),
        }
    }

    pub fn intersects(&self, other: &Rect) -> bool {
        self.i0.max(other.i0) <= self.i1.min(other.i1)
            && self.j0.max(other.j0) <= self.j1.min(other.j1)
    }

    pub fn width(&self) -> i64 {
        (self.i1 - self.i0 + 1).max(0)
    }

    pub fn height(&self) -> i64 {
        (self.j1 - self.j0 + 1).max(0)
    }

    /// All grid objects with both endpoints in the rectangle (after clipping).
    pub fn objects(&self, g: &GridGraph) -> Vec<GridObject> {
        let r = self.clip(g);
        let mut out = Vec::new();
        if r.is_empty() {
            return out;
        }
        for j in r.j0..=r.j1 {
            for i in r.i0..=r.i1 {
                let c = Coord::new(i as u32, j as u32);
                out.push(GridObject::Vertex(c));
                if i < r.i1 {
                    out.push(GridObject::Edge(c, Coord::new(c.i + 1, c.j)));
                }
                if j < r.j1 {
                    out.push(GridObject::Edge(c, Coord::new(c.i, c.j + 1)));
                }
            }
        }
        out
    }

    /// Number of objects `objects` would return, without allocating.
    pub fn object_count(&self, g: &GridGraph) -> usize {
        let r = self.clip(g);
        if r.is_empty() {
            return 0;
        }
        let (w, h) = (r.width() as usize, r.height() as usize);
        w * h + (w - 1) * h + w * (h - 1)
    }
}

/// Unclipped rectangle `B_r(mu)`: the square of radius `r` around a vertex,
/// or the union of the two squares around an edge's endpoints.
pub fn box_rect(mu: GridObject, r: u32) -> Rect {
    let (u, w) = mu.endpoints();
    let r = r as i64;
    Rect {
        i0: u.i.min(w.i) as i64 - r,
        i1: u.i.max(w.i) as i64 + r,
        j0: u.j.min(w.j) as i64 - r,
        j1: u.j.max(w.j) as i64 + r,
    }
}

/// `nu in VE(G_r(mu))`, for objects of the same grid.
pub fn in_box(nu: GridObject, mu: GridObject, r: u32) -> bool {
    box_rect(mu, r).contains_object(nu)
}

/// Least `r` with `nu in VE(G_r(mu))`.
pub fn box_radius(nu: GridObject, mu: GridObject) -> u32 {
    let rect = box_rect(mu, 0);
    let (u, w) = nu.endpoints();
    let gap = |x: i64, lo: i64, hi: i64| (lo - x).max(x - hi).max(0);
    [u, w]
        .iter()
        .map(|c| gap(c.i as i64, rect.i0, rect.i1).max(gap(c.j as i64, rect.j0, rect.j1)))
        .max()
        .unwrap_or(0) as u32
}

/// `VE(G_r(mu))`, clipped to `g`, in row-major order.
///
/// Returns `None` when `mu` is not an object of `g`.
pub fn box_objects(mu: GridObject, r: u32, g: &GridGraph) -> Option<Vec<GridObject>> {
    if !g.contains_object(mu) {
        return None;
    }
    Some(box_rect(mu, r).objects(g))
}

/// Rectangle of the `r`-interior, or `None` when the interior is empty.
pub fn interior_rect(g: &GridGraph, r: u32) -> Option<Rect> {
    let (a, b) = (g.width() as u64, g.height() as u64);
    if 2 * r as u64 >= a.min(b) {
        return None;
    }
    let r = r as i64;
    Some(Rect {
        i0: 1 + r,
        i1: a as i64 - r,
        j0: 1 + r,
        j1: b as i64 - r,
    })
}

/// Objects of the `r`-interior subgrid.
pub fn interior(g: &GridGraph, r: u32) -> Vec<GridObject> {
    interior_rect(g, r).map(|rect| rect.objects(g)).unwrap_or_default()
}

/// `B~_r(v)`: every pseudogrid vertex whose part lies in the `r`-box of the
/// part containing `v`. Sorted.
pub fn tilde_box(pg: &Pseudogrid, v: usize, r: u32) -> Vec<usize> {
    let mu = pg.owner(v);
    let mut out: Vec<usize> = box_rect(mu, r)
        .objects(pg.grid())
        .into_iter()
        .flat_map(|nu| pg.part(nu).iter().copied())
        .collect();
    out.sort_unstable();
    out
}

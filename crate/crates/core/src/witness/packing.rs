use rand::Rng;

use super::WitnessError;
use crate::gridcore::{box_rect, in_box, Coord, GridGraph, GridObject};

/// True if no member lies in the `(2r+1)`-box of another.
pub fn is_packing(q: &[GridObject], r: u32) -> bool {
    let radius = 2 * r + 1;
    q.iter()
        .enumerate()
        .all(|(a, &x)| q[a + 1..].iter().all(|&y| !in_box(x, y, radius) && !in_box(y, x, radius)))
}

/// The three object types, indexed by the lower-left endpoint.
#[derive(Clone, Copy)]
enum Kind {
    Vertex,
    Horizontal,
    Vertical,
}

impl Kind {
    const ALL: [Kind; 3] = [Kind::Vertex, Kind::Horizontal, Kind::Vertical];

    /// Extent `(di, dj)` of an object of this kind.
    fn extent(self) -> (i64, i64) {
        match self {
            Kind::Vertex => (0, 0),
            Kind::Horizontal => (1, 0),
            Kind::Vertical => (0, 1),
        }
    }

    fn object(self, i: u32, j: u32) -> GridObject {
        let c = Coord::new(i, j);
        match self {
            Kind::Vertex => GridObject::Vertex(c),
            Kind::Horizontal => GridObject::edge(c, Coord::new(i + 1, j)).expect("adjacent"),
            Kind::Vertical => GridObject::edge(c, Coord::new(i, j + 1)).expect("adjacent"),
        }
    }
}

/// Blocked bits for one object type, indexed by lower-left corner.
struct Table {
    kind: Kind,
    width: u32,
    height: u32,
    words: usize,
    blocked: Vec<u64>,
    free: usize,
}

impl Table {
    fn new(kind: Kind, g: &GridGraph) -> Self {
        let (di, dj) = kind.extent();
        let width = g.width() - di as u32;
        let height = g.height() - dj as u32;
        let words = (width as usize).div_ceil(64);
        let mut blocked = vec![0u64; words * height as usize];
        // Bits past the row end count as blocked.
        if !(width as usize).is_multiple_of(64) {
            let tail = !0u64 << (width as usize % 64);
            for row in 0..height as usize {
                blocked[row * words + words - 1] |= tail;
            }
        }
        Table { kind, width, height, words, blocked, free: (width * height) as usize }
    }

    fn slots(&self) -> usize {
        (self.width * self.height) as usize
    }

    fn is_free(&self, slot: usize) -> bool {
        let (i, j) = (slot % self.width as usize, slot / self.width as usize);
        self.blocked[j * self.words + i / 64] >> (i % 64) & 1 == 0
    }

    fn object(&self, slot: usize) -> GridObject {
        let (i, j) = (slot % self.width as usize, slot / self.width as usize);
        self.kind.object(i as u32 + 1, j as u32 + 1)
    }

    /// Blocks lower-left corners in `[i0, i1] x [j0, j1]`, clipped.
    fn block(&mut self, i0: i64, i1: i64, j0: i64, j1: i64) {
        let (i0, i1) = (i0.max(1), i1.min(self.width as i64));
        let (j0, j1) = (j0.max(1), j1.min(self.height as i64));
        if i0 > i1 || j0 > j1 {
            return;
        }
        let (lo, hi) = ((i0 - 1) as usize, (i1 - 1) as usize);
        for j in (j0 - 1) as usize..j1 as usize {
            for w in lo / 64..=hi / 64 {
                let from = if w == lo / 64 { lo % 64 } else { 0 };
                let to = if w == hi / 64 { hi % 64 } else { 63 };
                let mask = (!0u64 >> (63 - to)) & (!0u64 << from);
                let word = &mut self.blocked[j * self.words + w];
                self.free -= (mask & !*word).count_ones() as usize;
                *word |= mask;
            }
        }
    }

    fn free_slots(&self, out: &mut Vec<(usize, usize)>, table: usize) {
        for j in 0..self.height as usize {
            for w in 0..self.words {
                let mut bits = !self.blocked[j * self.words + w];
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    out.push((table, j * self.width as usize + w * 64 + b));
                    bits &= bits - 1;
                }
            }
        }
    }
}

/// A uniformly grown maximal `(2r+1)`-packing: objects are added one at a
/// time, each uniform among those still compatible with every earlier one,
/// until none is left.
pub fn random_maximal_packing<R: Rng>(g: &GridGraph, r: u32, rng: &mut R) -> Vec<GridObject> {
    let big = (2 * r + 1) as i64;
    let mut tables: Vec<Table> = Kind::ALL.iter().map(|&k| Table::new(k, g)).collect();
    let slots: Vec<usize> = tables.iter().map(Table::slots).collect();
    let all: usize = slots.iter().sum();
    let mut out = Vec::new();
    let mut list = Vec::new();
    loop {
        let total: usize = tables.iter().map(|t| t.free).sum();
        if total == 0 {
            return out;
        }
        // Rejection sampling while free slots are plentiful, else pick from
        // an explicit list.
        let (t, slot) = if total * 8 >= all {
            loop {
                let mut n = rng.gen_range(0..all);
                let mut t = 0;
                while n >= slots[t] {
                    n -= slots[t];
                    t += 1;
                }
                if tables[t].is_free(n) {
                    break (t, n);
                }
            }
        } else {
            list.clear();
            for (t, table) in tables.iter().enumerate() {
                table.free_slots(&mut list, t);
            }
            list[rng.gen_range(0..list.len())]
        };
        let mu = tables[t].object(slot);
        out.push(mu);
        let rect = box_rect(mu, 0);
        let (mi0, mi1, mj0, mj1) = (rect.i0, rect.i1, rect.j0, rect.j1);
        for t in &mut tables {
            let (di, dj) = t.kind.extent();
            // Blocked: the new object lies in the other's box, or vice versa.
            t.block(mi0 - big, mi1 + big - di, mj0 - big, mj1 + big - dj);
            t.block(mi1 - big - di, mi0 + big, mj1 - big - dj, mj0 + big);
        }
    }
}

/// The largest number of members of `q` whose `(3r+1)`-box contains one
/// common grid object.
pub fn packing_census(q: &[GridObject], r: u32, g: &GridGraph) -> Result<usize, WitnessError> {
    if !is_packing(q, r) {
        return Err(WitnessError::Precondition("the set is not a (2r+1)-packing".into()));
    }
    if q.iter().any(|&mu| !g.contains_object(mu)) {
        return Err(WitnessError::Precondition("object outside the grid".into()));
    }
    // An object lies in a box exactly when its endpoints do, so the maximum
    // over objects equals the maximum over vertices.
    let (a, b) = (g.width() as usize, g.height() as usize);
    let mut diff = vec![0i64; (a + 2) * (b + 2)];
    let idx = |i: usize, j: usize| j * (a + 2) + i;
    for &mu in q {
        let rect = box_rect(mu, 3 * r + 1).clip(g);
        if rect.is_empty() {
            continue;
        }
        let (i0, i1, j0, j1) = (rect.i0 as usize, rect.i1 as usize, rect.j0 as usize, rect.j1 as usize);
        diff[idx(i0, j0)] += 1;
        diff[idx(i1 + 1, j0)] -= 1;
        diff[idx(i0, j1 + 1)] -= 1;
        diff[idx(i1 + 1, j1 + 1)] += 1;
    }
    let mut best = 0i64;
    for j in 1..=b {
        for i in 1..=a {
            let v = diff[idx(i, j)] + diff[idx(i - 1, j)] + diff[idx(i, j - 1)] - diff[idx(i - 1, j - 1)];
            diff[idx(i, j)] = v;
            best = best.max(v);
        }
    }
    Ok(best as usize)
}

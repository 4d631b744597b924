use std::collections::BTreeSet;

use super::WitnessError;
use crate::colorings::{deficiency_set, profile, Colouring};
use crate::gridcore::{delete_lines, interior, Axis, GridObject, Pseudogrid};

/// Result of [`prune_to_frequent`].
#[derive(Debug, Clone)]
pub struct Pruned {
    pub pg: Pseudogrid,
    /// The input colouring pulled back to the pruned pseudogrid.
    pub phi: Colouring,
    pub rounds: Vec<PruneRound>,
}

/// One deletion round: the deficient colour set and the lines removed, in
/// the coordinates of the pseudogrid the round started from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PruneRound {
    pub colours: Vec<u32>,
    pub rows: Vec<u32>,
    pub columns: Vec<u32>,
}

impl Pruned {
    pub fn k(&self) -> u32 {
        self.pg.grid().width()
    }
}

/// Deletes rows and columns until no colour set `A` meets fewer than `d|A|`
/// objects of the `r`-interior.
///
/// Each round takes a deficient set `A` and removes the rows and columns
/// through interior vertices carrying `A`, the row of every such horizontal
/// edge, the column of every such vertical edge, and the outer `r` rows and
/// columns, padding so both counts agree. All of `A` disappears, so the
/// total loss is at most `(d + 2r)` lines per colour.
pub fn prune_to_frequent(pg: &Pseudogrid, phi: &Colouring, d: u32, r: u32) -> Result<Pruned, WitnessError> {
    let g = pg.grid();
    if g.width() != g.height() {
        return Err(WitnessError::NotSquare {
            a: g.width(),
            b: g.height(),
        });
    }
    phi.check_len(pg.vertex_count())?;
    let k = g.width();
    let colours = phi.used().len();
    if colours as u64 * (d as u64 + 2 * r as u64) > k as u64 {
        return Err(WitnessError::TooManyColours { colours, k, d, r });
    }
    // Origins of the result then refer to vertices of `pg`.
    let mut cur = pg.rebased();
    let mut cur_phi = phi.clone();
    let mut rounds = Vec::new();
    loop {
        let prof = profile(&cur, &cur_phi);
        let used = cur_phi.used();
        let Some(deficient) = deficiency_set(&prof, &used, d as usize, r) else {
            break;
        };
        let g = *cur.grid();
        let k = g.width();
        let mut rows = BTreeSet::new();
        let mut cols = BTreeSet::new();
        for mu in interior(&g, r) {
            let id = g.object_id(mu).expect("interior object");
            if !prof.colours_of(id).iter().any(|c| deficient.binary_search(c).is_ok()) {
                continue;
            }
            match mu {
                GridObject::Vertex(c) => {
                    rows.insert(c.j);
                    cols.insert(c.i);
                }
                GridObject::Edge(u, w) if u.j == w.j => {
                    rows.insert(u.j);
                }
                GridObject::Edge(u, _) => {
                    cols.insert(u.i);
                }
            }
        }
        for t in (1..=r.min(k)).chain(k.saturating_sub(r) + 1..=k) {
            rows.insert(t);
            cols.insert(t);
        }
        pad(&mut rows, cols.len(), k);
        pad(&mut cols, rows.len(), k);
        if rows.len() as u32 + 2 > k {
            return Err(WitnessError::PruningExhausted {
                k: k.saturating_sub(rows.len() as u32),
            });
        }
        let rows: Vec<u32> = rows.into_iter().collect();
        let columns: Vec<u32> = cols.into_iter().collect();
        cur = delete_lines(&cur, Axis::Row, &rows)?;
        cur = delete_lines(&cur, Axis::Column, &columns)?;
        cur_phi = phi.pull_back(cur.origins());
        debug_assert!(cur_phi.colours().iter().all(|c| deficient.binary_search(c).is_err()));
        rounds.push(PruneRound {
            colours: deficient,
            rows,
            columns,
        });
    }
    Ok(Pruned {
        pg: cur,
        phi: cur_phi,
        rounds,
    })
}

/// Adds the smallest missing indices until `set` has `target` elements.
fn pad(set: &mut BTreeSet<u32>, target: usize, k: u32) {
    let mut t = 1;
    while set.len() < target && t <= k {
        set.insert(t);
        t += 1;
    }
}

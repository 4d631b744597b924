use super::disjoint::{make_disjoint, Centre};
use super::route::{owners, realize, search_routes, Endpoint};
use super::WitnessError;
use crate::gridcore::{box_rect, in_box, Coord, Dir, Pseudogrid, Rect};

/// A path through every vertex of a well-spread set, plus how it was built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PickUp {
    pub path: Vec<usize>,
    pub centres: Vec<Centre>,
    /// Grid rows the snake runs along, bottom to top.
    pub rows: Vec<u32>,
}

/// Rows for the snake so that each interval `[lo, hi]` of rows contains
/// exactly one of them; among such choices the one with fewest rows, ties
/// broken lexicographically. `None` if there is none. Without intervals the
/// snake is just row 1.
pub fn snake_rows(intervals: &[(u32, u32)], height: u32) -> Option<Vec<u32>> {
    if intervals.is_empty() {
        return (height >= 1).then(|| vec![1]);
    }
    let h = height as usize;
    let nothing_below = |row: u32| intervals.iter().all(|&(_, hi)| hi >= row);
    let nothing_above = |row: u32| intervals.iter().all(|&(lo, _)| lo <= row);
    // Consecutive rows: no interval holds both, none fits strictly between.
    let follows = |a: u32, b: u32| {
        intervals.iter().all(|&(lo, hi)| !(lo <= a && b <= hi) && !(a < lo && hi < b))
    };
    let mut best: Vec<Option<Vec<u32>>> = vec![None; h + 2];
    for row in (1..=height).rev() {
        let mut pick: Option<Vec<u32>> = None;
        if nothing_above(row) {
            pick = Some(vec![row]);
        } else {
            for next in row + 1..=height {
                if let Some(tail) = &best[next as usize] {
                    if follows(row, next) {
                        let mut cand = vec![row];
                        cand.extend(tail);
                        if pick.as_ref().is_none_or(|p| (cand.len(), &cand) < (p.len(), p)) {
                            pick = Some(cand);
                        }
                    }
                }
            }
        }
        best[row as usize] = pick;
    }
    (1..=height)
        .filter(|&row| nothing_below(row))
        .filter_map(|row| best[row as usize].clone())
        .min_by(|a, b| (a.len(), a).cmp(&(b.len(), b)))
}

struct Window {
    rect: Rect,
    targets: Vec<usize>,
}

/// A simple path through every vertex of `s`, where `s` lies in the
/// `r`-interior and no `r`-box around a member holds more than two members.
///
/// Members are grouped under centres with disjoint boxes; a snake runs along
/// chosen rows (joined through the first and last column) so that it crosses
/// each centre's box along exactly one row, and inside each box the crossing
/// is replaced by a detour through the members.
pub fn pick_up_everything(pg: &Pseudogrid, s: &[usize], r: u32) -> Result<PickUp, WitnessError> {
    if r < 9 {
        return Err(WitnessError::Precondition(format!("need r >= 9, got {r}")));
    }
    let p = (r - 5) / 4;
    let g = *pg.grid();
    let (k, height) = (g.width(), g.height());
    let centres = make_disjoint(pg, s, r, p)?;
    let windows: Vec<Window> = centres
        .iter()
        .map(|c| Window {
            rect: box_rect(c.object, p + 1).clip(&g),
            targets: s.iter().copied().filter(|&v| in_box(pg.owner(v), c.object, p)).collect(),
        })
        .collect();
    let intervals: Vec<(u32, u32)> = windows.iter().map(|w| (w.rect.j0 as u32, w.rect.j1 as u32)).collect();
    let rows = snake_rows(&intervals, height)
        .ok_or_else(|| WitnessError::Splice("no choice of snake rows meets every box once".into()))?;

    let mut cells: Vec<Coord> = Vec::new();
    for (t, &row) in rows.iter().enumerate() {
        let rightwards = t % 2 == 0;
        if t > 0 {
            // Climb the outer column from the previous row.
            let col = if rightwards { 1 } else { k };
            for j in rows[t - 1] + 1..row {
                cells.push(Coord::new(col, j));
            }
        }
        let mut crossing: Vec<&Window> =
            windows.iter().filter(|w| w.rect.j0 <= row as i64 && row as i64 <= w.rect.j1).collect();
        crossing.sort_by_key(|w| if rightwards { w.rect.i0 } else { -w.rect.i1 });
        let columns: Vec<u32> = if rightwards { (1..=k).collect() } else { (1..=k).rev().collect() };
        let mut skip_until: Option<u32> = None;
        for col in columns {
            if let Some(stop) = skip_until {
                if col == stop {
                    skip_until = None;
                }
                continue;
            }
            let entered = crossing.iter().find(|w| {
                let edge = if rightwards { w.rect.i0 } else { w.rect.i1 };
                edge == col as i64
            });
            let Some(w) = entered else {
                cells.push(Coord::new(col, row));
                continue;
            };
            let (entry, exit) = if rightwards {
                (Coord::new(w.rect.i0 as u32, row), Coord::new(w.rect.i1 as u32, row))
            } else {
                (Coord::new(w.rect.i1 as u32, row), Coord::new(w.rect.i0 as u32, row))
            };
            let (back, forward) = if rightwards { (Dir::West, Dir::East) } else { (Dir::East, Dir::West) };
            let targets = owners(pg, &w.targets);
            let mut local = None;
            search_routes(w.rect, !rightwards, entry, exit, &targets, |route| {
                let ok = realize(pg, route, Endpoint::Port(back), Endpoint::Port(forward)).is_some_and(|path| {
                    w.targets.iter().all(|v| path.contains(v)) && pg.graph().is_simple_path(&path)
                });
                if ok {
                    local = Some(route.to_vec());
                }
                ok
            });
            let Some(local) = local else {
                return Err(WitnessError::Splice(format!("box at rows {}..{}", w.rect.j0, w.rect.j1)));
            };
            cells.extend(local);
            if exit.i != col {
                skip_until = Some(exit.i);
            }
        }
    }
    let path = realize(pg, &cells, Endpoint::Free, Endpoint::Free)
        .ok_or_else(|| WitnessError::Splice("snake crosses a missing port".into()))?;
    if !pg.graph().is_simple_path(&path) {
        return Err(WitnessError::Splice("snake is not a simple path".into()));
    }
    if let Some(v) = s.iter().find(|v| !path.contains(v)) {
        return Err(WitnessError::Splice(format!("snake misses vertex {v}")));
    }
    Ok(PickUp { path, centres, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridcore::{random_spec, GridObject, RandomSpecParams};
    use crate::seed::rng_from;
    use rand::Rng;

    #[test]
    fn rows_stab_each_interval_once() {
        assert_eq!(snake_rows(&[], 10), Some(vec![1]));
        assert_eq!(snake_rows(&[(3, 7)], 20), Some(vec![3]));
        let rows = snake_rows(&[(3, 7), (5, 9), (12, 16)], 20).unwrap();
        for &(lo, hi) in &[(3, 7), (5, 9), (12, 16)] {
            assert_eq!(rows.iter().filter(|&&x| lo <= x && x <= hi).count(), 1);
        }
        // Two disjoint intervals inside a third cannot each hold one row.
        assert_eq!(snake_rows(&[(1, 10), (4, 5), (7, 8)], 12), None);
    }

    #[test]
    fn empty_set_gives_bare_snake() {
        let pg = Pseudogrid::plain(30, 30).unwrap();
        let out = pick_up_everything(&pg, &[], 9).unwrap();
        assert_eq!(out.rows, vec![1]);
        assert_eq!(out.path.len(), 30);
    }

    #[test]
    fn single_pair_in_the_middle() {
        let pg = Pseudogrid::plain(40, 40).unwrap();
        let v = pg.part(GridObject::vertex(20, 20))[0];
        let w = pg.part(GridObject::vertex(21, 22))[0];
        let out = pick_up_everything(&pg, &[v, w], 9).unwrap();
        assert_eq!(out.centres.len(), 1);
        assert!(out.path.contains(&v) && out.path.contains(&w));
        assert!(pg.graph().is_simple_path(&out.path));
    }

    #[test]
    fn spread_sets_on_random_pseudogrids() {
        let mut rng = rng_from(21);
        for _ in 0..6 {
            let spec = random_spec(&RandomSpecParams::square(80), &mut rng).unwrap();
            let pg = Pseudogrid::build(&spec).unwrap();
            // Pairs of nearby objects, pairs far from each other.
            let mut s = Vec::new();
            for gx in 0..3u32 {
                for gy in 0..3u32 {
                    let (i, j) = (15 + 25 * gx, 15 + 25 * gy);
                    let a = GridObject::vertex(i, j);
                    let b = GridObject::vertex(i + rng.gen_range(0..4), j + rng.gen_range(0..4));
                    s.push(pg.part(a)[rng.gen_range(0..pg.part(a).len())]);
                    if b != a {
                        s.push(pg.part(b)[0]);
                    }
                }
            }
            let out = pick_up_everything(&pg, &s, 9).unwrap();
            assert!(pg.graph().is_simple_path(&out.path));
            assert!(s.iter().all(|v| out.path.contains(v)));
        }
    }
}

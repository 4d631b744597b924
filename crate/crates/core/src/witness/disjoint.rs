use std::fmt;

use super::WitnessError;
use crate::gridcore::{box_radius, box_rect, in_box, interior_rect, GridObject, Pseudogrid};

/// How a centre came about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoverClass {
    /// The vertex has no other vertex of the set within `r - 1`; it covers
    /// itself.
    S1,
    /// Two vertices within `2p` of each other share one centre.
    S2,
    /// Two vertices within `r - 1` but not `2p` each get their own centre,
    /// chosen so the `(p+1)`-boxes do not meet.
    S3,
}

impl fmt::Display for CoverClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoverClass::S1 => "S1",
            CoverClass::S2 => "S2",
            CoverClass::S3 => "S3",
        })
    }
}

/// A grid object whose `p`-box holds the listed vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Centre {
    pub object: GridObject,
    pub covers: Vec<usize>,
    pub class: CoverClass,
}

/// `v` and `w` are a `q`-pair if either owner lies in the other's `q`-box.
fn is_pair(pg: &Pseudogrid, v: usize, w: usize, q: u32) -> bool {
    let (a, b) = (pg.owner(v), pg.owner(w));
    in_box(a, b, q) || in_box(b, a, q)
}

/// Candidate centres for `mu` at radius `p`, nearest first.
fn near(pg: &Pseudogrid, mu: GridObject, p: u32) -> Vec<GridObject> {
    let mut out: Vec<GridObject> = box_rect(mu, p)
        .clip(pg.grid())
        .objects(pg.grid())
        .into_iter()
        .filter(|&x| in_box(mu, x, p))
        .collect();
    out.sort_by_key(|&x| (box_radius(mu, x), x.row_major_key()));
    out
}

/// Replaces `s` by centres whose `p`-boxes cover it, at most two vertices
/// each, with pairwise disjoint `(p+1)`-boxes.
pub fn make_disjoint(pg: &Pseudogrid, s: &[usize], r: u32, p: u32) -> Result<Vec<Centre>, WitnessError> {
    let pre = |msg: String| Err(WitnessError::Precondition(msg));
    if r < 1 || r - 1 < 4 * p + 4 {
        return pre(format!("need r - 1 >= 4p + 4, got r = {r}, p = {p}"));
    }
    let g = pg.grid();
    let Some(inner) = interior_rect(g, r) else {
        return pre(format!("the {r}-interior is empty"));
    };
    for &v in s {
        if v >= pg.vertex_count() || !inner.contains_object(pg.owner(v)) {
            return pre(format!("vertex {v} is not in the {r}-interior"));
        }
    }
    let mut partner = vec![None; s.len()];
    for a in 0..s.len() {
        for b in a + 1..s.len() {
            if is_pair(pg, s[a], s[b], r - 1) {
                if partner[a].is_some() || partner[b].is_some() {
                    return pre(format!("vertex {} has two close neighbours in the set", s[a]));
                }
                partner[a] = Some(b);
                partner[b] = Some(a);
            }
        }
    }
    let mut centres = Vec::new();
    for a in 0..s.len() {
        let v = s[a];
        let mu_v = pg.owner(v);
        match partner[a] {
            None => centres.push(Centre { object: mu_v, covers: vec![v], class: CoverClass::S1 }),
            Some(b) if b < a => {}
            Some(b) => {
                let w = s[b];
                let mu_w = pg.owner(w);
                if is_pair(pg, v, w, 2 * p) {
                    let shared = box_rect(mu_v, 2 * p)
                        .clip(g)
                        .objects(g)
                        .into_iter()
                        .find(|&x| in_box(mu_v, x, p) && in_box(mu_w, x, p));
                    if let Some(x) = shared {
                        centres.push(Centre { object: x, covers: vec![v, w], class: CoverClass::S2 });
                        continue;
                    }
                }
                let (xs, ys) = (near(pg, mu_v, p), near(pg, mu_w, p));
                let split = xs.iter().find_map(|&x| {
                    let bx = box_rect(x, p + 1);
                    ys.iter().find(|&&y| !bx.intersects(&box_rect(y, p + 1))).map(|&y| (x, y))
                });
                match split {
                    Some((x, y)) => {
                        centres.push(Centre { object: x, covers: vec![v], class: CoverClass::S3 });
                        centres.push(Centre { object: y, covers: vec![w], class: CoverClass::S3 });
                    }
                    None => return pre(format!("no separated centres for {v} and {w}")),
                }
            }
        }
    }
    verify_cover(pg, s, &centres, p).map_err(WitnessError::Precondition)?;
    Ok(centres)
}

/// Checks that every vertex of `s` is covered, that no centre's `p`-box
/// holds more than two of them, and that the clipped `(p+1)`-boxes of
/// distinct centres share no grid vertex.
pub fn verify_cover(pg: &Pseudogrid, s: &[usize], centres: &[Centre], p: u32) -> Result<(), String> {
    let g = pg.grid();
    for &v in s {
        let ok = centres.iter().any(|c| c.covers.contains(&v) && in_box(pg.owner(v), c.object, p));
        if !ok {
            return Err(format!("vertex {v} is not covered"));
        }
    }
    for c in centres {
        let held = s.iter().filter(|&&v| in_box(pg.owner(v), c.object, p)).count();
        if held > 2 {
            return Err(format!("the {p}-box of {} holds {held} vertices", c.object));
        }
    }
    for (a, x) in centres.iter().enumerate() {
        let bx = box_rect(x.object, p + 1).clip(g);
        for y in &centres[a + 1..] {
            if bx.intersects(&box_rect(y.object, p + 1).clip(g)) {
                return Err(format!("the boxes around {} and {} meet", x.object, y.object));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridcore::Coord;

    /// Vertices of every part in the clipped `q`-box of `x`.
    fn lifted(pg: &Pseudogrid, x: GridObject, q: u32) -> Vec<usize> {
        box_rect(x, q)
            .clip(pg.grid())
            .objects(pg.grid())
            .into_iter()
            .flat_map(|nu| pg.part(nu).to_vec())
            .collect()
    }

    fn at(pg: &Pseudogrid, i: u32, j: u32) -> usize {
        pg.part(GridObject::vertex(i, j))[0]
    }

    #[test]
    fn far_apart_vertices_cover_themselves() {
        let pg = Pseudogrid::plain(60, 60).unwrap();
        let s = [at(&pg, 15, 15), at(&pg, 40, 15), at(&pg, 25, 40)];
        let centres = make_disjoint(&pg, &s, 9, 1).unwrap();
        assert_eq!(centres.len(), 3);
        for (c, &v) in centres.iter().zip(&s) {
            assert_eq!(c.class, CoverClass::S1);
            assert_eq!(c.object, pg.owner(v));
        }
    }

    #[test]
    fn close_pair_shares_a_centre() {
        let pg = Pseudogrid::plain(40, 40).unwrap();
        let (v, w) = (at(&pg, 20, 20), at(&pg, 22, 21));
        let centres = make_disjoint(&pg, &[v, w], 9, 1).unwrap();
        assert_eq!(centres.len(), 1);
        assert_eq!(centres[0].class, CoverClass::S2);
        let near = lifted(&pg, centres[0].object, 1);
        assert!(near.contains(&v) && near.contains(&w));
    }

    #[test]
    fn medium_pair_gets_two_separated_centres() {
        let pg = Pseudogrid::plain(40, 40).unwrap();
        let (v, w) = (at(&pg, 18, 20), at(&pg, 22, 20));
        let centres = make_disjoint(&pg, &[v, w], 9, 1).unwrap();
        assert_eq!(centres.len(), 2);
        assert!(centres.iter().all(|c| c.class == CoverClass::S3));
        let a = lifted(&pg, centres[0].object, 2);
        let b = lifted(&pg, centres[1].object, 2);
        assert!(a.iter().all(|x| !b.contains(x)));
    }

    #[test]
    fn edge_centre_when_no_vertex_fits() {
        let mut spec = crate::gridcore::PseudogridSpec::new(40, 40).unwrap();
        let e = GridObject::edge(Coord::new(20, 20), Coord::new(21, 20)).unwrap();
        spec.set_subdiv(e, 1).unwrap();
        let pg = Pseudogrid::build(&spec).unwrap();
        let (v, w) = (pg.part(e)[0], at(&pg, 23, 20));
        let centres = make_disjoint(&pg, &[v, w], 9, 1).unwrap();
        assert_eq!(centres.len(), 1);
        let x = centres[0].object;
        assert!(x.is_horizontal_edge() && x.touches_column(21) && x.touches_column(22));
    }

    #[test]
    fn rejects_crowded_sets() {
        let pg = Pseudogrid::plain(40, 40).unwrap();
        let s = [at(&pg, 20, 20), at(&pg, 21, 20), at(&pg, 22, 20)];
        assert!(make_disjoint(&pg, &s, 9, 1).is_err());
        assert!(make_disjoint(&pg, &[at(&pg, 3, 3)], 9, 1).is_err());
        assert!(make_disjoint(&pg, &[at(&pg, 20, 20)], 9, 2).is_err());
    }
}

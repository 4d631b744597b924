//! Plain-text file formats.
//!
//! All formats are line based, whitespace separated, and ignore blank lines
//! and lines starting with `#`.
//!
//! - Pseudogrid spec: `pseudogrid <a> <b>`, then any number of
//!   `edge <i1> <j1> <i2> <j2> <subdiv>` and
//!   `vertex <i> <j> <single|q1|q2|q3> <pathlen>` lines.
//! - Graph: `graph <n> <m>`, then `e <u> <v>` per edge (0-based ids).
//! - Colouring: `colouring <n> <c>`, then `<vertex> <colour>` lines.
//! - Witness: `witness <k> <c> <r> <d> <seed> <verified:0|1>`, a line with
//!   the path's vertex ids, and
//!   `telemetry <k'> <q1> <x> <q2> <s> <retries>`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::colorings::Colouring;
use crate::graph::Graph;
use crate::gridcore::{Coord, GridObject, PseudogridSpec, VertexKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("missing `{0}` header")]
    MissingHeader(&'static str),
    #[error("expected {expected} entries, found {found}")]
    Count { expected: usize, found: usize },
}

fn err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Line { line, msg: msg.into() }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(k, l)| {
        let l = l.trim();
        (!l.is_empty() && !l.starts_with('#')).then(|| (k + 1, l.split_whitespace().collect()))
    })
}

fn num<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T, FormatError> {
    tok.parse().map_err(|_| err(line, format!("bad number {tok:?}")))
}

fn header<'a>(
    it: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
    name: &'static str,
    fields: usize,
) -> Result<(usize, Vec<&'a str>), FormatError> {
    let (line, toks) = it.next().ok_or(FormatError::MissingHeader(name))?;
    if toks[0] != name {
        return Err(FormatError::MissingHeader(name));
    }
    if toks.len() != fields + 1 {
        return Err(err(line, format!("`{name}` header takes {fields} fields")));
    }
    Ok((line, toks))
}

pub fn write_spec(spec: &PseudogridSpec) -> String {
    let g = spec.grid();
    let mut out = format!("pseudogrid {} {}\n", g.width(), g.height());
    for (e, s) in spec.subdivided_edges() {
        let (u, w) = e.endpoints();
        writeln!(out, "edge {} {} {} {} {}", u.i, u.j, w.i, w.j, s).unwrap();
    }
    for (c, kind, len) in spec.path_vertices() {
        writeln!(out, "vertex {} {} {} {}", c.i, c.j, kind, len).unwrap();
    }
    out
}

pub fn parse_spec(text: &str) -> Result<PseudogridSpec, FormatError> {
    let mut it = records(text);
    let (line, h) = header(&mut it, "pseudogrid", 2)?;
    let mut spec = PseudogridSpec::new(num(line, h[1])?, num(line, h[2])?).map_err(|e| err(line, e.to_string()))?;
    for (line, toks) in it {
        match (toks[0], toks.len()) {
            ("edge", 6) => {
                let u = Coord::new(num(line, toks[1])?, num(line, toks[2])?);
                let w = Coord::new(num(line, toks[3])?, num(line, toks[4])?);
                let e = GridObject::edge(u, w).map_err(|e| err(line, e.to_string()))?;
                spec.set_subdiv(e, num(line, toks[5])?).map_err(|e| err(line, e.to_string()))?;
            }
            ("vertex", 5) => {
                let c = Coord::new(num(line, toks[1])?, num(line, toks[2])?);
                let kind: VertexKind = toks[3].parse().map_err(|e: String| err(line, e))?;
                spec.set_vertex(c, kind, num(line, toks[4])?).map_err(|e| err(line, e.to_string()))?;
            }
            _ => return Err(err(line, format!("unexpected record {:?}", toks.join(" ")))),
        }
    }
    Ok(spec)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("graph {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut it = records(text);
    let (line, h) = header(&mut it, "graph", 2)?;
    let n: usize = num(line, h[1])?;
    let m: usize = num(line, h[2])?;
    let mut edges = Vec::with_capacity(m);
    for (line, toks) in it {
        if toks.len() != 3 || toks[0] != "e" {
            return Err(err(line, "expected `e <u> <v>`"));
        }
        edges.push((num(line, toks[1])?, num(line, toks[2])?));
    }
    if edges.len() != m {
        return Err(FormatError::Count {
            expected: m,
            found: edges.len(),
        });
    }
    let g = Graph::from_edges(n, edges).map_err(|e| err(0, e.to_string()))?;
    if g.edge_count() != m {
        return Err(err(0, "duplicate edges"));
    }
    Ok(g)
}

pub fn write_colouring(phi: &Colouring) -> String {
    let mut out = format!("colouring {} {}\n", phi.len(), phi.count());
    for (v, c) in phi.colours().iter().enumerate() {
        writeln!(out, "{v} {c}").unwrap();
    }
    out
}

pub fn parse_colouring(text: &str) -> Result<Colouring, FormatError> {
    let mut it = records(text);
    let (line, h) = header(&mut it, "colouring", 2)?;
    let n: usize = num(line, h[1])?;
    let c: u32 = num(line, h[2])?;
    let mut colours = vec![None; n];
    for (line, toks) in it {
        if toks.len() != 2 {
            return Err(err(line, "expected `<vertex> <colour>`"));
        }
        let v: usize = num(line, toks[0])?;
        if v >= n {
            return Err(err(line, format!("vertex {v} out of range")));
        }
        if colours[v].replace(num(line, toks[1])?).is_some() {
            return Err(err(line, format!("vertex {v} coloured twice")));
        }
    }
    let found = colours.iter().filter(|c| c.is_some()).count();
    if found != n {
        return Err(FormatError::Count { expected: n, found });
    }
    Colouring::new(colours.into_iter().map(|c| c.unwrap()).collect(), c).map_err(|e| err(0, e.to_string()))
}

/// Contents of a witness file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessFile {
    pub k: u32,
    pub colours: u32,
    pub r: u32,
    pub d: u32,
    pub seed: u64,
    pub verified: bool,
    pub path: Vec<usize>,
    /// `k'`, `|Q1|`, `|X|`, `|Q2|`, `|S|`, retries.
    pub telemetry: [u64; 6],
}

pub fn write_witness(w: &WitnessFile) -> String {
    let mut out = format!(
        "witness {} {} {} {} {} {}\n",
        w.k, w.colours, w.r, w.d, w.seed, w.verified as u8
    );
    let path: Vec<String> = w.path.iter().map(|v| v.to_string()).collect();
    out.push_str(&path.join(" "));
    out.push('\n');
    let t: Vec<String> = w.telemetry.iter().map(|v| v.to_string()).collect();
    writeln!(out, "telemetry {}", t.join(" ")).unwrap();
    out
}

pub fn parse_witness(text: &str) -> Result<WitnessFile, FormatError> {
    let mut it = records(text);
    let (line, h) = header(&mut it, "witness", 6)?;
    let verified = match h[6] {
        "0" => false,
        "1" => true,
        other => return Err(err(line, format!("verified flag must be 0 or 1, got {other:?}"))),
    };
    let (line, toks) = it.next().ok_or_else(|| err(line + 1, "missing path line"))?;
    if toks[0] == "telemetry" {
        return Err(err(line, "missing path line"));
    }
    let path = toks.iter().map(|t| num(line, t)).collect::<Result<Vec<usize>, _>>()?;
    let (line, t) = header(&mut it, "telemetry", 6)?;
    let mut telemetry = [0u64; 6];
    for (slot, tok) in telemetry.iter_mut().zip(&t[1..]) {
        *slot = num(line, tok)?;
    }
    if let Some((line, _)) = it.next() {
        return Err(err(line, "trailing content"));
    }
    Ok(WitnessFile {
        k: num(line, h[1])?,
        colours: num(line, h[2])?,
        r: num(line, h[3])?,
        d: num(line, h[4])?,
        seed: num(line, h[5])?,
        verified,
        path,
        telemetry,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridcore::{random_spec, RandomSpecParams};
    use crate::seed::rng_from;

    #[test]
    fn spec_round_trip() {
        let mut rng = rng_from(1);
        for k in 3..8 {
            let spec = random_spec(&RandomSpecParams::square(k), &mut rng).unwrap();
            assert_eq!(parse_spec(&write_spec(&spec)).unwrap(), spec);
        }
        assert!(parse_spec("pseudogrid 3 3\nedge 1 1 2 2 1\n").is_err());
        assert!(parse_spec("grid 3 3\n").is_err());
        let spec = parse_spec("# demo\npseudogrid 4 4\n\nvertex 2 2 q3 2\n").unwrap();
        assert_eq!(spec.vertex(Coord::new(2, 2)), (VertexKind::Q3, 2));
    }

    #[test]
    fn graph_and_colouring_round_trip() {
        let g = crate::graph::cycle_graph(5);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        assert!(parse_graph("graph 3 2\ne 0 1\n").is_err());
        let phi = Colouring::new(vec![0, 2, 1, 2], 3).unwrap();
        assert_eq!(parse_colouring(&write_colouring(&phi)).unwrap(), phi);
        assert!(parse_colouring("colouring 2 2\n0 1\n").is_err());
        assert!(parse_colouring("colouring 1 2\n0 5\n").is_err());
    }

    #[test]
    fn witness_round_trip() {
        let w = WitnessFile {
            k: 64,
            colours: 2,
            r: 9,
            d: 3,
            seed: 42,
            verified: true,
            path: vec![5, 3, 8],
            telemetry: [40, 4, 0, 0, 4, 1],
        };
        let text = write_witness(&w);
        assert_eq!(text, "witness 64 2 9 3 42 1\n5 3 8\ntelemetry 40 4 0 0 4 1\n");
        assert_eq!(parse_witness(&text).unwrap(), w);
        assert!(parse_witness("witness 64 2 9 3 42 2\n1\ntelemetry 0 0 0 0 0 0\n").is_err());
    }
}

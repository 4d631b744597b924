//! Uncentred-path witnesses for vertex colourings of pseudogrids.
//!
//! A colouring is *linear* when every simple path has a vertex whose colour
//! occurs exactly once on it. This crate builds, for colourings of `k x k`
//! pseudogrids that use few colours, an explicit simple path on which every
//! colour repeats, and checks it with an independent centre test. Around that
//! pipeline sit the pieces it is made of:
//!
//! - [`gridcore`]: grids, pseudogrids, grid-partitions, boxes and row/column deletion.
//! - [`colorings`]: colourings, centre checks, colour profiles and Hall deficiencies.
//! - [`bipartite`]: saturating and d-fold matchings with violator certificates.
//! - [`witness`]: the construction itself, stage by stage.
//! - [`exact`]: brute-force treedepth, centred and linear chromatic numbers.
//! - [`formats`]: the plain-text file formats shared with the CLI.

pub mod bipartite;
pub mod colorings;
pub mod exact;
pub mod formats;
pub mod graph;
pub mod gridcore;
pub mod seed;
pub mod witness;

pub use colorings::Colouring;
pub use graph::Graph;
pub use gridcore::{Coord, GridGraph, GridObject, Pseudogrid, PseudogridSpec, VertexKind};

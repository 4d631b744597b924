//! Grids, pseudogrids and the geometry built on top of them.
//!
//! Coordinates follow the usual convention: vertex `(i, j)` sits in column
//! `i` and row `j`, both 1-based. A pseudogrid is stored structurally: every
//! grid object owns an ordered path of pseudogrid vertices, and every grid
//! vertex records which vertex of its path attaches in each of the four
//! directions. The adjacency is derived from that structure.

mod boxes;
mod grid;
mod pseudogrid;

pub use boxes::{box_objects, box_radius, box_rect, in_box, interior, interior_rect, tilde_box, vol, Rect};
pub use grid::{Coord, Dir, GridGraph, GridObject, ObjectId};
pub use pseudogrid::{
    delete_line, delete_lines, line_path, random_spec, Axis, Pseudogrid, PseudogridSpec,
    RandomSpecParams, VertexKind,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error("grid dimensions must be positive, got {a}x{b}")]
    EmptyGrid { a: u32, b: u32 },
    #[error("({0}, {1}) and ({2}, {3}) are not adjacent grid vertices")]
    NotAnEdge(u32, u32, u32, u32),
    #[error("object {0} is not part of the grid")]
    OutsideGrid(String),
    #[error("vertex ({i}, {j}) has degree {degree}; only degree-4 vertices may be replaced by paths")]
    KindOnBoundary { i: u32, j: u32, degree: usize },
    #[error("vertex ({i}, {j}) is single but asks for a path of length {len}")]
    SingleWithPath { i: u32, j: u32, len: u32 },
    #[error("path length must be positive at ({i}, {j})")]
    ZeroPathLength { i: u32, j: u32 },
    #[error("line index {index} out of range 1..={max}")]
    LineOutOfRange { index: u32, max: u32 },
    #[error("deleting a line from a {a}x{b} pseudogrid would not leave a pseudogrid")]
    TooSmallToDelete { a: u32, b: u32 },
    #[error("deletion cascade disagrees with the rebuilt grid-partition ({0})")]
    DeletionMismatch(String),
}

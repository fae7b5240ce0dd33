//! The mutually inverse maps between triangulations of `C(n+2, 3)` and persistent
//! graphs on `n` vertices.
//!
//! `gamma` keeps the inner 1-skeleton of a triangulation. `xi` sends each edge
//! `{v, w}` of a persistent graph to the simplex `{ell, v, w, arr}`, where `ell` is the
//! nearest neighbor of `w` below `v` and `arr` the nearest neighbor of `v` above `w`
//! in the hat graph. Both lookups are single bit scans on the graph's adjacency.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Edge, Vertex, VertexOrderedGraph};
use crate::triangulation::{Simplex3, Triangulation};

/// The graph on `[n]` of all inner pairs covered by a simplex of `t`.
///
/// `t` is expected to be a valid triangulation; this is not re-checked.
pub fn gamma(t: &Triangulation) -> VertexOrderedGraph {
    let n = t.n();
    let mut g = VertexOrderedGraph::new(n).expect("triangulation n is in range");
    for s in t.iter() {
        for (u, v) in s.edges() {
            if u >= 1 && v <= n {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// `max { i : i < v, {i, w} ∈ Ĝ }`; falls back to the universal vertex `0`.
#[inline]
pub fn ell(g: &VertexOrderedGraph, e: Edge) -> Vertex {
    g.largest_neighbor_below(e.hi(), e.lo()).unwrap_or(0)
}

/// `min { i : i > w, {i, v} ∈ Ĝ }`; falls back to the universal vertex `n + 1`.
#[inline]
pub fn arr(g: &VertexOrderedGraph, e: Edge) -> Vertex {
    g.smallest_neighbor_above(e.lo(), e.hi()).unwrap_or(g.n() + 1)
}

/// The simplex `{ell(e), v, w, arr(e)}` assigned to the edge `e = {v, w}`.
pub fn xi_edge(g: &VertexOrderedGraph, e: Edge) -> Simplex3 {
    Simplex3::new([ell(g, e), e.lo(), e.hi(), arr(g, e)]).expect("ell < v < w < arr")
}

/// The triangulation of `C(n+2, 3)` corresponding to a persistent graph.
pub fn xi(g: &VertexOrderedGraph) -> Result<Triangulation> {
    g.check_persistent().map_err(Error::NotPersistent)?;
    Ok(xi_unchecked(g))
}

pub(crate) fn xi_unchecked(g: &VertexOrderedGraph) -> Triangulation {
    let simplices: BTreeSet<Simplex3> = g.edges().into_iter().map(|e| xi_edge(g, e)).collect();
    Triangulation::from_set_unchecked(g.n(), simplices)
}

/// Inverse of `xi_edge`: the middle pair `{b, c}` of `a < b < c < d`.
pub fn simplex_to_edge(s: &Simplex3) -> Edge {
    let [_, b, c, _] = s.vertices();
    Edge::new(b, c).expect("simplex labels are distinct")
}

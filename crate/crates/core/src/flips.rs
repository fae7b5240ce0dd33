//! Bistellar flips and the first Stasheff-Tamari order.
//!
//! On five vertices `v1 < ... < v5`, the lower pattern
//! `{v1,v2,v4,v5}, {v1,v2,v3,v4}, {v2,v3,v4,v5}` and the upper pattern
//! `{v1,v2,v3,v5}, {v1,v3,v4,v5}` triangulate the same cyclic polytope `C(5,3)`.
//! Swapping lower for upper is an up-flip. On the graph side an up-flip deletes the
//! edge `{v2, v4}`, so the order is reverse inclusion of persistent graphs and the
//! Hasse diagram is made of single-edge deletions.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use rayon::prelude::*;

use crate::bijection::{arr, ell};
use crate::enumerate::{enumerate, Collector};
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeMask, Vertex, VertexOrderedGraph};
use crate::triangulation::{Simplex3, Triangulation};

/// Default largest `n` for [`hasse_diagram`].
pub const DEFAULT_POSET_CAP: usize = 8;

/// Five strictly increasing vertices of `C(n+2, 3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlipWitness([Vertex; 5]);

impl FlipWitness {
    pub fn new(v: [Vertex; 5]) -> Option<Self> {
        v.windows(2).all(|w| w[0] < w[1]).then_some(FlipWitness(v))
    }

    pub fn vertices(&self) -> [Vertex; 5] {
        self.0
    }

    /// The graph edge `{v2, v4}` that an up-flip on this witness deletes.
    pub fn flipped_edge(&self) -> Edge {
        Edge::new(self.0[1], self.0[3]).unwrap()
    }
}

impl fmt::Display for FlipWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e] = self.0;
        write!(f, "{a} {b} {c} {d} {e}")
    }
}

fn simplex(v: [Vertex; 4]) -> Simplex3 {
    Simplex3::new(v).expect("witness vertices are distinct")
}

/// The three simplices removed by an up-flip.
pub fn lower_pattern(w: &FlipWitness) -> [Simplex3; 3] {
    let [v1, v2, v3, v4, v5] = w.0;
    [simplex([v1, v2, v4, v5]), simplex([v1, v2, v3, v4]), simplex([v2, v3, v4, v5])]
}

/// The two simplices inserted by an up-flip.
pub fn upper_pattern(w: &FlipWitness) -> [Simplex3; 2] {
    let [v1, v2, v3, v4, v5] = w.0;
    [simplex([v1, v2, v3, v5]), simplex([v1, v3, v4, v5])]
}

fn replace(t: &Triangulation, remove: &[Simplex3], insert: &[Simplex3]) -> Result<Triangulation> {
    if let Some(missing) = remove.iter().find(|s| !t.contains(s)) {
        return Err(Error::FlipPrecondition(*missing));
    }
    let mut set = t.simplices().clone();
    for s in remove {
        set.remove(s);
    }
    set.extend(insert.iter().copied());
    Ok(Triangulation::from_set_unchecked(t.n(), set))
}

/// Replaces the lower pattern of `w` by its upper pattern.
pub fn up_flip(t: &Triangulation, w: &FlipWitness) -> Result<Triangulation> {
    replace(t, &lower_pattern(w), &upper_pattern(w))
}

/// Replaces the upper pattern of `w` by its lower pattern.
pub fn down_flip(t: &Triangulation, w: &FlipWitness) -> Result<Triangulation> {
    replace(t, &upper_pattern(w), &lower_pattern(w))
}

/// Every witness whose lower pattern lies in `t`, in lexicographic order.
pub fn up_flip_witnesses(t: &Triangulation) -> Vec<FlipWitness> {
    let mut out = Vec::new();
    for s in t.iter() {
        let [v1, v2, v3, v4] = s.vertices();
        for v5 in v4 + 1..=t.n() + 1 {
            if t.contains(&simplex([v1, v2, v4, v5])) && t.contains(&simplex([v2, v3, v4, v5])) {
                out.push(FlipWitness([v1, v2, v3, v4, v5]));
            }
        }
    }
    out.sort();
    out
}

/// Every witness whose upper pattern lies in `t`, in lexicographic order.
pub fn down_flip_witnesses(t: &Triangulation) -> Vec<FlipWitness> {
    let mut out = Vec::new();
    for s in t.iter() {
        let [v1, v2, v3, v5] = s.vertices();
        for v4 in v3 + 1..v5 {
            if t.contains(&simplex([v1, v3, v4, v5])) {
                out.push(FlipWitness([v1, v2, v3, v4, v5]));
            }
        }
    }
    out.sort();
    out
}

/// Non-Hamilton edges whose deletion leaves `g` persistent, in colex order.
pub fn removable_edges(g: &VertexOrderedGraph) -> Vec<Edge> {
    g.edges()
        .into_iter()
        .filter(|e| !e.is_consecutive())
        .filter(|e| g.without_edge(e.lo(), e.hi()).is_ok_and(|h| h.is_persistent()))
        .collect()
}

/// Non-edges whose insertion keeps `g` persistent, in colex order.
pub fn addable_edges(g: &VertexOrderedGraph) -> Vec<Edge> {
    let n = g.n();
    (2..=n)
        .flat_map(|hi| (1..hi).map(move |lo| (lo, hi)))
        .filter(|&(lo, hi)| !g.has_edge(lo, hi))
        .filter(|&(lo, hi)| g.with_edge(lo, hi).is_ok_and(|h| h.is_persistent()))
        .map(|(lo, hi)| Edge::new(lo, hi).unwrap())
        .collect()
}

/// The up-flip on `Ξ(g)` that deletes the removable edge `e = {v, w}`:
/// `(ell(e), v, y, w, arr(e))` with `y` the unique common neighbor of `v` and `w`
/// strictly between them. `None` if `e` is not a non-Hamilton edge of `g` or the
/// middle vertex is not unique.
pub fn flip_witness_for_edge(g: &VertexOrderedGraph, e: Edge) -> Option<FlipWitness> {
    if e.is_consecutive() || !g.has_edge(e.lo(), e.hi()) {
        return None;
    }
    let mut middle = (e.lo() + 1..e.hi()).filter(|&y| g.has_edge(e.lo(), y) && g.has_edge(y, e.hi()));
    let y = middle.next()?;
    if middle.next().is_some() {
        return None;
    }
    FlipWitness::new([ell(g, e), e.lo(), y, e.hi(), arr(g, e)])
}

/// `T(g1) ≤₁ T(g2)`, i.e. `E(g1) ⊇ E(g2)`.
pub fn leq1(g1: &VertexOrderedGraph, g2: &VertexOrderedGraph) -> bool {
    g1.is_superset_of(g2)
}

/// One cover relation: `upper = lower - removed`, so `lower ≤₁ upper`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cover {
    pub lower: usize,
    pub upper: usize,
    pub removed: Edge,
}

/// The cover graph of `≤₁` on all persistent graphs with `n` vertices.
#[derive(Clone, Debug)]
pub struct HasseDiagram {
    pub n: usize,
    /// Nodes in enumeration order.
    pub nodes: Vec<VertexOrderedGraph>,
    /// Sorted by `(lower, upper)`.
    pub covers: Vec<Cover>,
}

/// Builds the Hasse diagram for `n <= cap`.
pub fn hasse_diagram(n: usize, cap: usize) -> Result<HasseDiagram> {
    if n > cap {
        return Err(Error::CapExceeded { what: "poset", n, cap });
    }
    let mut sink = Collector::new(usize::MAX);
    enumerate(n, &mut sink)?;
    let nodes = sink.into_graphs().expect("uncapped collector");
    let index: HashMap<EdgeMask, usize> = nodes.iter().enumerate().map(|(i, g)| (g.edge_mask(), i)).collect();

    let mut covers: Vec<Cover> = nodes
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, g)| {
            removable_edges(g)
                .into_iter()
                .map(|e| {
                    let h = g.without_edge(e.lo(), e.hi()).expect("edge present");
                    Cover { lower: i, upper: index[&h.edge_mask()], removed: e }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    covers.sort();
    Ok(HasseDiagram { n, nodes, covers })
}

impl HasseDiagram {
    /// Nodes with no cover below them.
    pub fn minimal(&self) -> Vec<usize> {
        let mut has_lower = vec![false; self.nodes.len()];
        for c in &self.covers {
            has_lower[c.upper] = true;
        }
        (0..self.nodes.len()).filter(|&i| !has_lower[i]).collect()
    }

    /// Nodes with no cover above them.
    pub fn maximal(&self) -> Vec<usize> {
        let mut has_upper = vec![false; self.nodes.len()];
        for c in &self.covers {
            has_upper[c.lower] = true;
        }
        (0..self.nodes.len()).filter(|&i| !has_upper[i]).collect()
    }

    /// Shortest and longest maximal chain, counted in covers.
    pub fn maximal_chain_lengths(&self) -> (usize, usize) {
        // every cover removes one edge, so process nodes by decreasing edge count
        let mut order: Vec<usize> = (0..self.nodes.len()).collect();
        order.sort_by_key(|&i| self.nodes[i].edge_count());
        let mut upward: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for c in &self.covers {
            upward[c.lower].push(c.upper);
        }
        let mut span = vec![(0usize, 0usize); self.nodes.len()];
        for &i in &order {
            if let Some(first) = upward[i].first() {
                let mut lo = span[*first].0;
                let mut hi = span[*first].1;
                for &j in &upward[i] {
                    lo = lo.min(span[j].0);
                    hi = hi.max(span[j].1);
                }
                span[i] = (lo + 1, hi + 1);
            }
        }
        let mins = self.minimal();
        let lo = mins.iter().map(|&i| span[i].0).min().unwrap_or(0);
        let hi = mins.iter().map(|&i| span[i].1).max().unwrap_or(0);
        (lo, hi)
    }

    /// Graphviz rendering. Node ids are the hex colex edge masks, labels the edge
    /// counts; nodes of equal edge count share a rank.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph stasheff_tamari_{} {{", self.n);
        out.push_str("  rankdir=BT;\n  node [shape=ellipse];\n");
        let ids: Vec<String> = self.nodes.iter().map(|g| g.edge_mask().to_string()).collect();
        let mut by_rank: Vec<(usize, EdgeMask, &str)> = self
            .nodes
            .iter()
            .zip(&ids)
            .map(|(g, id)| (g.edge_count(), g.edge_mask(), id.as_str()))
            .collect();
        by_rank.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
        let mut i = 0;
        while i < by_rank.len() {
            let rank = by_rank[i].0;
            out.push_str("  { rank=same;");
            while i < by_rank.len() && by_rank[i].0 == rank {
                let _ = write!(out, " \"{}\" [label=\"{}\"];", by_rank[i].2, rank);
                i += 1;
            }
            out.push_str(" }\n");
        }
        for c in &self.covers {
            let _ = writeln!(out, "  \"{}\" -> \"{}\";", ids[c.lower], ids[c.upper]);
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::xi;
    use crate::triangulation::tests::c73_sample as sample_triangulation;

    fn witness(v: [Vertex; 5]) -> FlipWitness {
        FlipWitness::new(v).unwrap()
    }

    fn c73_sample() -> VertexOrderedGraph {
        VertexOrderedGraph::path_with(5, [(1, 3), (3, 5), (1, 5)]).unwrap()
    }

    #[test]
    fn patterns() {
        let w = witness([0, 1, 2, 3, 4]);
        let lower: Vec<_> = lower_pattern(&w).iter().map(|s| s.vertices()).collect();
        assert_eq!(lower, vec![[0, 1, 3, 4], [0, 1, 2, 3], [1, 2, 3, 4]]);
        let upper: Vec<_> = upper_pattern(&w).iter().map(|s| s.vertices()).collect();
        assert_eq!(upper, vec![[0, 1, 2, 4], [0, 2, 3, 4]]);
        for s in lower_pattern(&w) {
            assert!(!upper_pattern(&w).contains(&s));
        }
        assert!(FlipWitness::new([0, 1, 1, 2, 3]).is_none());
    }

    #[test]
    fn flips_on_c53() {
        let w = witness([0, 1, 2, 3, 4]);
        let lower = Triangulation::new(3, lower_pattern(&w)).unwrap();
        let upper = Triangulation::new(3, upper_pattern(&w)).unwrap();
        assert_eq!(up_flip(&lower, &w).unwrap(), upper);
        assert_eq!(down_flip(&upper, &w).unwrap(), lower);
        let k3 = xi(&VertexOrderedGraph::complete(3).unwrap()).unwrap();
        assert_eq!(up_flip(&k3, &w).unwrap(), upper);
        assert_eq!(up_flip_witnesses(&lower), vec![w]);
        assert_eq!(down_flip_witnesses(&upper), vec![w]);
    }

    #[test]
    fn flip_precondition() {
        let t = sample_triangulation();
        let err = up_flip(&t, &witness([1, 3, 4, 5, 6])).unwrap_err();
        assert_eq!(err, Error::FlipPrecondition(Simplex3::new([1, 3, 4, 5]).unwrap()));
    }

    #[test]
    fn removable_edges_examples() {
        assert_eq!(removable_edges(&VertexOrderedGraph::complete(3).unwrap()), vec![Edge::new(1, 3).unwrap()]);
        assert_eq!(removable_edges(&c73_sample()), vec![Edge::new(1, 5).unwrap()]);
        assert!(removable_edges(&VertexOrderedGraph::path(7).unwrap()).is_empty());
    }

    #[test]
    fn leq1_examples() {
        let k = VertexOrderedGraph::complete(6).unwrap();
        let p = VertexOrderedGraph::path(6).unwrap();
        assert!(leq1(&k, &p));
        assert!(!leq1(&p, &k));
        let smaller = VertexOrderedGraph::path_with(5, [(1, 3), (3, 5)]).unwrap();
        assert!(smaller.is_persistent());
        assert!(leq1(&c73_sample(), &smaller));
    }

    #[test]
    fn hasse_small() {
        let h = hasse_diagram(3, DEFAULT_POSET_CAP).unwrap();
        assert_eq!(h.nodes.len(), 2);
        assert_eq!(h.covers.len(), 1);
        let c = h.covers[0];
        assert_eq!(h.nodes[c.lower], VertexOrderedGraph::complete(3).unwrap());
        assert_eq!(h.nodes[c.upper], VertexOrderedGraph::path(3).unwrap());

        // K4 - {1,3}, K4 - {2,4}, {1,3,1,4} - {1,4}, {2,4,1,4} - {1,4}, {1,3} - {1,3}, {2,4} - {2,4}
        let h = hasse_diagram(4, DEFAULT_POSET_CAP).unwrap();
        assert_eq!(h.nodes.len(), 6);
        assert_eq!(h.covers.len(), 6);
        assert_eq!(h.maximal_chain_lengths(), (3, 3));

        assert!(matches!(hasse_diagram(9, DEFAULT_POSET_CAP), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn dot_output() {
        let dot = hasse_diagram(3, DEFAULT_POSET_CAP).unwrap().to_dot();
        // P_3 has mask 0b101, K_3 0b111
        assert_eq!(
            dot,
            "digraph stasheff_tamari_3 {\n  rankdir=BT;\n  node [shape=ellipse];\n  { rank=same; \"7\" [label=\"3\"]; }\n  { rank=same; \"5\" [label=\"2\"]; }\n  \"7\" -> \"5\";\n}\n"
        );
    }
}

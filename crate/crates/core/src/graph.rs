//! Vertex-ordered graphs on `[n] = {1, ..., n}` and the persistence properties.
//!
//! A graph is *persistent* when it contains the Hamilton path `1, ..., n`, satisfies
//! the X-property (`{a,c}, {b,d}` with `a < b < c < d` force `{a,d}`) and the
//! bar-property (every edge `{a,b}` with `a < b - 1` has a common neighbor strictly
//! between its endpoints).
//!
//! Adjacency is stored as one `u64` per vertex, bit `v - 1` standing for vertex `v`,
//! so `n` is capped at [`MAX_VERTICES`].

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A vertex label. Graphs use `1..=n`, triangulations and hat graphs `0..=n+1`.
pub type Vertex = usize;

pub const MAX_VERTICES: usize = 64;

/// An unordered pair `{lo, hi}` with `lo < hi`.
///
/// The ordering is colexicographic: by `hi` first, then by `lo`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    lo: Vertex,
    hi: Vertex,
}

impl Edge {
    /// Builds the edge `{a, b}` in either orientation. Returns `None` when `a == b`.
    pub fn new(a: Vertex, b: Vertex) -> Option<Self> {
        match a.cmp(&b) {
            Ordering::Less => Some(Edge { lo: a, hi: b }),
            Ordering::Greater => Some(Edge { lo: b, hi: a }),
            Ordering::Equal => None,
        }
    }

    pub fn lo(self) -> Vertex {
        self.lo
    }

    pub fn hi(self) -> Vertex {
        self.hi
    }

    /// `true` for the edges `{i, i+1}` of the Hamilton path.
    pub fn is_consecutive(self) -> bool {
        self.lo + 1 == self.hi
    }
}

impl Ord for Edge {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.hi, self.lo).cmp(&(other.hi, other.lo))
    }
}

impl PartialOrd for Edge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

/// Which of the three persistence properties failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    MissingHamiltonEdge,
    XProperty,
    BarProperty,
}

/// A failed persistence check together with its smallest witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PropertyViolation {
    /// The Hamilton edge `{i, i+1}` is absent.
    MissingHamiltonEdge(Edge),
    /// `{a,c}` and `{b,d}` are edges with `a < b < c < d`, but `{a,d}` is not.
    XProperty([Vertex; 4]),
    /// The edge has no common neighbor of its endpoints strictly between them.
    BarProperty(Edge),
}

impl PropertyViolation {
    pub fn kind(&self) -> ViolationKind {
        match self {
            PropertyViolation::MissingHamiltonEdge(_) => ViolationKind::MissingHamiltonEdge,
            PropertyViolation::XProperty(_) => ViolationKind::XProperty,
            PropertyViolation::BarProperty(_) => ViolationKind::BarProperty,
        }
    }

    /// Strictly increasing witness vertices: 2 for Hamilton and bar, 4 for X.
    pub fn witness(&self) -> Vec<Vertex> {
        match *self {
            PropertyViolation::MissingHamiltonEdge(e) | PropertyViolation::BarProperty(e) => {
                vec![e.lo, e.hi]
            }
            PropertyViolation::XProperty(w) => w.to_vec(),
        }
    }
}

impl fmt::Display for PropertyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyViolation::MissingHamiltonEdge(e) => {
                write!(f, "missing Hamilton edge {} {}", e.lo, e.hi)
            }
            PropertyViolation::XProperty([a, b, c, d]) => {
                write!(f, "X-property violated by {a} {b} {c} {d}")
            }
            PropertyViolation::BarProperty(e) => {
                write!(f, "bar-property violated by edge {} {}", e.lo, e.hi)
            }
        }
    }
}

#[inline]
fn bit(v: Vertex) -> u64 {
    1u64 << (v - 1)
}

/// Mask of all labels strictly greater than `v` (within `1..=64`).
#[inline]
fn above(v: Vertex) -> u64 {
    if v >= 64 {
        0
    } else {
        !0u64 << v
    }
}

/// Mask of all labels strictly less than `v`.
#[inline]
fn below(v: Vertex) -> u64 {
    if v == 0 {
        0
    } else if v > 64 {
        !0
    } else {
        (1u64 << (v - 1)) - 1
    }
}

#[inline]
fn lowest(mask: u64) -> Vertex {
    mask.trailing_zeros() as Vertex + 1
}

#[inline]
fn highest(mask: u64) -> Vertex {
    64 - mask.leading_zeros() as Vertex
}

/// Iterates the labels set in an adjacency mask in increasing order.
#[derive(Clone, Debug)]
pub struct MaskIter(u64);

impl Iterator for MaskIter {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            return None;
        }
        let v = lowest(self.0);
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// An undirected simple graph on the ordered vertex set `[n]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexOrderedGraph {
    n: usize,
    adj: [u64; MAX_VERTICES],
}

impl VertexOrderedGraph {
    /// The edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::VertexCount(n));
        }
        Ok(VertexOrderedGraph { n, adj: [0; MAX_VERTICES] })
    }

    /// The Hamilton path `P_n`.
    pub fn path(n: usize) -> Result<Self> {
        let mut g = Self::new(n)?;
        for i in 1..n {
            g.add_edge(i, i + 1);
        }
        Ok(g)
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::new(n)?;
        let all = below(n + 1);
        for v in 1..=n {
            g.adj[v - 1] = all & !bit(v);
        }
        Ok(g)
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Self::new(n)?;
        for (u, v) in edges {
            let e = g.checked_edge(u, v)?;
            g.add_edge(e.lo, e.hi);
        }
        Ok(g)
    }

    /// The path `P_n` plus the given extra edges.
    pub fn path_with<I>(n: usize, extra: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Self::path(n)?;
        for (u, v) in extra {
            let e = g.checked_edge(u, v)?;
            g.add_edge(e.lo, e.hi);
        }
        Ok(g)
    }

    fn checked_edge(&self, u: Vertex, v: Vertex) -> Result<Edge> {
        for w in [u, v] {
            if w == 0 || w > self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        Edge::new(u, v).ok_or(Error::SelfLoop(u))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && (1..=self.n).contains(&u) && (1..=self.n).contains(&v) && self.adj[u - 1] & bit(v) != 0
    }

    /// Unchecked insertion for the enumeration hot path. Both labels must be in `[n]`.
    #[inline]
    pub(crate) fn add_edge(&mut self, u: Vertex, v: Vertex) {
        self.adj[u - 1] |= bit(v);
        self.adj[v - 1] |= bit(u);
    }

    #[inline]
    pub(crate) fn remove_edge(&mut self, u: Vertex, v: Vertex) {
        self.adj[u - 1] &= !bit(v);
        self.adj[v - 1] &= !bit(u);
    }

    /// A copy with `{u, v}` added.
    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Result<Self> {
        let e = self.checked_edge(u, v)?;
        let mut g = self.clone();
        g.add_edge(e.lo, e.hi);
        Ok(g)
    }

    /// A copy with `{u, v}` removed. Fails if the edge is absent.
    pub fn without_edge(&self, u: Vertex, v: Vertex) -> Result<Self> {
        let e = self.checked_edge(u, v)?;
        if !self.has_edge(u, v) {
            return Err(Error::MissingEdge(e));
        }
        let mut g = self.clone();
        g.remove_edge(e.lo, e.hi);
        Ok(g)
    }

    /// Adjacency bitset of `v`; bit `u - 1` is set iff `{u, v}` is an edge.
    #[inline]
    pub fn neighbor_mask(&self, v: Vertex) -> u64 {
        self.adj[v - 1]
    }

    pub fn neighbors(&self, v: Vertex) -> MaskIter {
        MaskIter(self.adj[v - 1])
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    /// The largest neighbor of `v`, if any.
    #[inline]
    pub fn max_neighbor(&self, v: Vertex) -> Option<Vertex> {
        let m = self.adj[v - 1];
        (m != 0).then(|| highest(m))
    }

    /// `max { u : u < bound, {u, v} ∈ E }`.
    #[inline]
    pub fn largest_neighbor_below(&self, v: Vertex, bound: Vertex) -> Option<Vertex> {
        let m = self.adj[v - 1] & below(bound);
        (m != 0).then(|| highest(m))
    }

    /// `min { u : u > bound, {u, v} ∈ E }`.
    #[inline]
    pub fn smallest_neighbor_above(&self, v: Vertex, bound: Vertex) -> Option<Vertex> {
        let m = self.adj[v - 1] & above(bound);
        (m != 0).then(|| lowest(m))
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.n].iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// All edges in colex order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for hi in 2..=self.n {
            for lo in MaskIter(self.adj[hi - 1] & below(hi)) {
                out.push(Edge { lo, hi });
            }
        }
        out
    }

    /// `E(self) ⊇ E(other)`; graphs of different size never compare.
    pub fn is_superset_of(&self, other: &Self) -> bool {
        self.n == other.n
            && self.adj[..self.n]
                .iter()
                .zip(&other.adj[..self.n])
                .all(|(a, b)| b & !a == 0)
    }

    /// Bitmask over all `C(n,2)` pairs in colex order; pair `{lo,hi}` has index
    /// `C(hi-1, 2) + lo - 1`.
    pub fn edge_mask(&self) -> EdgeMask {
        let bits = self.n * (self.n - 1) / 2;
        let mut words = vec![0u64; bits.div_ceil(64).max(1)];
        for e in self.edges() {
            let idx = (e.hi - 1) * (e.hi - 2) / 2 + e.lo - 1;
            words[idx / 64] |= 1 << (idx % 64);
        }
        EdgeMask(words)
    }

    pub fn has_hamilton_path(&self) -> bool {
        self.check_hamilton_path().is_none()
    }

    pub fn check_hamilton_path(&self) -> Option<PropertyViolation> {
        (1..self.n)
            .find(|&i| !self.has_edge(i, i + 1))
            .map(|i| PropertyViolation::MissingHamiltonEdge(Edge { lo: i, hi: i + 1 }))
    }

    /// The lexicographically smallest `(a, b, c, d)` violating the X-property.
    pub fn check_x_property(&self) -> Option<PropertyViolation> {
        for a in 1..=self.n {
            let na = self.adj[a - 1];
            for b in a + 1..=self.n {
                let nb = self.adj[b - 1];
                for c in MaskIter(na & above(b)) {
                    let d = nb & above(c) & !na;
                    if d != 0 {
                        return Some(PropertyViolation::XProperty([a, b, c, lowest(d)]));
                    }
                }
            }
        }
        None
    }

    /// The colex-smallest edge `{a, b}`, `a < b - 1`, without a middle common neighbor.
    pub fn check_bar_property(&self) -> Option<PropertyViolation> {
        for hi in 3..=self.n {
            let nh = self.adj[hi - 1];
            for lo in MaskIter(nh & below(hi - 1)) {
                let between = above(lo) & below(hi);
                if self.adj[lo - 1] & nh & between == 0 {
                    return Some(PropertyViolation::BarProperty(Edge { lo, hi }));
                }
            }
        }
        None
    }

    /// The first failing property, checked in the order Hamilton, X, bar.
    pub fn check_persistent(&self) -> std::result::Result<(), PropertyViolation> {
        match self
            .check_hamilton_path()
            .or_else(|| self.check_x_property())
            .or_else(|| self.check_bar_property())
        {
            Some(v) => Err(v),
            None => Ok(()),
        }
    }

    pub fn is_persistent(&self) -> bool {
        self.check_persistent().is_ok()
    }

    pub fn hat(&self) -> HatGraph {
        HatGraph::new(self)
    }
}

impl fmt::Debug for VertexOrderedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VertexOrderedGraph")
            .field("n", &self.n)
            .field("edges", &self.edges().iter().map(|e| (e.lo, e.hi)).collect::<Vec<_>>())
            .finish()
    }
}

/// Colex edge bitmask of a graph. Ordered numerically; displayed as lowercase hex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeMask(Vec<u64>);

impl EdgeMask {
    pub fn words(&self) -> &[u64] {
        &self.0
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

impl Ord for EdgeMask {
    fn cmp(&self, other: &Self) -> Ordering {
        let len = self.0.len().max(other.0.len());
        let word = |m: &EdgeMask, i: usize| m.0.get(i).copied().unwrap_or(0);
        (0..len)
            .rev()
            .map(|i| word(self, i).cmp(&word(other, i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for EdgeMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for EdgeMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut words = self.0.iter().rev().skip_while(|&&w| w == 0);
        match words.next() {
            None => f.write_str("0"),
            Some(first) => {
                write!(f, "{first:x}")?;
                for w in words {
                    write!(f, "{w:016x}")?;
                }
                Ok(())
            }
        }
    }
}

/// The supergraph `Ĝ` on `{0, ..., n+1}` where `0` and `n+1` are universal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HatGraph {
    n: usize,
    adj: Vec<u128>,
}

impl HatGraph {
    fn new(g: &VertexOrderedGraph) -> Self {
        let n = g.n;
        let top = n + 1;
        let all: u128 = if top + 1 >= 128 { !0 } else { (1u128 << (top + 1)) - 1 };
        let mut adj = vec![0u128; n + 2];
        adj[0] = all & !1;
        adj[top] = all & !(1u128 << top);
        for (slot, &row) in adj[1..=n].iter_mut().zip(&g.adj) {
            *slot = ((row as u128) << 1) | 1 | (1u128 << top);
        }
        HatGraph { n, adj }
    }

    /// Vertex count of the underlying graph; `Ĝ` has `n + 2` vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && u <= self.n + 1 && v <= self.n + 1 && self.adj[u] & (1u128 << v) != 0
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let m = self.adj[v];
        (0..=self.n + 1).filter(move |&u| m & (1u128 << u) != 0)
    }

    /// Shifts `{0, ..., n+1}` to `{1, ..., n+2}`. Needs `n + 2 <= 64`.
    pub fn relabel(&self) -> Result<VertexOrderedGraph> {
        let mut g = VertexOrderedGraph::new(self.n + 2)?;
        for u in 0..=self.n + 1 {
            for v in self.neighbors(u).filter(|&v| v > u) {
                g.add_edge(u + 1, v + 1);
            }
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The persistent graph on five vertices from the worked example in the literature.
    pub(crate) fn c73_sample() -> VertexOrderedGraph {
        VertexOrderedGraph::path_with(5, [(1, 3), (3, 5), (1, 5)]).unwrap()
    }

    #[test]
    fn hamilton_path() {
        assert!(VertexOrderedGraph::path(5).unwrap().has_hamilton_path());
        let g = VertexOrderedGraph::from_edges(3, [(1, 3)]).unwrap();
        assert!(!g.has_hamilton_path());
        assert_eq!(
            g.check_hamilton_path(),
            Some(PropertyViolation::MissingHamiltonEdge(Edge::new(1, 2).unwrap()))
        );
        assert!(c73_sample().has_hamilton_path());
    }

    #[test]
    fn x_property() {
        let ok = VertexOrderedGraph::path_with(4, [(1, 3), (2, 4), (1, 4)]).unwrap();
        assert_eq!(ok.check_x_property(), None);
        let bad = VertexOrderedGraph::path_with(4, [(1, 3), (2, 4)]).unwrap();
        let v = bad.check_x_property().unwrap();
        assert_eq!(v.kind(), ViolationKind::XProperty);
        assert_eq!(v.witness(), vec![1, 2, 3, 4]);
        for n in 1..=12 {
            assert_eq!(VertexOrderedGraph::complete(n).unwrap().check_x_property(), None);
        }
    }

    #[test]
    fn x_property_reports_lex_smallest() {
        // Crossings (1,2,4,5), (1,3,4,6) and (2,3,5,6).
        let g = VertexOrderedGraph::path_with(6, [(1, 4), (3, 6), (2, 5)]).unwrap();
        assert_eq!(g.check_x_property(), Some(PropertyViolation::XProperty([1, 2, 4, 5])));
    }

    #[test]
    fn bar_property() {
        let g = VertexOrderedGraph::path_with(3, [(1, 3)]).unwrap();
        assert_eq!(g.check_bar_property(), None);
        let g = VertexOrderedGraph::path_with(4, [(1, 4)]).unwrap();
        assert_eq!(g.check_bar_property(), Some(PropertyViolation::BarProperty(Edge::new(1, 4).unwrap())));
        assert_eq!(c73_sample().check_bar_property(), None);
    }

    #[test]
    fn persistent_basics() {
        for n in 1..=10 {
            assert!(VertexOrderedGraph::path(n).unwrap().is_persistent());
            assert!(VertexOrderedGraph::complete(n).unwrap().is_persistent());
        }
        assert!(c73_sample().is_persistent());
    }

    #[test]
    fn persistent_graphs_on_four_vertices() {
        // Supersets of P_4 over the candidate edges {1,3}, {2,4}, {1,4}.
        let extra = [(1, 3), (2, 4), (1, 4)];
        let count = (0u32..8)
            .filter(|mask| {
                let chosen = (0..3).filter(|i| mask & (1 << i) != 0).map(|i| extra[i]);
                VertexOrderedGraph::path_with(4, chosen).unwrap().is_persistent()
            })
            .count();
        assert_eq!(count, 6);
    }

    #[test]
    fn hat_graph() {
        let h = VertexOrderedGraph::path(2).unwrap().hat();
        for v in 0..=3 {
            for u in 0..=3 {
                if u != v && (u == 0 || u == 3 || v == 0 || v == 3) {
                    assert!(h.has_edge(u, v));
                }
            }
        }
        assert!(h.has_edge(1, 2));
        let h = c73_sample().hat();
        assert!(h.has_edge(0, 2) && h.has_edge(2, 6));
        assert!(!h.has_edge(2, 4));
        assert!(!h.has_edge(3, 3));
        assert!(h.relabel().unwrap().is_persistent());
    }

    #[test]
    fn neighbor_queries() {
        let g = c73_sample();
        assert_eq!(g.largest_neighbor_below(5, 5), Some(4));
        assert_eq!(g.largest_neighbor_below(5, 4), Some(3));
        assert_eq!(g.smallest_neighbor_above(1, 2), Some(3));
        let p = VertexOrderedGraph::path(6).unwrap();
        for bound in 0..=7 {
            assert_eq!(p.largest_neighbor_below(1, bound), (bound > 2).then_some(2));
        }
        assert_eq!(p.max_neighbor(6), Some(5));
    }

    #[test]
    fn edges_are_colex_and_mask_matches() {
        let g = c73_sample();
        let got: Vec<_> = g.edges().iter().map(|e| (e.lo(), e.hi())).collect();
        assert_eq!(got, vec![(1, 2), (1, 3), (2, 3), (3, 4), (1, 5), (3, 5), (4, 5)]);
        // indices 0,1,2,5,6,8,9
        assert_eq!(g.edge_mask().to_string(), format!("{:x}", 0b11_0110_0111u64));
        assert_eq!(VertexOrderedGraph::new(1).unwrap().edge_mask().to_string(), "0");
    }

    #[test]
    fn construction_errors() {
        assert_eq!(VertexOrderedGraph::new(0), Err(Error::VertexCount(0)));
        assert_eq!(VertexOrderedGraph::new(65), Err(Error::VertexCount(65)));
        assert!(VertexOrderedGraph::from_edges(3, [(1, 4)]).is_err());
        assert!(VertexOrderedGraph::from_edges(3, [(2, 2)]).is_err());
        let p = VertexOrderedGraph::path(3).unwrap();
        assert_eq!(p.without_edge(1, 3), Err(Error::MissingEdge(Edge::new(1, 3).unwrap())));
        let g = VertexOrderedGraph::complete(64).unwrap();
        assert_eq!(g.edge_count(), 64 * 63 / 2);
        assert!(g.is_persistent());
    }

    #[test]
    fn removing_non_hamilton_edges_keeps_path() {
        let k = VertexOrderedGraph::complete(7).unwrap();
        for e in k.edges().into_iter().filter(|e| !e.is_consecutive()) {
            assert!(k.without_edge(e.lo(), e.hi()).unwrap().has_hamilton_path());
        }
    }
}

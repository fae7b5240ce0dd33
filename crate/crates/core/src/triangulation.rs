//! 3-simplices over the cyclic polytope `C(n+2, 3)` and triangulation validation.
//!
//! The polytope has vertices `0, ..., n+1`. Its boundary is given by Gale's evenness
//! criterion, and its circuits are the interleaved pairs `({x1,x3,x5}, {x2,x4})`.
//! A set of simplices is a triangulation iff every non-boundary facet is shared by a
//! second simplex and no two simplices carry the two halves of a circuit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Vertex, MAX_VERTICES};

/// A tetrahedron stored as its four strictly increasing vertex labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex3([Vertex; 4]);

impl Simplex3 {
    /// Sorts the labels; `None` if any two coincide.
    pub fn new(mut vertices: [Vertex; 4]) -> Option<Self> {
        vertices.sort_unstable();
        vertices.windows(2).all(|w| w[0] < w[1]).then_some(Simplex3(vertices))
    }

    pub fn vertices(&self) -> [Vertex; 4] {
        self.0
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    /// The four triangle facets in lexicographic order.
    pub fn facets(&self) -> [[Vertex; 3]; 4] {
        let [a, b, c, d] = self.0;
        [[a, b, c], [a, b, d], [a, c, d], [b, c, d]]
    }

    /// The six edges in lexicographic order.
    pub fn edges(&self) -> [(Vertex, Vertex); 6] {
        let [a, b, c, d] = self.0;
        [(a, b), (a, c), (a, d), (b, c), (b, d), (c, d)]
    }
}

impl fmt::Display for Simplex3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "{{{a},{b},{c},{d}}}")
    }
}

/// A circuit `({x1,x3,x5}, {x2,x4})` with `x1 < x2 < x3 < x4 < x5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CircuitPair {
    pub odd: [Vertex; 3],
    pub even: [Vertex; 2],
}

impl CircuitPair {
    /// `Some` iff the two sets interleave.
    pub fn new(odd: [Vertex; 3], even: [Vertex; 2]) -> Option<Self> {
        let [x1, x3, x5] = odd;
        let [x2, x4] = even;
        (x1 < x2 && x2 < x3 && x3 < x4 && x4 < x5).then_some(CircuitPair { odd, even })
    }
}

impl fmt::Display for CircuitPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, c, e] = self.odd;
        let [b, d] = self.even;
        write!(f, "({{{a},{c},{e}}}, {{{b},{d}}})")
    }
}

/// Why a simplex set fails to triangulate `C(n+2, 3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangulationViolation {
    /// No simplices although `n >= 2`.
    Empty,
    /// `C(3,3)` is flat; its only triangulation is the empty set.
    DegenerateNotEmpty(Simplex3),
    /// An interior facet belongs to only one simplex (union-property).
    UnsharedFacet { simplex: Simplex3, facet: [Vertex; 3] },
    /// An interior facet belongs to more than two simplices.
    OversharedFacet { facet: [Vertex; 3], count: usize },
    /// Two simplices contain the two halves of a circuit (intersection-property).
    Circuit { first: Simplex3, second: Simplex3, pair: CircuitPair },
}

impl fmt::Display for TriangulationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriangulationViolation::Empty => write!(f, "no simplices"),
            TriangulationViolation::DegenerateNotEmpty(s) => {
                write!(f, "C(3,3) admits no 3-simplex but {s} is present")
            }
            TriangulationViolation::UnsharedFacet { simplex, facet: [a, b, c] } => {
                write!(f, "union-property violated: interior facet {a} {b} {c} of {simplex} is unshared")
            }
            TriangulationViolation::OversharedFacet { facet: [a, b, c], count } => {
                write!(f, "interior facet {a} {b} {c} is shared by {count} simplices")
            }
            TriangulationViolation::Circuit { first, second, pair } => {
                write!(f, "intersection-property violated: {first} and {second} contain circuit {pair}")
            }
        }
    }
}

/// `true` iff `{u, v}` (in either order) is an edge of `C(n+2, 3)`.
pub fn is_boundary_edge(n: usize, u: Vertex, v: Vertex) -> bool {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    a != b && b <= n + 1 && (a == 0 || b == n + 1 || a + 1 == b)
}

/// `true` iff the sorted triple is a 2-face of `C(n+2, 3)`.
pub fn is_boundary_triangle(n: usize, [a, b, c]: [Vertex; 3]) -> bool {
    (a == 0 && b + 1 == c && c <= n + 1) || (a + 1 == b && c == n + 1 && b <= n)
}

/// All edges of `C(n+2, 3)` by Gale's evenness criterion.
pub fn boundary_edges(n: usize) -> BTreeSet<(Vertex, Vertex)> {
    let top = n + 1;
    let mut out = BTreeSet::from([(0, top)]);
    for i in 1..top {
        out.insert((0, i));
        out.insert((i, top));
        out.insert((i, i + 1));
    }
    out
}

/// All triangles of `C(n+2, 3)`.
pub fn boundary_triangles(n: usize) -> BTreeSet<[Vertex; 3]> {
    let top = n + 1;
    let mut out = BTreeSet::new();
    for i in 1..top {
        out.insert([0, i, i + 1]);
        out.insert([i - 1, i, top]);
    }
    out
}

/// A circuit with one half in each simplex, if any. Tries `odd ⊆ s1` first.
pub fn is_circuit_violation(s1: &Simplex3, s2: &Simplex3) -> Option<CircuitPair> {
    circuit_one_way(s1, s2).or_else(|| circuit_one_way(s2, s1))
}

fn circuit_one_way(odd_side: &Simplex3, even_side: &Simplex3) -> Option<CircuitPair> {
    let ev = even_side.0;
    for odd in odd_side.facets() {
        for i in 0..4 {
            for j in i + 1..4 {
                if let Some(p) = CircuitPair::new(odd, [ev[i], ev[j]]) {
                    return Some(p);
                }
            }
        }
    }
    None
}

/// A set of 3-simplices with labels in `{0, ..., n+1}`, kept in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangulation {
    n: usize,
    simplices: BTreeSet<Simplex3>,
}

impl Triangulation {
    /// Collects simplices for `C(n+2, 3)`. Duplicates collapse; labels are range-checked.
    pub fn new<I>(n: usize, simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = Simplex3>,
    {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::VertexCount(n));
        }
        let simplices: BTreeSet<Simplex3> = simplices.into_iter().collect();
        for s in &simplices {
            if s.0[3] > n + 1 {
                return Err(Error::VertexOutOfRange { vertex: s.0[3], n: n + 1 });
            }
        }
        Ok(Triangulation { n, simplices })
    }

    /// Convenience constructor from raw 4-tuples.
    pub fn from_tuples<I>(n: usize, tuples: I) -> Result<Self>
    where
        I: IntoIterator<Item = [Vertex; 4]>,
    {
        let mut out = Vec::new();
        for t in tuples {
            out.push(Simplex3::new(t).ok_or(Error::SelfLoop(t[0]))?);
        }
        Self::new(n, out)
    }

    pub(crate) fn from_set_unchecked(n: usize, simplices: BTreeSet<Simplex3>) -> Self {
        Triangulation { n, simplices }
    }

    /// Inner vertex count; the polytope has `n + 2` vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &Simplex3) -> bool {
        self.simplices.contains(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex3> {
        self.simplices.iter()
    }

    pub fn simplices(&self) -> &BTreeSet<Simplex3> {
        &self.simplices
    }

    /// Checks the union- and intersection-properties and reports the first failure.
    pub fn validate(&self) -> std::result::Result<(), TriangulationViolation> {
        if self.n == 1 {
            return match self.simplices.first() {
                Some(s) => Err(TriangulationViolation::DegenerateNotEmpty(*s)),
                None => Ok(()),
            };
        }
        if self.simplices.is_empty() {
            return Err(TriangulationViolation::Empty);
        }

        let mut facet_count: BTreeMap<[Vertex; 3], usize> = BTreeMap::new();
        for s in &self.simplices {
            for f in s.facets() {
                *facet_count.entry(f).or_default() += 1;
            }
        }
        for s in &self.simplices {
            for f in s.facets() {
                if !is_boundary_triangle(self.n, f) && facet_count[&f] < 2 {
                    return Err(TriangulationViolation::UnsharedFacet { simplex: *s, facet: f });
                }
            }
        }
        for (&f, &count) in &facet_count {
            if count > 2 && !is_boundary_triangle(self.n, f) {
                return Err(TriangulationViolation::OversharedFacet { facet: f, count });
            }
        }

        let all: Vec<&Simplex3> = self.simplices.iter().collect();
        for (i, s1) in all.iter().enumerate() {
            for s2 in &all[i + 1..] {
                if let Some(pair) = is_circuit_violation(s1, s2) {
                    return Err(TriangulationViolation::Circuit { first: **s1, second: **s2, pair });
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// All pairs covered by some simplex (the 1-skeleton `F_1(T)`).
    pub fn edges(&self) -> BTreeSet<(Vertex, Vertex)> {
        self.simplices.iter().flat_map(|s| s.edges()).collect()
    }

    /// Covered pairs that are not edges of the polytope boundary.
    pub fn internal_edges(&self) -> BTreeSet<(Vertex, Vertex)> {
        self.simplices
            .iter()
            .flat_map(|s| s.edges())
            .filter(|&(u, v)| !is_boundary_edge(self.n, u, v))
            .collect()
    }

    /// Simplices containing both `u` and `v`.
    pub fn star_of_edge(&self, u: Vertex, v: Vertex) -> impl Iterator<Item = &Simplex3> {
        self.simplices.iter().filter(move |s| s.contains(u) && s.contains(v))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn c73_sample() -> Triangulation {
        Triangulation::from_tuples(
            5,
            [
                [0, 1, 2, 3],
                [1, 2, 3, 6],
                [0, 3, 4, 5],
                [3, 4, 5, 6],
                [0, 1, 5, 6],
                [0, 1, 3, 5],
                [1, 3, 5, 6],
            ],
        )
        .unwrap()
    }

    fn s(v: [Vertex; 4]) -> Simplex3 {
        Simplex3::new(v).unwrap()
    }

    #[test]
    fn simplex_is_sorted_and_distinct() {
        assert_eq!(s([3, 0, 2, 1]).vertices(), [0, 1, 2, 3]);
        assert!(Simplex3::new([1, 1, 2, 3]).is_none());
    }

    #[test]
    fn boundary_edges_follow_gale() {
        let e = boundary_edges(5);
        for p in [(0, 6), (0, 3), (3, 6), (3, 4)] {
            assert!(e.contains(&p));
        }
        assert!(!e.contains(&(1, 3)));
        assert_eq!(e.len(), 15);
        assert_eq!(boundary_edges(1), BTreeSet::from([(0, 1), (0, 2), (1, 2)]));
        for n in 1..=20 {
            let e = boundary_edges(n);
            // 3V - 6 edges on a simplicial 3-polytope with V = n + 2
            assert_eq!(e.len(), 3 * n);
            for u in 0..=n + 1 {
                for v in u + 1..=n + 1 {
                    assert_eq!(e.contains(&(u, v)), is_boundary_edge(n, u, v));
                }
            }
        }
    }

    #[test]
    fn boundary_triangles_follow_gale() {
        let t = boundary_triangles(5);
        assert!(t.contains(&[0, 3, 4]) && t.contains(&[2, 3, 6]));
        assert!(!t.contains(&[1, 3, 5]));
        assert_eq!(boundary_triangles(1), BTreeSet::from([[0, 1, 2]]));
        assert_eq!(boundary_triangles(3).len(), 6);
        for n in 2..=20 {
            let t = boundary_triangles(n);
            assert_eq!(t.len(), 2 * n);
            for a in 0..=n + 1 {
                for b in a + 1..=n + 1 {
                    for c in b + 1..=n + 1 {
                        assert_eq!(t.contains(&[a, b, c]), is_boundary_triangle(n, [a, b, c]));
                    }
                }
            }
        }
    }

    /// Enumerates every (odd triple ⊆ one, even pair ⊆ other) interleaving.
    fn circuits_brute_force(s1: &Simplex3, s2: &Simplex3) -> Vec<CircuitPair> {
        let mut out = Vec::new();
        for (p, q) in [(s1, s2), (s2, s1)] {
            for x1 in p.0 {
                for x3 in p.0 {
                    for x5 in p.0 {
                        for x2 in q.0 {
                            for x4 in q.0 {
                                if let Some(c) = CircuitPair::new([x1, x3, x5], [x2, x4]) {
                                    out.push(c);
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn circuit_detection() {
        let a = s([0, 2, 4, 6]);
        let b = s([1, 3, 5, 6]);
        let brute = circuits_brute_force(&a, &b);
        assert!(brute.contains(&CircuitPair { odd: [0, 2, 4], even: [1, 3] }));
        assert_eq!(is_circuit_violation(&a, &b), Some(CircuitPair { odd: [0, 2, 4], even: [1, 3] }));
        assert_eq!(is_circuit_violation(&a, &a), None);
        assert_eq!(is_circuit_violation(&s([0, 1, 2, 3]), &s([3, 4, 5, 6])), None);
    }

    #[test]
    fn circuit_detection_matches_brute_force() {
        let n = 5;
        let all: Vec<Simplex3> = (0..=n + 1)
            .flat_map(|a| (a + 1..=n + 1).map(move |b| (a, b)))
            .flat_map(|(a, b)| (b + 1..=n + 1).map(move |c| (a, b, c)))
            .flat_map(|(a, b, c)| (c + 1..=n + 1).map(move |d| s([a, b, c, d])))
            .collect();
        for x in &all {
            for y in &all {
                let brute = circuits_brute_force(x, y);
                match is_circuit_violation(x, y) {
                    None => assert!(brute.is_empty(), "{x} {y}"),
                    Some(c) => assert!(brute.contains(&c)),
                }
            }
        }
    }

    #[test]
    fn validate_c73_sample() {
        let t = c73_sample();
        assert_eq!(t.validate(), Ok(()));
        let mut broken = t.simplices().clone();
        broken.remove(&s([1, 3, 5, 6]));
        let broken = Triangulation::new(5, broken).unwrap();
        assert_eq!(
            broken.validate(),
            Err(TriangulationViolation::UnsharedFacet { simplex: s([0, 1, 3, 5]), facet: [1, 3, 5] })
        );
    }

    #[test]
    fn validate_small_polytopes() {
        let upper = Triangulation::from_tuples(3, [[0, 1, 2, 4], [0, 2, 3, 4]]).unwrap();
        assert_eq!(upper.validate(), Ok(()));
        let lower = Triangulation::from_tuples(3, [[0, 1, 3, 4], [0, 1, 2, 3], [1, 2, 3, 4]]).unwrap();
        assert_eq!(lower.validate(), Ok(()));
        let mixed = Triangulation::from_tuples(3, [[0, 1, 2, 4], [0, 1, 3, 4], [0, 2, 3, 4]]).unwrap();
        assert!(mixed.validate().is_err());

        assert_eq!(Triangulation::new(1, []).unwrap().validate(), Ok(()));
        assert_eq!(Triangulation::new(2, []).unwrap().validate(), Err(TriangulationViolation::Empty));
        assert_eq!(Triangulation::from_tuples(2, [[0, 1, 2, 3]]).unwrap().validate(), Ok(()));
        assert!(Triangulation::from_tuples(1, [[0, 1, 2, 3]]).is_err());
    }

    #[test]
    fn overshared_facet_rejected() {
        // {1,2,3} is interior for n = 4 and sits in three simplices here.
        let t = Triangulation::from_tuples(4, [[0, 1, 2, 3], [1, 2, 3, 4], [1, 2, 3, 5]]).unwrap();
        let err = t.validate().unwrap_err();
        assert!(matches!(
            err,
            TriangulationViolation::UnsharedFacet { .. } | TriangulationViolation::OversharedFacet { .. }
        ));
    }

    #[test]
    fn internal_edges_of_examples() {
        assert_eq!(c73_sample().internal_edges(), BTreeSet::from([(1, 3), (1, 5), (3, 5)]));
        let upper = Triangulation::from_tuples(3, [[0, 1, 2, 4], [0, 2, 3, 4]]).unwrap();
        assert!(upper.internal_edges().is_empty());
        for (v, w) in c73_sample().internal_edges() {
            assert!(v > 0 && w < 6);
        }
    }

    #[test]
    fn out_of_range_labels_rejected() {
        assert!(Triangulation::from_tuples(3, [[0, 1, 2, 5]]).is_err());
    }
}

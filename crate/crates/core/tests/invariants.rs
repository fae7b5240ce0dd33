use std::collections::BTreeMap;

use cyclic3::enumerate::Collector;
use cyclic3::flips::{down_flip, down_flip_witnesses, leq1, up_flip, up_flip_witnesses};
use cyclic3::triangulation::is_boundary_edge;
use cyclic3::{enumerate, simplex_to_edge, xi, xi_edge, Triangulation, VertexOrderedGraph};

fn persistent(n: usize) -> Vec<VertexOrderedGraph> {
    let mut sink = Collector::new(usize::MAX);
    enumerate(n, &mut sink).unwrap();
    sink.into_graphs().unwrap()
}

#[test]
fn consecutive_neighbors_are_adjacent() {
    for n in 1..=7 {
        for g in persistent(n) {
            for a in 1..=n {
                let nbrs: Vec<usize> = g.neighbors(a).collect();
                for pair in nbrs.windows(2) {
                    let (b, c) = (pair[0], pair[1]);
                    // a itself may sit between b and c, in which case the pair is not consecutive in N[a]
                    if b < a && a < c {
                        continue;
                    }
                    assert!(g.has_edge(b, c), "n = {n}, a = {a}: {b} and {c} not adjacent");
                }
            }
        }
    }
}

#[test]
fn hat_graph_is_persistent() {
    for n in 1..=7 {
        for g in persistent(n) {
            assert!(g.hat().relabel().unwrap().is_persistent());
        }
    }
}

#[test]
fn emitted_graphs_satisfy_each_property() {
    for n in 1..=8 {
        for g in persistent(n) {
            assert_eq!(g.check_x_property(), None);
            assert_eq!(g.check_bar_property(), None);
            assert!(g.has_hamilton_path());
            for e in g.edges().into_iter().filter(|e| !e.is_consecutive()) {
                assert!(g.without_edge(e.lo(), e.hi()).unwrap().has_hamilton_path());
            }
        }
    }
}

#[test]
fn internal_edges_have_three_sides_and_a_cyclic_link() {
    for n in 1..=6 {
        for g in persistent(n) {
            let t = xi(&g).unwrap();
            for (v, w) in t.internal_edges() {
                assert!(0 < v && w < n + 1);
                let star: Vec<_> = t.star_of_edge(v, w).collect();
                assert!(star.len() >= 3, "edge {v} {w} lies in {} simplices", star.len());
                let thirds: Vec<usize> =
                    star.iter().flat_map(|s| s.vertices()).filter(|&x| x != v && x != w).collect();
                assert!(thirds.iter().any(|&x| x < v));
                assert!(thirds.iter().any(|&x| v < x && x < w));
                assert!(thirds.iter().any(|&x| x > w));

                // the link is a single cycle: each link vertex meets exactly two link edges
                let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
                for s in &star {
                    for x in s.vertices().into_iter().filter(|&x| x != v && x != w) {
                        *degree.entry(x).or_default() += 1;
                    }
                }
                assert!(degree.values().all(|&d| d == 2), "edge {v} {w}: link degrees {degree:?}");
                assert_eq!(degree.len(), star.len());
            }
            for (a, b) in t.edges() {
                if !t.internal_edges().contains(&(a, b)) {
                    assert!(is_boundary_edge(n, a, b));
                }
            }
        }
    }
}

#[test]
fn single_simplex_deletions_break_validity() {
    for n in 2..=8 {
        for g in persistent(n) {
            let t = xi(&g).unwrap();
            for s in t.iter() {
                let smaller = Triangulation::new(n, t.iter().copied().filter(|x| x != s)).unwrap();
                assert!(smaller.validate().is_err(), "n = {n}: deleting {s} stays valid");
            }
        }
    }
}

#[test]
fn xi_edges_invert_per_edge() {
    for n in 1..=7 {
        for g in persistent(n) {
            for e in g.edges() {
                assert_eq!(simplex_to_edge(&xi_edge(&g, e)), e);
            }
        }
    }
}

#[test]
fn simplices_avoid_crossing_edges() {
    for n in 1..=7 {
        for g in persistent(n) {
            let edges = g.edges();
            for s in xi(&g).unwrap().iter() {
                let v = s.vertices();
                for (i, j, k) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
                    let (a, b, c) = (v[i], v[j], v[k]);
                    for e in &edges {
                        let (x, y) = (e.lo(), e.hi());
                        assert!(!(a < x && x < b && b < y && y < c), "{s} crossed by {e}");
                    }
                }
            }
        }
    }
}

#[test]
fn flips_undo_and_change_size_by_one() {
    for n in 3..=7 {
        for g in persistent(n) {
            let t = xi(&g).unwrap();
            for w in up_flip_witnesses(&t) {
                let up = up_flip(&t, &w).unwrap();
                assert_eq!(up.len() + 1, t.len());
                assert!(up.is_valid());
                assert_eq!(down_flip(&up, &w).unwrap(), t);
            }
            for w in down_flip_witnesses(&t) {
                let down = down_flip(&t, &w).unwrap();
                assert_eq!(down.len(), t.len() + 1);
                assert_eq!(up_flip(&down, &w).unwrap(), t);
            }
        }
    }
}

#[test]
fn leq1_is_a_partial_order() {
    let graphs = persistent(5);
    for a in &graphs {
        assert!(leq1(a, a));
        for b in &graphs {
            if leq1(a, b) && leq1(b, a) {
                assert_eq!(a, b);
            }
            if !leq1(a, b) {
                continue;
            }
            for c in &graphs {
                if leq1(b, c) {
                    assert!(leq1(a, c));
                }
            }
        }
    }
}

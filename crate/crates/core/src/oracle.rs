//! Exhaustive ground truth for small `n`.
//!
//! Persistent graphs are found by filtering every superset of the path, and
//! triangulations by a depth-first search over all simplex subsets that never
//! combines two simplices forming a circuit. Neither search uses the enumerator or
//! the bijection.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::bijection::{gamma, xi};
use crate::enumerate::{enumerate, Collector};
use crate::error::{Error, Result};
use crate::graph::{EdgeMask, Vertex, VertexOrderedGraph};
use crate::triangulation::{is_circuit_violation, Simplex3, Triangulation};

pub const PERSISTENT_CAP: usize = 8;
pub const TRIANGULATION_CAP: usize = 4;

/// All persistent graphs on `n <= 8` vertices, in order of their extra-edge subset.
pub fn brute_force_persistent(n: usize) -> Result<Vec<VertexOrderedGraph>> {
    if n > PERSISTENT_CAP {
        return Err(Error::CapExceeded { what: "persistent-graph oracle", n, cap: PERSISTENT_CAP });
    }
    let path = VertexOrderedGraph::path(n)?;
    let extra: Vec<(Vertex, Vertex)> =
        (1..=n).flat_map(|u| (u + 2..=n).map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << extra.len() {
        let mut g = path.clone();
        for (i, &(u, v)) in extra.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(u, v);
            }
        }
        if g.is_persistent() {
            out.push(g);
        }
    }
    Ok(out)
}

/// All triangulations of `C(n+2, 3)` for `n <= 4`, in lexicographic order.
pub fn brute_force_triangulations(n: usize) -> Result<Vec<Triangulation>> {
    if n > TRIANGULATION_CAP {
        return Err(Error::CapExceeded { what: "triangulation oracle", n, cap: TRIANGULATION_CAP });
    }
    if n == 0 {
        return Err(Error::VertexCount(n));
    }
    let top = n + 1;
    let mut universe = Vec::new();
    for a in 0..=top {
        for b in a + 1..=top {
            for c in b + 1..=top {
                for d in c + 1..=top {
                    universe.push(Simplex3::new([a, b, c, d]).unwrap());
                }
            }
        }
    }
    let mut found = BTreeSet::new();
    let mut chosen = Vec::new();
    search(n, &universe, 0, &mut chosen, &mut found);
    Ok(found.into_iter().map(|set| Triangulation::new(n, set).unwrap()).collect())
}

fn search(
    n: usize,
    universe: &[Simplex3],
    next: usize,
    chosen: &mut Vec<Simplex3>,
    found: &mut BTreeSet<BTreeSet<Simplex3>>,
) {
    if next == universe.len() {
        let t = Triangulation::new(n, chosen.iter().copied()).unwrap();
        if t.validate().is_ok() {
            found.insert(t.simplices().clone());
        }
        return;
    }
    search(n, universe, next + 1, chosen, found);
    let s = universe[next];
    if chosen.iter().all(|c| is_circuit_violation(c, &s).is_none()) {
        chosen.push(s);
        search(n, universe, next + 1, chosen, found);
        chosen.pop();
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skip => "SKIP",
        })
    }
}

/// One line of an oracle comparison report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub outcome: Outcome,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.outcome, self.name, self.detail)
    }
}

fn check(name: &'static str, ok: bool, detail: String) -> Check {
    Check { name, outcome: if ok { Outcome::Pass } else { Outcome::Fail }, detail }
}

/// Compares both oracles against the enumerator and the bijection.
pub fn run_checks(n: usize) -> Result<Vec<Check>> {
    let oracle = brute_force_persistent(n)?;
    let mut sink = Collector::new(usize::MAX);
    enumerate(n, &mut sink)?;
    let fast = sink.into_graphs().expect("uncapped collector");

    let oracle_set: HashSet<EdgeMask> = oracle.iter().map(|g| g.edge_mask()).collect();
    let fast_set: HashSet<EdgeMask> = fast.iter().map(|g| g.edge_mask()).collect();
    let mut checks = vec![
        check(
            "enumeration-equals-oracle",
            oracle_set == fast_set,
            format!("oracle {} graphs, enumeration {} distinct", oracle_set.len(), fast_set.len()),
        ),
        check(
            "enumeration-no-duplicates",
            fast_set.len() == fast.len(),
            format!("{} emitted, {} distinct", fast.len(), fast_set.len()),
        ),
    ];

    let bijective = oracle.iter().all(|g| xi(g).is_ok_and(|t| t.is_valid() && gamma(&t) == *g));
    checks.push(check("gamma-xi-round-trip", bijective, format!("{} graphs", oracle.len())));

    if n > TRIANGULATION_CAP {
        for name in ["triangulation-count", "gamma-bijective-on-triangulations"] {
            checks.push(Check {
                name,
                outcome: Outcome::Skip,
                detail: format!("n > {TRIANGULATION_CAP}"),
            });
        }
        return Ok(checks);
    }

    let triangulations = brute_force_triangulations(n)?;
    checks.push(check(
        "triangulation-count",
        triangulations.len() == oracle.len(),
        format!("{} triangulations, {} persistent graphs", triangulations.len(), oracle.len()),
    ));
    let images: HashSet<EdgeMask> = triangulations.iter().map(|t| gamma(t).edge_mask()).collect();
    let inverse = triangulations.iter().all(|t| xi(&gamma(t)).is_ok_and(|back| back == *t));
    checks.push(check(
        "gamma-bijective-on-triangulations",
        images == oracle_set && inverse,
        format!("{} distinct images", images.len()),
    ));
    Ok(checks)
}

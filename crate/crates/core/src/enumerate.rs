//! Output-sensitive enumeration of all persistent graphs on `n` vertices.
//!
//! The candidate edges (all pairs except the Hamilton path) are processed in colex
//! order starting from the path `P_n`. A call `(G, k, x)` owns every persistent
//! supergraph of `G` obtained by adding edges `⪰ {x, k}`:
//!
//! * if `x + 1 = k` the column `k` is finished: output at `k = n`, else move on to
//!   `(k + 1, 1)`;
//! * if `{x, k}` is absent, graphs without it continue at `(k, y)` with `y` the
//!   largest neighbor of `x` (X-property rules out everything in between), and then
//!   `{x, k}` is added;
//! * with `{x, k}` present, each admissible minimal middle vertex `y` (a neighbor of
//!   `x`) gets `{y, k}` added and recurses at `(k, y)`. After a candidate `y`, the next
//!   candidate to test is the largest neighbor of `y` itself.
//!
//! The sequential driver mutates a single graph and undoes every change on the way
//! back. The parallel driver expands the call tree breadth-first into independent
//! frames, each holding its own copy of the graph.

use std::io::{self, Write};
use std::sync::mpsc;

use rayon::prelude::*;

use crate::format;
use crate::graph::{Edge, Vertex, VertexOrderedGraph, MAX_VERTICES};

/// The candidate edges `𝓔` of `[n]` in colex order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColexEdgeOrder {
    n: usize,
}

impl ColexEdgeOrder {
    pub fn new(n: usize) -> Self {
        ColexEdgeOrder { n }
    }

    /// `|𝓔| = C(n, 2) - (n - 1)`.
    pub fn len(&self) -> usize {
        if self.n < 2 {
            0
        } else {
            self.n * (self.n - 1) / 2 - (self.n - 1)
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> {
        let n = self.n;
        (3..=n).flat_map(|hi| (1..hi - 1).map(move |lo| Edge::new(lo, hi).unwrap()))
    }

    /// Position of a candidate edge in the order, `None` for Hamilton edges.
    pub fn rank(&self, e: Edge) -> Option<usize> {
        if e.is_consecutive() || e.hi() > self.n {
            return None;
        }
        // columns 3..hi contribute 1 + 2 + ... + (hi - 3)
        let before = (e.hi() - 3) * (e.hi() - 2) / 2;
        Some(before + e.lo() - 1)
    }
}

/// A pending call `(G, k, x)` of the enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumFrame {
    pub graph: VertexOrderedGraph,
    pub k: Vertex,
    pub x: Vertex,
}

impl EnumFrame {
    /// `(P_n, 2, 1)`, the call that produces all of `𝒫_n`. Requires `n >= 2`.
    pub fn root(n: usize) -> crate::Result<Self> {
        let graph = VertexOrderedGraph::path(n)?;
        if n < 2 {
            return Err(crate::Error::VertexCount(n));
        }
        Ok(EnumFrame { graph, k: 2, x: 1 })
    }
}

/// Receives every enumerated graph exactly once.
pub trait EnumSink {
    fn emit(&mut self, g: &VertexOrderedGraph);
}

impl<F: FnMut(&VertexOrderedGraph)> EnumSink for F {
    fn emit(&mut self, g: &VertexOrderedGraph) {
        self(g)
    }
}

/// Counts outputs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counter {
    pub count: u128,
}

impl EnumSink for Counter {
    #[inline]
    fn emit(&mut self, _: &VertexOrderedGraph) {
        self.count += 1;
    }
}

/// Streams blank-line separated graph records. The first I/O error stops output and
/// is returned by [`GraphWriter::finish`].
#[derive(Debug)]
pub struct GraphWriter<W: Write> {
    out: W,
    written: u128,
    leading_separator: bool,
    error: Option<io::Error>,
}

impl<W: Write> GraphWriter<W> {
    pub fn new(out: W) -> Self {
        GraphWriter { out, written: 0, leading_separator: false, error: None }
    }

    /// Writes a separator before every record, including the first. Used for
    /// fragments that are concatenated after other output.
    pub(crate) fn fragment(out: W) -> Self {
        GraphWriter { out, written: 0, leading_separator: true, error: None }
    }

    pub fn written(&self) -> u128 {
        self.written
    }

    pub fn finish(mut self) -> io::Result<W> {
        if let Some(e) = self.error.take() {
            return Err(e);
        }
        self.out.flush()?;
        Ok(self.out)
    }
}

impl<W: Write> EnumSink for GraphWriter<W> {
    fn emit(&mut self, g: &VertexOrderedGraph) {
        if self.error.is_some() {
            return;
        }
        let sep: &[u8] = if self.written > 0 || self.leading_separator { b"\n" } else { b"" };
        let res = self.out.write_all(sep).and_then(|_| format::write_graph(&mut self.out, g));
        match res {
            Ok(()) => self.written += 1,
            Err(e) => self.error = Some(e),
        }
    }
}

/// Keeps up to `cap` graphs in memory and counts the rest.
#[derive(Clone, Debug)]
pub struct Collector {
    cap: usize,
    graphs: Vec<VertexOrderedGraph>,
    dropped: u128,
}

impl Collector {
    pub fn new(cap: usize) -> Self {
        Collector { cap, graphs: Vec::new(), dropped: 0 }
    }

    pub fn graphs(&self) -> &[VertexOrderedGraph] {
        &self.graphs
    }

    pub fn dropped(&self) -> u128 {
        self.dropped
    }

    /// All collected graphs, or the total output count if the cap was exceeded.
    pub fn into_graphs(self) -> Result<Vec<VertexOrderedGraph>, u128> {
        if self.dropped > 0 {
            Err(self.graphs.len() as u128 + self.dropped)
        } else {
            Ok(self.graphs)
        }
    }
}

impl EnumSink for Collector {
    fn emit(&mut self, g: &VertexOrderedGraph) {
        if self.graphs.len() < self.cap {
            self.graphs.push(g.clone());
        } else {
            self.dropped += 1;
        }
    }
}

/// Applies a predicate to every output, remembering the first graph that fails it.
#[derive(Debug)]
pub struct PredicateProbe<F> {
    predicate: F,
    pub checked: u128,
    pub failures: u128,
    pub first_failure: Option<VertexOrderedGraph>,
}

impl<F: FnMut(&VertexOrderedGraph) -> bool> PredicateProbe<F> {
    pub fn new(predicate: F) -> Self {
        PredicateProbe { predicate, checked: 0, failures: 0, first_failure: None }
    }

    pub fn all_passed(&self) -> bool {
        self.failures == 0
    }
}

impl<F: FnMut(&VertexOrderedGraph) -> bool> EnumSink for PredicateProbe<F> {
    fn emit(&mut self, g: &VertexOrderedGraph) {
        self.checked += 1;
        if !(self.predicate)(g) {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(g.clone());
            }
        }
    }
}

pub const PROGRESS_INTERVAL: u128 = 1 << 30;

/// Forwards to an inner sink and reports to standard error every
/// [`PROGRESS_INTERVAL`] outputs.
#[derive(Debug)]
pub struct Progress<S> {
    pub inner: S,
    seen: u128,
}

impl<S> Progress<S> {
    pub fn new(inner: S) -> Self {
        Progress { inner, seen: 0 }
    }
}

impl<S: EnumSink> EnumSink for Progress<S> {
    #[inline]
    fn emit(&mut self, g: &VertexOrderedGraph) {
        self.inner.emit(g);
        self.seen += 1;
        if self.seen.is_multiple_of(PROGRESS_INTERVAL) {
            eprintln!("progress: {} graphs", self.seen);
        }
    }
}

struct Enumerator<'s, S> {
    g: VertexOrderedGraph,
    n: Vertex,
    sink: &'s mut S,
}

impl<S: EnumSink> Enumerator<'_, S> {
    #[inline]
    fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.g.neighbor_mask(u) >> (v - 1) & 1 != 0
    }

    #[inline]
    fn max_neighbor(&self, v: Vertex) -> Vertex {
        // every vertex has a Hamilton neighbor once n >= 2
        64 - self.g.neighbor_mask(v).leading_zeros() as Vertex
    }

    fn run(&mut self, k: Vertex, x: Vertex) {
        if x + 1 == k {
            if k == self.n {
                self.sink.emit(&self.g);
            } else {
                self.run(k + 1, 1);
            }
            return;
        }

        let added = !self.adjacent(x, k);
        if added {
            let y = self.max_neighbor(x);
            debug_assert!(x < y && y < k);
            self.run(k, y);
            self.g.add_edge(x, k);
        }

        let mut y = x + 1;
        while y < k {
            if self.adjacent(x, y) {
                let hamilton = y + 1 == k;
                self.g.add_edge(y, k);
                self.run(k, y);
                if hamilton {
                    break;
                }
                self.g.remove_edge(y, k);
                y = self.max_neighbor(y);
            } else {
                y += 1;
            }
        }

        if added {
            self.g.remove_edge(x, k);
        }
    }
}

/// Streams every persistent supergraph of `frame.graph` obtained by adding candidate
/// edges `⪰ {x, k}`.
///
/// The frame must satisfy the recursion invariant: no edge `≻ {x, k}` is present, and
/// the graph is persistent except that `{x, k}` itself may lack a middle vertex.
pub fn enumerate_from<S: EnumSink>(frame: EnumFrame, sink: &mut S) {
    let n = frame.graph.n();
    debug_assert!(frame.x < frame.k && frame.k <= n);
    let mut e = Enumerator { g: frame.graph, n, sink };
    e.run(frame.k, frame.x);
}

/// Streams all of `𝒫_n` in the enumeration's deterministic order.
pub fn enumerate<S: EnumSink>(n: usize, sink: &mut S) -> crate::Result<()> {
    if n <= 2 {
        sink.emit(&VertexOrderedGraph::path(n)?);
        return Ok(());
    }
    enumerate_from(EnumFrame::root(n)?, sink);
    Ok(())
}

/// `|𝒫_n|`, which equals the number of triangulations of `C(n+2, 3)`.
pub fn count(n: usize) -> crate::Result<u128> {
    let mut c = Counter::default();
    enumerate(n, &mut c)?;
    Ok(c.count)
}

/// One element of a breadth-first frontier of the call tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrontierItem {
    /// A graph already emitted above the frontier.
    Output(VertexOrderedGraph),
    Frame(EnumFrame),
}

/// The outputs and direct sub-calls of one call, in the order the sequential
/// enumerator performs them.
pub fn expand(frame: &EnumFrame) -> Vec<FrontierItem> {
    let EnumFrame { graph, k, x } = frame;
    let (k, x) = (*k, *x);
    let n = graph.n();
    if x + 1 == k {
        return if k == n {
            vec![FrontierItem::Output(graph.clone())]
        } else {
            vec![FrontierItem::Frame(EnumFrame { graph: graph.clone(), k: k + 1, x: 1 })]
        };
    }

    let mut out = Vec::new();
    let mut g = graph.clone();
    if !g.has_edge(x, k) {
        let y = g.max_neighbor(x).expect("Hamilton neighbor");
        out.push(FrontierItem::Frame(EnumFrame { graph: g.clone(), k, x: y }));
        g.add_edge(x, k);
    }
    let mut y = x + 1;
    while y < k {
        if g.has_edge(x, y) {
            let mut child = g.clone();
            child.add_edge(y, k);
            out.push(FrontierItem::Frame(EnumFrame { graph: child, k, x: y }));
            if y + 1 == k {
                break;
            }
            y = g.max_neighbor(y).expect("Hamilton neighbor");
        } else {
            y += 1;
        }
    }
    out
}

/// Expands the call tree level by level until at least `min_frames` frames are
/// pending, no frames remain, or `max_depth` levels have been expanded.
pub fn frontier(n: usize, min_frames: usize, max_depth: Option<usize>) -> crate::Result<Vec<FrontierItem>> {
    if n <= 2 {
        return Ok(vec![FrontierItem::Output(VertexOrderedGraph::path(n)?)]);
    }
    let mut items = vec![FrontierItem::Frame(EnumFrame::root(n)?)];
    let mut depth = 0;
    loop {
        let frames = items.iter().filter(|i| matches!(i, FrontierItem::Frame(_))).count();
        if frames == 0 || frames >= min_frames || max_depth.is_some_and(|d| depth >= d) {
            return Ok(items);
        }
        items = items
            .into_iter()
            .flat_map(|item| match item {
                FrontierItem::Frame(f) => expand(&f),
                out => vec![out],
            })
            .collect();
        depth += 1;
    }
}

/// Runs one frontier item into a sink.
pub fn run_item<S: EnumSink>(item: &FrontierItem, sink: &mut S) {
    match item {
        FrontierItem::Output(g) => sink.emit(g),
        FrontierItem::Frame(f) => enumerate_from(f.clone(), sink),
    }
}

/// Settings for the parallel drivers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParallelOptions {
    pub workers: usize,
    /// Frontier size target as a multiple of `workers`.
    pub frames_per_worker: usize,
    /// Fixed frontier depth; overrides the size target when set.
    pub depth: Option<usize>,
    /// Items run concurrently before their sinks are handed back in order.
    /// `None` runs the whole frontier at once.
    pub batch: Option<usize>,
}

impl ParallelOptions {
    pub fn new(workers: usize) -> Self {
        ParallelOptions { workers: workers.max(1), frames_per_worker: 8, depth: None, batch: None }
    }

    fn frontier(&self, n: usize) -> crate::Result<Vec<FrontierItem>> {
        match self.depth {
            Some(d) => frontier(n, usize::MAX, Some(d)),
            None => frontier(n, self.workers * self.frames_per_worker, None),
        }
    }

    fn pool(&self) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .expect("thread pool")
    }
}

/// Runs every frontier item into its own fresh sink and hands the sinks to `consume`
/// in frontier order, so concatenated output matches the sequential order.
pub fn run_parallel_ordered<S, F, C>(n: usize, opts: &ParallelOptions, new_sink: F, mut consume: C) -> crate::Result<()>
where
    S: EnumSink + Send,
    F: Fn() -> S + Sync,
    C: FnMut(S),
{
    let items = opts.frontier(n)?;
    let pool = opts.pool();
    let batch = opts.batch.unwrap_or(items.len()).max(1);
    for chunk in items.chunks(batch) {
        let sinks: Vec<S> = pool.install(|| {
            chunk
                .par_iter()
                .map(|item| {
                    let mut s = new_sink();
                    run_item(item, &mut s);
                    s
                })
                .collect()
        });
        sinks.into_iter().for_each(&mut consume);
    }
    Ok(())
}

/// Like [`run_parallel_ordered`], but sinks reach `consume` as soon as their frame
/// finishes.
pub fn run_parallel_unordered<S, F, C>(n: usize, opts: &ParallelOptions, new_sink: F, mut consume: C) -> crate::Result<()>
where
    S: EnumSink + Send,
    F: Fn() -> S + Sync,
    C: FnMut(S),
{
    let items = opts.frontier(n)?;
    let pool = opts.pool();
    let (tx, rx) = mpsc::channel::<S>();
    std::thread::scope(|scope| {
        let items = &items;
        let new_sink = &new_sink;
        scope.spawn(move || {
            pool.install(|| {
                items.par_iter().for_each_with(tx, |tx, item| {
                    let mut s = new_sink();
                    run_item(item, &mut s);
                    // receiver outlives the workers
                    let _ = tx.send(s);
                })
            })
        });
        for s in rx {
            consume(s);
        }
    });
    Ok(())
}

/// `count(n)` computed by `workers` threads over a breadth-first frontier.
pub fn count_parallel(n: usize, workers: usize) -> crate::Result<u128> {
    count_parallel_with(n, &ParallelOptions::new(workers))
}

pub fn count_parallel_with(n: usize, opts: &ParallelOptions) -> crate::Result<u128> {
    let mut total = 0u128;
    run_parallel_unordered(n, opts, Counter::default, |c| total += c.count)?;
    Ok(total)
}

/// Writes all of `𝒫_n` as blank-line separated records. With more than one worker
/// and `deterministic`, the bytes are identical to the single-threaded output.
pub fn write_all<W: Write>(n: usize, out: W, opts: &ParallelOptions, deterministic: bool) -> io::Result<u128> {
    let mut out = out;
    if opts.workers <= 1 {
        let mut w = Progress::new(GraphWriter::new(&mut out));
        enumerate(n, &mut w).map_err(io::Error::other)?;
        let written = w.inner.written();
        w.inner.finish()?;
        return Ok(written);
    }

    // Each fragment starts with a separator; the very first one is dropped.
    let mut written = 0u128;
    let mut error: Option<io::Error> = None;
    let mut consume = |w: GraphWriter<Vec<u8>>| {
        let count = w.written();
        let buf = match w.finish() {
            Ok(buf) => buf,
            Err(e) => {
                error.get_or_insert(e);
                return;
            }
        };
        if error.is_some() || buf.is_empty() {
            return;
        }
        let body = if written == 0 { &buf[1..] } else { &buf[..] };
        let before = written / PROGRESS_INTERVAL;
        written += count;
        if written / PROGRESS_INTERVAL > before {
            eprintln!("progress: {written} graphs");
        }
        if let Err(e) = out.write_all(body) {
            error = Some(e);
        }
    };
    let make = || GraphWriter::fragment(Vec::new());
    let res = if deterministic {
        let mut ordered = *opts;
        ordered.batch.get_or_insert(opts.workers * 4);
        run_parallel_ordered(n, &ordered, make, &mut consume)
    } else {
        run_parallel_unordered(n, opts, make, &mut consume)
    };
    res.map_err(io::Error::other)?;
    if let Some(e) = error {
        return Err(e);
    }
    out.flush()?;
    Ok(written)
}

/// Largest `n` accepted by [`count`] and [`enumerate`].
pub const MAX_N: usize = MAX_VERTICES;

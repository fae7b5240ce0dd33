//! Command-line front end.
//!
//! Exit codes: `0` success, `1` property violation or failed check, `2` malformed
//! input or usage error, `3` size cap exceeded.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::bijection::{gamma, xi};
use crate::enumerate::{self, Counter, ParallelOptions, Progress, MAX_N, PROGRESS_INTERVAL};
use crate::error::Error;
use crate::flips::{self, DEFAULT_POSET_CAP};
use crate::format::{self, Document};
use crate::graph::VertexOrderedGraph;
use crate::oracle::{self, Outcome};
use crate::triangulation::Triangulation;

const TABLE: &str = include_str!("../fixtures/counts.txt");

/// Published counts `(n, |𝒫_n|)` shipped with the crate.
pub fn published_counts() -> Vec<(usize, u128)> {
    TABLE
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let mut it = l.split_whitespace();
            let n = it.next().and_then(|t| t.parse().ok()).expect("fixture n");
            let c = it.next().and_then(|t| t.parse().ok()).expect("fixture count");
            (n, c)
        })
        .collect()
}

#[derive(Debug, Parser)]
#[command(name = "cyclic3", version, about = "Triangulations of C(n+2,3) as persistent graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the number of persistent graphs on n vertices.
    Count {
        n: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Compare against the shipped reference table.
        #[arg(long)]
        check: bool,
    },
    /// Stream all persistent graphs on n vertices.
    Enumerate {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Keep the sequential emission order when running with several threads.
        #[arg(long)]
        deterministic: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Check a graph or triangulation file and print the first violation.
    Validate { file: PathBuf },
    /// Convert graphs to triangulations or triangulations to graphs.
    Map {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the removable edges (up-flips) of each record.
    Flips {
        file: PathBuf,
        /// Also print the five-vertex flip witness of each edge.
        #[arg(long)]
        witnesses: bool,
    },
    /// Emit the Hasse diagram of the Stasheff-Tamari order.
    Poset {
        n: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_POSET_CAP)]
        max_n: usize,
    },
    /// Compare the fast paths against the brute-force oracles.
    OracleCheck { n: usize },
}

#[derive(Debug)]
enum Failure {
    Violation(String),
    Malformed(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Violation(_) => 1,
            Failure::Malformed(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Violation(m) | Failure::Malformed(m) | Failure::Cap(m) => m,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Malformed(format!("i/o error: {e}"))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } | Error::VertexCount(_) => Failure::Cap(e.to_string()),
            Error::NotPersistent(_) | Error::InvalidTriangulation(_) | Error::FlipPrecondition(_) => {
                Failure::Violation(e.to_string())
            }
            _ => Failure::Malformed(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (including the program name), runs the subcommand and returns the
/// process exit code.
pub fn dispatch<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(text.as_bytes());
            } else {
                let _ = stderr.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let res = match cli.command {
        Command::Count { n, threads, check } => count(n, threads, check, stdout),
        Command::Enumerate { n, out, deterministic, threads } => {
            enumerate_cmd(n, out.as_deref(), deterministic, threads, stdout)
        }
        Command::Validate { file } => validate(&file, stdout),
        Command::Map { file, out } => map(&file, out.as_deref(), stdout),
        Command::Flips { file, witnesses } => flips_cmd(&file, witnesses, stdout),
        Command::Poset { n, dot, max_n } => poset(n, dot.as_deref(), max_n, stdout),
        Command::OracleCheck { n } => oracle_check(n, stdout),
    };
    match res.and_then(|()| stdout.flush().map_err(Failure::from)) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            f.code()
        }
    }
}

fn check_n(n: usize) -> CmdResult {
    if n == 0 {
        return Err(Failure::Malformed("n must be at least 1".into()));
    }
    if n > MAX_N {
        return Err(Failure::Cap(format!("n = {n} exceeds the cap of {MAX_N}")));
    }
    Ok(())
}

fn count(n: usize, threads: usize, check: bool, stdout: &mut dyn Write) -> CmdResult {
    check_n(n)?;
    if threads == 0 {
        return Err(Failure::Malformed("--threads must be at least 1".into()));
    }
    let total = if threads == 1 {
        let mut sink = Progress::new(Counter::default());
        enumerate::enumerate(n, &mut sink)?;
        sink.inner.count
    } else {
        let mut total = 0u128;
        enumerate::run_parallel_unordered(n, &ParallelOptions::new(threads), Counter::default, |c| {
            let before = total / PROGRESS_INTERVAL;
            total += c.count;
            if total / PROGRESS_INTERVAL > before {
                eprintln!("progress: {total} graphs");
            }
        })?;
        total
    };
    writeln!(stdout, "{total}")?;
    if check {
        match published_counts().into_iter().find(|&(m, _)| m == n) {
            Some((_, want)) if want == total => {}
            Some((_, want)) => {
                return Err(Failure::Violation(format!("count {total} differs from the reference value {want}")))
            }
            None => eprintln!("note: no reference value for n = {n}"),
        }
    }
    Ok(())
}

fn enumerate_cmd(n: usize, out: Option<&Path>, deterministic: bool, threads: usize, stdout: &mut dyn Write) -> CmdResult {
    check_n(n)?;
    if threads == 0 {
        return Err(Failure::Malformed("--threads must be at least 1".into()));
    }
    let opts = ParallelOptions::new(threads);
    match out {
        Some(path) => {
            let file = BufWriter::new(File::create(path)?);
            enumerate::write_all(n, file, &opts, deterministic)?;
        }
        None => {
            enumerate::write_all(n, BufWriter::new(&mut *stdout), &opts, deterministic)?;
        }
    }
    Ok(())
}

fn read_document(path: &Path) -> Result<Document, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
    format::parse_document_bytes(&bytes).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn record_prefix(i: usize, total: usize) -> String {
    if total > 1 {
        format!("record {}: ", i + 1)
    } else {
        String::new()
    }
}

fn validate(path: &Path, stdout: &mut dyn Write) -> CmdResult {
    let doc = read_document(path)?;
    let total = doc.len();
    match doc {
        Document::Graphs(gs) => {
            for (i, g) in gs.iter().enumerate() {
                if let Err(v) = g.check_persistent() {
                    writeln!(stdout, "{}not persistent: {v}", record_prefix(i, total))?;
                    return Err(Failure::Violation(format!("{}{v}", record_prefix(i, total))));
                }
            }
            if let [g] = gs.as_slice() {
                writeln!(stdout, "ok: persistent graph on {} vertices with {} edges", g.n(), g.edge_count())?;
            } else {
                writeln!(stdout, "ok: {total} persistent graphs")?;
            }
        }
        Document::Triangulations(ts) => {
            for (i, t) in ts.iter().enumerate() {
                if let Err(v) = t.validate() {
                    writeln!(stdout, "{}not a triangulation: {v}", record_prefix(i, total))?;
                    return Err(Failure::Violation(format!("{}{v}", record_prefix(i, total))));
                }
            }
            if let [t] = ts.as_slice() {
                writeln!(stdout, "ok: triangulation of C({},3) with {} simplices", t.n() + 2, t.len())?;
            } else {
                writeln!(stdout, "ok: {total} triangulations")?;
            }
        }
    }
    Ok(())
}

fn valid_graphs(doc: Document) -> Result<Vec<VertexOrderedGraph>, Failure> {
    let total = doc.len();
    match doc {
        Document::Graphs(gs) => {
            for (i, g) in gs.iter().enumerate() {
                g.check_persistent()
                    .map_err(|v| Failure::Violation(format!("{}not persistent: {v}", record_prefix(i, total))))?;
            }
            Ok(gs)
        }
        Document::Triangulations(ts) => ts
            .iter()
            .enumerate()
            .map(|(i, t)| {
                t.validate()
                    .map(|()| gamma(t))
                    .map_err(|v| Failure::Violation(format!("{}not a triangulation: {v}", record_prefix(i, total))))
            })
            .collect(),
    }
}

fn map(path: &Path, out: Option<&Path>, stdout: &mut dyn Write) -> CmdResult {
    let doc = read_document(path)?;
    let mapped = match doc {
        Document::Graphs(_) => {
            let ts: Vec<Triangulation> =
                valid_graphs(doc)?.iter().map(xi).collect::<Result<_, _>>()?;
            Document::Triangulations(ts)
        }
        Document::Triangulations(_) => Document::Graphs(valid_graphs(doc)?),
    };
    match out {
        Some(p) => {
            let mut f = BufWriter::new(File::create(p)?);
            format::write_document(&mut f, &mapped)?;
            f.flush()?;
        }
        None => format::write_document(stdout, &mapped)?,
    }
    Ok(())
}

fn flips_cmd(path: &Path, witnesses: bool, stdout: &mut dyn Write) -> CmdResult {
    let graphs = valid_graphs(read_document(path)?)?;
    for (i, g) in graphs.iter().enumerate() {
        if i > 0 {
            writeln!(stdout)?;
        }
        for e in flips::removable_edges(g) {
            match (witnesses, flips::flip_witness_for_edge(g, e)) {
                (true, Some(w)) => writeln!(stdout, "{} {} : {w}", e.lo(), e.hi())?,
                _ => writeln!(stdout, "{} {}", e.lo(), e.hi())?,
            }
        }
    }
    Ok(())
}

fn poset(n: usize, dot: Option<&Path>, max_n: usize, stdout: &mut dyn Write) -> CmdResult {
    check_n(n)?;
    let h = flips::hasse_diagram(n, max_n)?;
    writeln!(stdout, "nodes {}", h.nodes.len())?;
    writeln!(stdout, "covers {}", h.covers.len())?;
    match dot {
        Some(p) => fs::write(p, h.to_dot())?,
        None => {
            for c in &h.covers {
                writeln!(stdout, "{} {}", h.nodes[c.lower].edge_mask(), h.nodes[c.upper].edge_mask())?;
            }
        }
    }
    Ok(())
}

fn oracle_check(n: usize, stdout: &mut dyn Write) -> CmdResult {
    check_n(n)?;
    let checks = oracle::run_checks(n)?;
    for c in &checks {
        writeln!(stdout, "{c}")?;
    }
    if checks.iter().any(|c| c.outcome == Outcome::Fail) {
        return Err(Failure::Violation("oracle comparison failed".into()));
    }
    Ok(())
}

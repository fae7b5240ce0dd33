//! Line-oriented text formats for graphs and triangulations.
//!
//! ```text
//! n 5          n 5
//! 1 2          0 1 2 3
//! 1 3          0 1 3 5
//! ...          ...
//! ```
//!
//! A record is a header `n <N>` followed by one line per edge (`u v`, `u < v`, colex
//! order) or per simplex (`a b c d`, strictly increasing, lexicographic order).
//! Several records are separated by blank lines. Writers emit exactly this canonical
//! form; readers accept records in any line order but reject duplicates.

use std::collections::BTreeSet;
use std::io::{self, Write};

use thiserror::Error;

use crate::graph::{Vertex, VertexOrderedGraph, MAX_VERTICES};
use crate::triangulation::{Simplex3, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// What kind of object a file holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Graph,
    Triangulation,
}

/// A parsed file: one or more records of a single kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Graphs(Vec<VertexOrderedGraph>),
    Triangulations(Vec<Triangulation>),
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Graphs(_) => Kind::Graph,
            Document::Triangulations(_) => Kind::Triangulation,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Document::Graphs(g) => g.len(),
            Document::Triangulations(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn write_graph<W: Write + ?Sized>(out: &mut W, g: &VertexOrderedGraph) -> io::Result<()> {
    // one buffered write per record keeps the enumeration writer cheap
    let mut buf = String::with_capacity(8 + g.edge_count() * 6);
    buf.push_str("n ");
    push_num(&mut buf, g.n());
    buf.push('\n');
    for e in g.edges() {
        push_num(&mut buf, e.lo());
        buf.push(' ');
        push_num(&mut buf, e.hi());
        buf.push('\n');
    }
    out.write_all(buf.as_bytes())
}

pub fn write_triangulation<W: Write + ?Sized>(out: &mut W, t: &Triangulation) -> io::Result<()> {
    let mut buf = format!("n {}\n", t.n());
    for s in t.iter() {
        let [a, b, c, d] = s.vertices();
        buf.push_str(&format!("{a} {b} {c} {d}\n"));
    }
    out.write_all(buf.as_bytes())
}

/// Writes all records of a document, blank-line separated.
pub fn write_document<W: Write + ?Sized>(out: &mut W, doc: &Document) -> io::Result<()> {
    match doc {
        Document::Graphs(gs) => {
            for (i, g) in gs.iter().enumerate() {
                if i > 0 {
                    out.write_all(b"\n")?;
                }
                write_graph(out, g)?;
            }
        }
        Document::Triangulations(ts) => {
            for (i, t) in ts.iter().enumerate() {
                if i > 0 {
                    out.write_all(b"\n")?;
                }
                write_triangulation(out, t)?;
            }
        }
    }
    Ok(())
}

pub fn graph_to_string(g: &VertexOrderedGraph) -> String {
    let mut out = Vec::new();
    write_graph(&mut out, g).expect("writing to memory");
    String::from_utf8(out).expect("ascii")
}

pub fn triangulation_to_string(t: &Triangulation) -> String {
    let mut out = Vec::new();
    write_triangulation(&mut out, t).expect("writing to memory");
    String::from_utf8(out).expect("ascii")
}

pub fn document_to_string(doc: &Document) -> String {
    let mut out = Vec::new();
    write_document(&mut out, doc).expect("writing to memory");
    String::from_utf8(out).expect("ascii")
}

fn push_num(buf: &mut String, v: usize) {
    use std::fmt::Write as _;
    let _ = write!(buf, "{v}");
}

struct RawRecord {
    header_line: usize,
    n: usize,
    rows: Vec<(usize, Vec<Vertex>)>,
}

impl RawRecord {
    fn arity(&self) -> Option<usize> {
        self.rows.first().map(|(_, r)| r.len())
    }
}

fn parse_number(line: usize, tok: &str) -> Result<usize, ParseError> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return err(line, format!("expected a non-negative integer, found {tok:?}"));
    }
    tok.parse().or_else(|_| err(line, format!("integer {tok} is too large")))
}

fn split_records(input: &str) -> Result<Vec<RawRecord>, ParseError> {
    let mut records = Vec::new();
    let mut current: Option<RawRecord> = None;
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        if toks.is_empty() {
            if let Some(r) = current.take() {
                records.push(r);
            }
            continue;
        }
        match current.as_mut() {
            None => {
                if toks.len() != 2 || toks[0] != "n" {
                    return err(line, "expected header `n <N>`");
                }
                let n = parse_number(line, toks[1])?;
                if n == 0 || n > MAX_VERTICES {
                    return err(line, format!("n = {n} is outside 1..={MAX_VERTICES}"));
                }
                current = Some(RawRecord { header_line: line, n, rows: Vec::new() });
            }
            Some(rec) => {
                if toks[0] == "n" {
                    return err(line, "records must be separated by a blank line");
                }
                let row = toks.iter().map(|t| parse_number(line, t)).collect::<Result<Vec<_>, _>>()?;
                if row.len() != 2 && row.len() != 4 {
                    return err(line, format!("expected 2 or 4 labels, found {}", row.len()));
                }
                if let Some(a) = rec.arity() {
                    if a != row.len() {
                        return err(line, "mixed edge and simplex lines in one record");
                    }
                }
                rec.rows.push((line, row));
            }
        }
    }
    if let Some(r) = current.take() {
        records.push(r);
    }
    if records.is_empty() {
        return err(1, "no records");
    }
    Ok(records)
}

fn build_graph(rec: &RawRecord) -> Result<VertexOrderedGraph, ParseError> {
    let mut g = VertexOrderedGraph::new(rec.n).or_else(|e| err(rec.header_line, e.to_string()))?;
    for (line, row) in &rec.rows {
        let (u, v) = (row[0], row[1]);
        if !(1 <= u && u < v && v <= rec.n) {
            return err(*line, format!("edge {u} {v} must satisfy 1 <= u < v <= {}", rec.n));
        }
        if g.has_edge(u, v) {
            return err(*line, format!("duplicate edge {u} {v}"));
        }
        g.add_edge(u, v);
    }
    Ok(g)
}

fn build_triangulation(rec: &RawRecord) -> Result<Triangulation, ParseError> {
    let mut set = BTreeSet::new();
    for (line, row) in &rec.rows {
        let v = [row[0], row[1], row[2], row[3]];
        if !v.windows(2).all(|w| w[0] < w[1]) || v[3] > rec.n + 1 {
            return err(
                *line,
                format!("simplex {} {} {} {} must be strictly increasing within 0..={}", v[0], v[1], v[2], v[3], rec.n + 1),
            );
        }
        if !set.insert(Simplex3::new(v).expect("increasing")) {
            return err(*line, "duplicate simplex");
        }
    }
    Triangulation::new(rec.n, set).or_else(|e| err(rec.header_line, e.to_string()))
}

/// Parses a single graph record.
pub fn parse_graph(input: &str) -> Result<VertexOrderedGraph, ParseError> {
    match parse_document(input)? {
        Document::Graphs(mut gs) if gs.len() == 1 => Ok(gs.pop().unwrap()),
        Document::Graphs(gs) => err(1, format!("expected one record, found {}", gs.len())),
        Document::Triangulations(_) => err(1, "expected a graph, found a triangulation"),
    }
}

/// Parses a single triangulation record. A header-only record is the empty set.
pub fn parse_triangulation(input: &str) -> Result<Triangulation, ParseError> {
    let records = split_records(input)?;
    if records.len() != 1 {
        return err(1, format!("expected one record, found {}", records.len()));
    }
    let rec = &records[0];
    if rec.arity() == Some(2) {
        return err(rec.rows[0].0, "expected a triangulation, found a graph");
    }
    build_triangulation(rec)
}

/// Parses one or more records, detecting the kind from the row arity.
/// Files without any data row are read as graphs.
pub fn parse_document(input: &str) -> Result<Document, ParseError> {
    let records = split_records(input)?;
    let kind = match records.iter().find_map(|r| r.arity().map(|a| (a, r.rows[0].0))) {
        Some((4, _)) => Kind::Triangulation,
        _ => Kind::Graph,
    };
    for r in &records {
        match (kind, r.arity()) {
            (Kind::Graph, Some(4)) | (Kind::Triangulation, Some(2)) => {
                return err(r.rows[0].0, "records of different kinds in one file");
            }
            _ => {}
        }
    }
    Ok(match kind {
        Kind::Graph => Document::Graphs(records.iter().map(build_graph).collect::<Result<_, _>>()?),
        Kind::Triangulation => {
            Document::Triangulations(records.iter().map(build_triangulation).collect::<Result<_, _>>()?)
        }
    })
}

/// Parses raw bytes; non-UTF-8 input is a parse error.
pub fn parse_document_bytes(input: &[u8]) -> Result<Document, ParseError> {
    match std::str::from_utf8(input) {
        Ok(s) => parse_document(s),
        Err(e) => err(1, format!("input is not UTF-8: {e}")),
    }
}

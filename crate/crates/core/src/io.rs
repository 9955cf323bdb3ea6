//! File formats: graph and quiver JSON, Betti polynomial JSON and CSV.
//!
//! Every parser returns [`Error::Parse`] or [`Error::Invalid`] on bad input; none panics.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::ExactInt;
use crate::error::{Error, Result};
use crate::families::{BettiPoly, Quiver};
use crate::graph::Graph;

/// Largest vertex count accepted from a file.
pub const MAX_VERTICES: usize = 4096;
/// Largest edge count accepted from a file.
pub const MAX_EDGES: usize = 1 << 16;
/// Largest degree accepted in a Betti file.
pub const MAX_DEGREE: usize = 1 << 22;
/// Largest dimension-vector entry accepted in a quiver file.
pub const MAX_DIM: u32 = 1 << 16;

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct QuiverFile {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    v: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    w: Option<Vec<u32>>,
}

#[derive(Deserialize, Serialize)]
struct BettiFile {
    family: String,
    #[serde(default)]
    params: BTreeMap<String, Value>,
    dim_shift: i64,
    coefficients: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    complex_dim: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    core_dim: Option<i64>,
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn check_size(what: &str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::SizeCap(format!("{what} = {n} exceeds {cap}")));
    }
    Ok(())
}

pub fn parse_graph_json(text: &str) -> Result<Graph> {
    let f: GraphFile = serde_json::from_str(text).map_err(json_err)?;
    check_size("vertices", f.vertices, MAX_VERTICES)?;
    check_size("edges", f.edges.len(), MAX_EDGES)?;
    Graph::new(f.vertices, &f.edges)
}

pub fn graph_to_json(g: &Graph) -> String {
    let f = GraphFile { vertices: g.num_vertices(), edges: g.edges().to_vec() };
    serde_json::to_string(&f).expect("plain data serializes")
}

pub fn parse_quiver_json(text: &str) -> Result<Quiver> {
    let f: QuiverFile = serde_json::from_str(text).map_err(json_err)?;
    check_size("vertices", f.vertices, MAX_VERTICES)?;
    check_size("edges", f.edges.len(), MAX_EDGES)?;
    for (name, vec) in [("v", Some(&f.v)), ("w", f.w.as_ref())] {
        if let Some(x) = vec.and_then(|v| v.iter().find(|&&x| x > MAX_DIM)) {
            return Err(Error::SizeCap(format!("{name} entry {x} exceeds {MAX_DIM}")));
        }
    }
    Quiver::new(f.vertices, f.edges, f.v, f.w)
}

pub fn quiver_to_json(q: &Quiver) -> String {
    let f = QuiverFile { vertices: q.vertices, edges: q.edges.clone(), v: q.v.clone(), w: Some(q.w.clone()) };
    serde_json::to_string(&f).expect("plain data serializes")
}

fn parse_int(s: &str, what: &str) -> Result<ExactInt> {
    let t = s.trim();
    let digits = t.strip_prefix('-').unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("{what}: `{s}` is not a decimal integer")));
    }
    t.parse().map_err(|_| Error::Parse(format!("{what}: `{s}` is not a decimal integer")))
}

/// Pretty JSON with coefficients as decimal strings.
pub fn betti_to_json(p: &BettiPoly) -> String {
    let f = BettiFile {
        family: p.family.clone(),
        params: p.params.clone(),
        dim_shift: p.dim_shift,
        coefficients: p.coefficients.iter().map(|c| c.to_string()).collect(),
        complex_dim: Some(p.complex_dim),
        core_dim: p.core_dim,
    };
    serde_json::to_string_pretty(&f).expect("plain data serializes") + "\n"
}

/// Parses Betti JSON. A missing `complex_dim` defaults to half the degree.
pub fn parse_betti_json(text: &str) -> Result<BettiPoly> {
    let f: BettiFile = serde_json::from_str(text).map_err(json_err)?;
    check_size("degree", f.coefficients.len(), MAX_DEGREE)?;
    let coefficients = f
        .coefficients
        .iter()
        .enumerate()
        .map(|(i, s)| parse_int(s, &format!("coefficient {i}")))
        .collect::<Result<Vec<_>>>()?;
    let complex_dim = f.complex_dim.unwrap_or((coefficients.len().saturating_sub(1) / 2) as i64);
    BettiPoly::new(&f.family, f.params, coefficients, complex_dim, f.core_dim, f.dim_shift)
        .map_err(|e| Error::Invalid(e.to_string()))
}

/// `degree,coefficient` rows for the nonzero coefficients, LF line endings.
pub fn coefficients_to_csv(c: &[ExactInt]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(["degree", "coefficient"]).expect("in-memory write");
    for (i, x) in c.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        w.write_record([i.to_string(), x.to_string()]).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

pub fn betti_to_csv(p: &BettiPoly) -> String {
    coefficients_to_csv(&p.coefficients)
}

/// Dense coefficients from `degree,coefficient` CSV. Absent degrees are zero;
/// repeated degrees and negative values are rejected.
pub fn parse_betti_csv(text: &str) -> Result<Vec<ExactInt>> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| Error::Parse(e.to_string()))?;
    if header.len() != 2 || &header[0] != "degree" || &header[1] != "coefficient" {
        return Err(Error::Parse("expected header `degree,coefficient`".into()));
    }
    let mut rows: BTreeMap<usize, ExactInt> = BTreeMap::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        if rec.len() != 2 {
            return Err(Error::Parse(format!("row {}: expected 2 fields, got {}", line + 1, rec.len())));
        }
        let d = parse_int(&rec[0], "degree")?;
        let d: usize = usize::try_from(&d)
            .ok()
            .filter(|&d| d <= MAX_DEGREE)
            .ok_or_else(|| Error::Invalid(format!("row {}: degree {d} out of range", line + 1)))?;
        let c = parse_int(&rec[1], "coefficient")?;
        if c.is_negative() {
            return Err(Error::Invalid(format!("row {}: negative coefficient {c}", line + 1)));
        }
        if rows.insert(d, c).is_some() {
            return Err(Error::Invalid(format!("row {}: degree {d} repeated", line + 1)));
        }
    }
    let len = rows.keys().next_back().map_or(0, |&d| d + 1);
    let mut out = vec![ExactInt::zero(); len];
    for (d, c) in rows {
        out[d] = c;
    }
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    Ok(out)
}

/// Coefficients from either Betti JSON or CSV, detected by the first non-blank byte.
pub fn read_coefficients(text: &str) -> Result<Vec<ExactInt>> {
    if text.trim_start().starts_with('{') {
        Ok(parse_betti_json(text)?.coefficients)
    } else {
        parse_betti_csv(text)
    }
}

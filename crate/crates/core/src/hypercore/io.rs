//! Text and JSON serialization of hypergraphs.
//!
//! Text format: the first non-comment line is `k n m`, followed by exactly
//! `m` lines of `k` strictly increasing vertex indices. Lines starting with
//! `#` are comments. Readers accept edges in any order; writers emit the
//! canonical lexicographic order.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Hypergraph, Meta};
use crate::error::{Error, Result};

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        msg: msg.into(),
    })
}

pub fn read_hg<R: BufRead>(reader: R) -> Result<Hypergraph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<Vec<u32>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut last_line = 0;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.starts_with('#') || trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let Some((k, n, m)) = header else {
            let nums: Vec<usize> = match fields.iter().map(|f| f.parse()).collect() {
                Ok(v) => v,
                Err(_) => return parse_err(lineno, format!("malformed header {trimmed:?}")),
            };
            let [k, n, m] = nums[..] else {
                return parse_err(lineno, "header must be `k n m`");
            };
            if k == 0 {
                return parse_err(lineno, "uniformity must be positive");
            }
            header = Some((k, n, m));
            continue;
        };
        if edges.len() == m {
            return parse_err(lineno, format!("more than the declared {m} edges"));
        }
        let verts: Vec<u32> = match fields.iter().map(|f| f.parse()).collect() {
            Ok(v) => v,
            Err(_) => return parse_err(lineno, format!("malformed edge {trimmed:?}")),
        };
        if verts.len() != k {
            return parse_err(lineno, format!("edge has {} vertices, expected {k}", verts.len()));
        }
        if verts.windows(2).any(|w| w[0] >= w[1]) {
            return parse_err(lineno, "edge vertices are not strictly increasing");
        }
        if let Some(&v) = verts.last() {
            if v as usize >= n {
                return parse_err(lineno, format!("vertex {v} out of range 0..{n}"));
            }
        }
        if !seen.insert(verts.clone()) {
            return parse_err(lineno, "duplicate edge");
        }
        edges.push(verts);
    }
    let Some((k, n, m)) = header else {
        return parse_err(last_line.max(1), "missing `k n m` header");
    };
    if edges.len() != m {
        return parse_err(last_line, format!("declared {m} edges but found {}", edges.len()));
    }
    Hypergraph::new(n, k, edges)
}

pub fn write_hg<W: Write>(h: &Hypergraph, mut w: W) -> Result<()> {
    writeln!(w, "{} {} {}", h.k(), h.n(), h.m())?;
    for e in h.edges() {
        let mut first = true;
        for v in e {
            if !first {
                w.write_all(b" ")?;
            }
            write!(w, "{v}")?;
            first = false;
        }
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct HgJson {
    k: usize,
    n: usize,
    edges: Vec<Vec<u32>>,
    #[serde(default)]
    meta: Meta,
}

pub fn to_json(h: &Hypergraph) -> serde_json::Value {
    serde_json::to_value(HgJson {
        k: h.k(),
        n: h.n(),
        edges: h.edges().map(<[u32]>::to_vec).collect(),
        meta: h.meta().clone(),
    })
    .expect("hypergraph serializes")
}

pub fn read_json<R: std::io::Read>(reader: R) -> Result<Hypergraph> {
    let raw: HgJson = serde_json::from_reader(reader)?;
    for (i, e) in raw.edges.iter().enumerate() {
        if e.windows(2).any(|w| w[0] >= w[1]) {
            return parse_err(i + 1, format!("edge {e:?} is not strictly increasing"));
        }
    }
    let mut h = Hypergraph::new(raw.n, raw.k, raw.edges)?;
    *h.meta_mut() = raw.meta;
    Ok(h)
}

pub fn write_json<W: Write>(h: &Hypergraph, w: W) -> Result<()> {
    serde_json::to_writer_pretty(w, &to_json(h))?;
    Ok(())
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// Reads a hypergraph file; `.json` selects the JSON mirror.
pub fn load(path: impl AsRef<Path>) -> Result<Hypergraph> {
    let path = path.as_ref();
    let file = BufReader::new(File::open(path)?);
    if is_json(path) {
        read_json(file)
    } else {
        read_hg(file)
    }
}

pub fn save(h: &Hypergraph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = BufWriter::new(File::create(path)?);
    if is_json(path) {
        write_json(h, file)
    } else {
        write_hg(h, file)
    }
}

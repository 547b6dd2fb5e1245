//! Canonical edge-list text format and `key=value` reports.
//!
//! An edge list starts with a header line `<n> <m>` followed by exactly `m`
//! lines `<u> <v>` with `u < v`, sorted lexicographically. Lines starting with
//! `#` are comments and blank lines are ignored.

use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse { line: 0, message: "missing header".into() })?;
    let (n, m) = parse_pair(header, hline)?;

    let mut edges = Vec::with_capacity(m);
    let mut prev: Option<(Vertex, Vertex)> = None;
    for (line, text) in lines {
        if edges.len() == m {
            return Err(perr(line, format!("more than the declared {m} edges")));
        }
        let (u, v) = parse_pair(text, line)?;
        if u == v {
            return Err(perr(line, "self-loop"));
        }
        if u >= n || v >= n {
            return Err(perr(line, format!("vertex out of range for n = {n}")));
        }
        if u > v {
            return Err(perr(line, "edge endpoints not in ascending order"));
        }
        if let Some(p) = prev {
            if p == (u, v) {
                return Err(perr(line, "duplicate edge"));
            }
            if p > (u, v) {
                return Err(perr(line, "edges not sorted"));
            }
        }
        prev = Some((u, v));
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(perr(hline, format!("header declares {m} edges but {} were given", edges.len())));
    }
    Graph::from_edges(n, edges)
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_pair(text: &str, line: usize) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| perr(line, "expected two integers"))?
            .parse()
            .map_err(|_| perr(line, "malformed integer"))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(perr(line, "trailing tokens"));
    }
    Ok((a, b))
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = String::with_capacity(16 + 12 * g.edge_count());
    writeln!(s, "{} {}", g.vertex_count(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

/// Ordered `key=value` lines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        let key = key.into();
        debug_assert!(!key.contains('=') && !key.contains('\n'));
        self.entries.push((key, value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut r = Report::new();
        for (i, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| perr(i + 1, "expected key=value"))?;
            if k.is_empty() {
                return Err(perr(i + 1, "empty key"));
            }
            r.push(k, v);
        }
        Ok(r)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

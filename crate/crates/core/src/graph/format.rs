//! Text encodings: the line-oriented multigraph format and graph6.
//!
//! ```text
//! # theta graph
//! vertices 2
//! edge 0 1
//! edge 0 1
//! edge 0 1
//! ```

use std::fmt::Write as _;

use super::MultiGraph;
use crate::error::{Error, Result};

const GRAPH6_HEADER: &str = ">>graph6<<";

impl MultiGraph {
    /// Parses the multigraph text format. Edge order defines edge ids.
    pub fn parse_text(input: &str) -> Result<Self> {
        let mut vertex_count = None;
        let mut edges = Vec::new();
        for (idx, raw) in input.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            match words.next() {
                Some("vertices") => {
                    if vertex_count.is_some() {
                        return Err(Error::parse(line_no, "duplicate `vertices` line"));
                    }
                    if !edges.is_empty() {
                        return Err(Error::parse(line_no, "`vertices` must precede edges"));
                    }
                    vertex_count = Some(parse_number(words.next(), line_no)?);
                }
                Some("edge") => {
                    if vertex_count.is_none() {
                        return Err(Error::parse(line_no, "`edge` before `vertices`"));
                    }
                    let a = parse_number(words.next(), line_no)?;
                    let b = parse_number(words.next(), line_no)?;
                    edges.push((a, b));
                }
                Some(other) => {
                    return Err(Error::parse(line_no, format!("unknown directive `{other}`")))
                }
                None => unreachable!(),
            }
            if words.next().is_some() {
                return Err(Error::parse(line_no, "trailing tokens"));
            }
        }
        let vertex_count =
            vertex_count.ok_or_else(|| Error::parse(0, "missing `vertices` line"))?;
        MultiGraph::new(vertex_count, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("vertices {}\n", self.vertex_count);
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "edge {a} {b}");
        }
        out
    }

    /// Parses a graph6 string. Edge ids follow graph6 column order:
    /// `(i, j)` for `j` ascending, then `i < j` ascending.
    pub fn from_graph6(input: &str) -> Result<Self> {
        let s = input.trim();
        let s = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s);
        let bytes = s.as_bytes();
        if bytes.is_empty() {
            return Err(Error::parse(1, "empty graph6 string"));
        }
        if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
            return Err(Error::parse(1, format!("invalid graph6 byte {b:#x}")));
        }
        let (n, rest) = if bytes[0] != 126 {
            (usize::from(bytes[0] - 63), &bytes[1..])
        } else if bytes.len() >= 4 && bytes[1] != 126 {
            (sextets(&bytes[1..4]), &bytes[4..])
        } else if bytes.len() >= 8 {
            (sextets(&bytes[2..8]), &bytes[8..])
        } else {
            return Err(Error::parse(1, "truncated graph6 size"));
        };
        let pairs = n * n.saturating_sub(1) / 2;
        if rest.len() != pairs.div_ceil(6) {
            return Err(Error::parse(
                1,
                format!("graph6 body has {} bytes, expected {}", rest.len(), pairs.div_ceil(6)),
            ));
        }
        let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
        let mut edges = Vec::new();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if bit(k) {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        MultiGraph::new(n, edges)
    }

    pub fn to_graph6(&self) -> Result<String> {
        if !self.is_simple() {
            return Err(Error::NotSimple);
        }
        let n = self.vertex_count;
        let mut out = Vec::new();
        if n < 63 {
            out.push(n as u8 + 63);
        } else if n < 258_048 {
            out.push(126);
            out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
        } else {
            out.extend([126, 126]);
            out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
        }
        let mut adj = vec![false; n * n];
        for &(a, b) in &self.edges {
            adj[a * n + b] = true;
            adj[b * n + a] = true;
        }
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..n {
            for i in 0..j {
                acc = acc << 1 | u8::from(adj[i * n + j]);
                filled += 1;
                if filled == 6 {
                    out.push(acc + 63);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push((acc << (6 - filled)) + 63);
        }
        Ok(String::from_utf8(out).expect("graph6 is ASCII"))
    }

    /// Accepts either encoding: text when the first meaningful line starts
    /// with `vertices`, graph6 otherwise.
    pub fn parse_any(input: &str) -> Result<Self> {
        let first = input
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty());
        match first {
            Some(line) if line.starts_with("vertices") => MultiGraph::parse_text(input),
            Some(line) => MultiGraph::from_graph6(line),
            None => Err(Error::parse(0, "empty input")),
        }
    }
}

fn sextets(bytes: &[u8]) -> usize {
    bytes
        .iter()
        .fold(0, |acc, &b| acc << 6 | usize::from(b - 63))
}

fn parse_number(word: Option<&str>, line: usize) -> Result<usize> {
    let word = word.ok_or_else(|| Error::parse(line, "missing number"))?;
    word.parse()
        .map_err(|_| Error::parse(line, format!("`{word}` is not a non-negative integer")))
}

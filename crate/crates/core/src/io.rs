//! graph6 and plain edge-list serialization.
//!
//! graph6 reference: <https://users.cecs.anu.edu.au/~bdm/data/formats.txt>

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    // n <= 32 always fits the one-byte size prefix
    let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut used = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            used += 1;
            if used == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push(((acc << (6 - used)) + 63) as char);
    }
    out
}

pub fn from_graph6(line: &str) -> Result<Graph> {
    let s = line.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty string".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("byte {b} outside 63..=126")));
    }
    let (n, body) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else if bytes.len() >= 4 && bytes[1] != 126 {
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |a, &b| (a << 6) | (b - 63) as usize);
        (n, &bytes[4..])
    } else if bytes.len() >= 8 {
        let n = bytes[2..8]
            .iter()
            .fold(0usize, |a, &b| (a << 6) | (b - 63) as usize);
        (n, &bytes[8..])
    } else {
        return Err(Error::Graph6("truncated size prefix".into()));
    };
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    if body.len() != nbits.div_ceil(6) {
        return Err(Error::Graph6(format!(
            "expected {} data bytes for n={n}, found {}",
            nbits.div_ceil(6),
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
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
    for pad in nbits..body.len() * 6 {
        if bit(pad) {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Read every graph6 line of `text`, skipping blank lines and `#` comments.
pub fn read_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(from_graph6)
        .collect()
}

/// "n m" header then one "u v" line per edge, 0-indexed.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn from_edge_list(text: &str) -> Result<Graph> {
    let graphs = read_edge_lists(text)?;
    match graphs.len() {
        1 => Ok(graphs[0]),
        k => Err(Error::EdgeList(format!("expected one graph, found {k}"))),
    }
}

/// Parse a concatenation of edge-list records.
pub fn read_edge_lists(text: &str) -> Result<Vec<Graph>> {
    let mut nums = Vec::new();
    for tok in text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .flat_map(str::split_whitespace)
    {
        nums.push(
            tok.parse::<usize>()
                .map_err(|_| Error::EdgeList(format!("bad integer `{tok}`")))?,
        );
    }
    let mut out = Vec::new();
    let mut it = nums.into_iter();
    while let Some(n) = it.next() {
        let m = it
            .next()
            .ok_or_else(|| Error::EdgeList("missing edge count".into()))?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            match (it.next(), it.next()) {
                (Some(u), Some(v)) => edges.push((u, v)),
                _ => return Err(Error::EdgeList(format!("expected {m} edges"))),
            }
        }
        let g = Graph::from_edges(n, &edges)?;
        if g.m() != m {
            return Err(Error::EdgeList("duplicate edges".into()));
        }
        out.push(g);
    }
    Ok(out)
}

/// Parse either format, deciding by content: edge lists start with a digit.
pub fn read_graphs(text: &str) -> Result<Vec<Graph>> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.as_bytes()[0].is_ascii_digit() && l.split_whitespace().count() == 2 => {
            read_edge_lists(text)
        }
        _ => read_graph6_lines(text),
    }
}

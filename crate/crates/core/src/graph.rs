//! Simple undirected graphs on at most 32 vertices, stored as per-vertex
//! neighbourhood bitsets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 32;

/// Iterate over the set bits of `mask`, lowest first.
pub fn bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Mask with the lowest `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Keep the bits of `mask` selected by `keep`, packed towards bit 0.
#[inline]
fn compress(mask: u32, keep: u32) -> u32 {
    let mut out = 0u32;
    for (i, v) in bits(keep).enumerate() {
        if mask & (1 << v) != 0 {
            out |= 1 << i;
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: [u32; MAX_VERTICES],
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            adj: [0; MAX_VERTICES],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Build from raw adjacency rows, checking symmetry and irreflexivity.
    pub fn from_adjacency(rows: &[u32]) -> Result<Self> {
        let n = rows.len();
        let mut g = Graph::empty(n)?;
        let all = full_mask(n);
        for (v, &r) in rows.iter().enumerate() {
            if r & !all != 0 {
                return Err(Error::VertexOutOfRange {
                    v: 31 - r.leading_zeros() as usize,
                    n,
                });
            }
            if r & (1 << v) != 0 {
                return Err(Error::Loop(v));
            }
            g.adj[v] = r;
        }
        for v in 0..n {
            for u in bits(g.adj[v]) {
                if g.adj[u] & (1 << v) == 0 {
                    return Err(Error::Invariant(format!(
                        "adjacency not symmetric at {{{u},{v}}}"
                    )));
                }
            }
        }
        Ok(g)
    }

    fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { v: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj[..self.n]
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    #[inline]
    pub fn adj(&self, v: usize) -> u32 {
        self.adj[v]
    }

    pub fn rows(&self) -> &[u32] {
        &self.adj[..self.n]
    }

    #[inline]
    pub fn vertex_mask(&self) -> u32 {
        full_mask(self.n)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & (1 << v) != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    /// Edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n {
            for v in bits(self.adj[u] & !full_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            let missing = !self.adj[u] & self.vertex_mask() & !full_mask(u + 1);
            for v in bits(missing) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn isolated_vertices(&self) -> u32 {
        (0..self.n)
            .filter(|&v| self.adj[v] == 0)
            .fold(0, |m, v| m | 1 << v)
    }

    /// Number of edges with both ends in `mask`.
    pub fn edges_within(&self, mask: u32) -> usize {
        bits(mask)
            .map(|v| (self.adj[v] & mask).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        let mut g = *self;
        g.try_add_edge(u, v)?;
        Ok(g)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Self {
        let mut g = *self;
        if u < self.n && v < self.n {
            g.adj[u] &= !(1 << v);
            g.adj[v] &= !(1 << u);
        }
        g
    }

    /// Subgraph induced on `keep`, relabelled so the kept vertices keep their
    /// relative order.
    pub fn induced(&self, keep: u32) -> Self {
        let keep = keep & self.vertex_mask();
        let mut g = Graph {
            n: keep.count_ones() as usize,
            adj: [0; MAX_VERTICES],
        };
        for (i, v) in bits(keep).enumerate() {
            g.adj[i] = compress(self.adj[v], keep);
        }
        g
    }

    pub fn remove_vertices(&self, del: u32) -> Self {
        self.induced(self.vertex_mask() & !del)
    }

    pub fn remove_vertex(&self, v: usize) -> Self {
        self.remove_vertices(1 << v)
    }

    /// Contract the edge (or vertex pair) `{u, v}`: the merged vertex takes the
    /// smaller label and the union of both neighbourhoods; the larger label is
    /// removed and later vertices shift down by one.
    pub fn contract(&self, u: usize, v: usize) -> Self {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        let mut g = *self;
        let merged = (g.adj[a] | g.adj[b]) & !(1 << a) & !(1 << b);
        for w in bits(g.adj[b]) {
            g.adj[w] &= !(1 << b);
        }
        for w in bits(g.adj[a]) {
            g.adj[w] &= !(1 << a);
        }
        g.adj[a] = merged;
        g.adj[b] = 0;
        for w in bits(merged) {
            g.adj[w] |= 1 << a;
        }
        g.remove_vertex(b)
    }

    /// Relabel so that old vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Graph {
            n: self.n,
            adj: [0; MAX_VERTICES],
        };
        for v in 0..self.n {
            let mut row = 0u32;
            for u in bits(self.adj[v]) {
                row |= 1 << perm[u];
            }
            g.adj[perm[v]] = row;
        }
        g
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Self> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut g = *self;
        g.n = n;
        for v in 0..other.n {
            g.adj[self.n + v] = other.adj[v] << self.n;
        }
        Ok(g)
    }

    /// Append `count` isolated vertices.
    pub fn add_vertices(&self, count: usize) -> Result<Self> {
        let n = self.n + count;
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut g = *self;
        g.n = n;
        Ok(g)
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: usize, within: u32) -> u32 {
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connected components of the subgraph induced on `within`.
    pub fn components_within(&self, within: u32) -> Vec<u32> {
        let mut rest = within & self.vertex_mask();
        let mut out = Vec::new();
        while rest != 0 {
            let c = self.reach(rest.trailing_zeros() as usize, rest);
            out.push(c);
            rest &= !c;
        }
        out
    }

    pub fn components(&self) -> Vec<u32> {
        self.components_within(self.vertex_mask())
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach(0, self.vertex_mask()) == self.vertex_mask()
    }

    /// Bridges as `(u, v)` pairs with `u < v`.
    pub fn bridges(&self) -> Vec<(usize, usize)> {
        let all = self.vertex_mask();
        self.edges()
            .into_iter()
            .filter(|&(u, v)| {
                let h = self.without_edge(u, v);
                h.reach(u, all) & (1 << v) == 0
            })
            .collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Named constructions used throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NamedGraph {
    /// Complete graph `K_r`.
    Complete(usize),
    /// `K_r` minus one edge.
    CompleteMinus(usize),
    /// Cycle `C_r`.
    Cycle(usize),
    /// `r` disjoint triangles.
    Triangles(usize),
    /// Two triangles sharing vertex 0.
    Butterfly,
    /// Path on `r` vertices.
    Path(usize),
}

impl NamedGraph {
    pub fn build(self) -> Result<Graph> {
        let range = |param: &'static str, r: usize, lo: usize, hi: usize| {
            if r < lo || r > hi {
                Err(Error::OutOfRange {
                    param,
                    detail: format!("{r} not in {lo}..={hi}"),
                })
            } else {
                Ok(())
            }
        };
        match self {
            NamedGraph::Complete(r) => {
                range("r", r, 1, MAX_VERTICES)?;
                let mut g = Graph::empty(r)?;
                for v in 0..r {
                    g.adj[v] = full_mask(r) & !(1 << v);
                }
                Ok(g)
            }
            NamedGraph::CompleteMinus(r) => {
                range("r", r, 2, MAX_VERTICES)?;
                Ok(NamedGraph::Complete(r).build()?.without_edge(0, 1))
            }
            NamedGraph::Cycle(r) => {
                range("r", r, 3, MAX_VERTICES)?;
                let edges: Vec<_> = (0..r).map(|i| (i, (i + 1) % r)).collect();
                Graph::from_edges(r, &edges)
            }
            NamedGraph::Triangles(r) => {
                range("r", r, 1, MAX_VERTICES / 3)?;
                let edges: Vec<_> = (0..r)
                    .flat_map(|t| {
                        [
                            (3 * t, 3 * t + 1),
                            (3 * t + 1, 3 * t + 2),
                            (3 * t, 3 * t + 2),
                        ]
                    })
                    .collect();
                Graph::from_edges(3 * r, &edges)
            }
            NamedGraph::Butterfly => {
                Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
            }
            NamedGraph::Path(r) => {
                range("r", r, 1, MAX_VERTICES)?;
                let edges: Vec<_> = (1..r).map(|i| (i - 1, i)).collect();
                Graph::from_edges(r, &edges)
            }
        }
    }
}

impl FromStr for NamedGraph {
    type Err = Error;

    /// Accepts `K4`, `K4_minus` (or `K4-`), `C5`, `3K3`, `Z`, `P4`.
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownName(s.to_string());
        let num = |t: &str| t.parse::<usize>().map_err(|_| unknown());
        let t = s.trim();
        if t == "Z" {
            return Ok(NamedGraph::Butterfly);
        }
        if let Some(r) = t.strip_suffix("K3") {
            if !r.is_empty() && r.bytes().all(|b| b.is_ascii_digit()) {
                return Ok(NamedGraph::Triangles(num(r)?));
            }
        }
        if let Some(rest) = t.strip_prefix('K') {
            if let Some(r) = rest
                .strip_suffix("_minus")
                .or_else(|| rest.strip_suffix('-'))
            {
                return Ok(NamedGraph::CompleteMinus(num(r)?));
            }
            return Ok(NamedGraph::Complete(num(rest)?));
        }
        if let Some(rest) = t.strip_prefix('C') {
            return Ok(NamedGraph::Cycle(num(rest)?));
        }
        if let Some(rest) = t.strip_prefix('P') {
            return Ok(NamedGraph::Path(num(rest)?));
        }
        Err(unknown())
    }
}

/// Build a named graph from its textual name, e.g. `"K4_minus"` or `"2K3"`.
pub fn make_named(name: &str) -> Result<Graph> {
    name.parse::<NamedGraph>()?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn butterfly_degrees() {
        let z = make_named("Z").unwrap();
        let mut d = z.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(d, vec![4, 2, 2, 2, 2]);
        assert_eq!(z.m(), 6);
    }

    #[test]
    fn named_sizes() {
        let k3 = make_named("K3").unwrap();
        assert_eq!((k3.n(), k3.m()), (3, 3));
        let two = make_named("2K3").unwrap();
        assert_eq!((two.n(), two.m(), two.component_count()), (6, 6, 2));
        let km = make_named("K4_minus").unwrap();
        assert_eq!((km.n(), km.m()), (4, 5));
        assert_eq!(make_named("K4-").unwrap(), km);
        assert_eq!(make_named("P4").unwrap().m(), 3);
        assert!(make_named("Q7").is_err());
        assert!(make_named("C2").is_err());
        assert!(make_named("11K3").is_err());
    }

    #[test]
    fn contraction_merges_neighbourhoods() {
        let c5 = make_named("C5").unwrap();
        let c4 = c5.contract(0, 1);
        assert_eq!((c4.n(), c4.m()), (4, 4));
        assert!(c4.degrees().iter().all(|&d| d == 2));
        // contracting a triangle edge drops the parallel edge
        let k3 = make_named("K3").unwrap().contract(1, 2);
        assert_eq!((k3.n(), k3.m()), (2, 1));
    }

    #[test]
    fn induced_and_union() {
        let z = make_named("Z").unwrap();
        let forest = z.remove_vertex(0);
        assert_eq!((forest.n(), forest.m()), (4, 2));
        let u = z.disjoint_union(&z).unwrap();
        assert_eq!((u.n(), u.m(), u.component_count()), (10, 12, 2));
        assert!(Graph::empty(33).is_err());
    }

    #[test]
    fn bridges_of_path_and_cycle() {
        assert_eq!(make_named("P4").unwrap().bridges().len(), 3);
        assert!(make_named("C6").unwrap().bridges().is_empty());
    }

    #[test]
    fn adjacency_validation() {
        assert!(Graph::from_adjacency(&[0b10, 0b00]).is_err());
        assert!(Graph::from_adjacency(&[0b01]).is_err());
        assert!(Graph::from_adjacency(&[0b10, 0b01]).is_ok());
    }
}

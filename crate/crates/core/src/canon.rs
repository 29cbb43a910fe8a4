//! Canonical labelling by individualization and refinement.
//!
//! The search tree starts from the coarsest equitable partition. Each node
//! individualizes one vertex of the first smallest non-singleton cell and
//! refines again. A leaf (discrete partition) yields a relabelled adjacency
//! matrix; the canonical form is the leaf with the smallest
//! (refinement trace, adjacency) pair. Subtrees are skipped when their trace
//! already exceeds the best one, or when an automorphism found at an earlier
//! leaf, fixing the current individualized prefix, maps one candidate onto
//! another.

use crate::graph::{bits, Graph};

/// Canonical byte string: the vertex count followed by the canonically
/// relabelled adjacency rows (little endian). Equal iff isomorphic.
pub fn canonical_form(g: &Graph) -> Vec<u8> {
    let (_, rows) = canonical_labeling(g);
    let mut out = Vec::with_capacity(1 + 4 * rows.len());
    out.push(g.n() as u8);
    let width = g.n().div_ceil(8);
    for r in rows {
        out.extend_from_slice(&r.to_le_bytes()[..width]);
    }
    out
}

/// The canonically relabelled graph.
pub fn canonical_graph(g: &Graph) -> Graph {
    let (lab, _) = canonical_labeling(g);
    let mut perm = vec![0; g.n()];
    for (pos, &v) in lab.iter().enumerate() {
        perm[v as usize] = pos;
    }
    g.permute(&perm)
}

/// Returns `lab` (canonical position -> original vertex) and the adjacency rows
/// of the relabelled graph.
pub fn canonical_labeling(g: &Graph) -> (Vec<u8>, Vec<u32>) {
    let n = g.n();
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let mut s = Search::new(g);
    let mut cells = vec![g.vertex_mask()];
    let t0 = refine(g, &mut cells);
    s.traces.push(t0);
    let _ = s.dfs(cells, 0);
    let best = s.best.expect("search visits at least one leaf");
    (best.lab, best.rows)
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    let mut z = h ^ x
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(h << 6)
        .wrapping_add(h >> 2);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Refine `cells` to the coarsest equitable partition below it. Cells split
/// by their neighbour counts into every cell, with the pieces ordered by that
/// count vector, so the result depends only on the isomorphism class of
/// (graph, ordered partition). Returns a hash of the refinement history.
fn refine(g: &Graph, cells: &mut Vec<u32>) -> u64 {
    let mut trace = cells.len() as u64;
    let mut keyed: Vec<(Vec<u8>, usize)> = Vec::new();
    loop {
        let mut next = Vec::with_capacity(g.n());
        let mut changed = false;
        for (ci, &cell) in cells.iter().enumerate() {
            if cell & (cell - 1) == 0 {
                next.push(cell);
                continue;
            }
            keyed.clear();
            for v in bits(cell) {
                let key: Vec<u8> = cells
                    .iter()
                    .map(|&c| (g.adj(v) & c).count_ones() as u8)
                    .collect();
                keyed.push((key, v));
            }
            keyed.sort_unstable();
            let mut start = 0;
            let mut pieces = 0;
            while start < keyed.len() {
                let mut end = start + 1;
                while end < keyed.len() && keyed[end].0 == keyed[start].0 {
                    end += 1;
                }
                next.push(keyed[start..end].iter().fold(0u32, |m, (_, v)| m | 1 << v));
                trace = mix(trace, ci as u64);
                trace = mix(trace, (end - start) as u64);
                for &c in &keyed[start].0 {
                    trace = mix(trace, c as u64);
                }
                pieces += 1;
                start = end;
            }
            changed |= pieces > 1;
        }
        *cells = next;
        if !changed {
            return trace;
        }
    }
}

struct Leaf {
    traces: Vec<u64>,
    rows: Vec<u32>,
    lab: Vec<u8>,
    path: Vec<usize>,
}

impl Leaf {
    fn cert(&self) -> (&[u64], &[u32]) {
        (&self.traces, &self.rows)
    }
}

struct Search<'a> {
    g: &'a Graph,
    traces: Vec<u64>,
    path: Vec<usize>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    /// Automorphisms found so far, as vertex maps.
    autos: Vec<Vec<u8>>,
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph) -> Self {
        Search {
            g,
            traces: Vec::new(),
            path: Vec::new(),
            first: None,
            best: None,
            autos: Vec::new(),
        }
    }

    /// Compare the current trace prefix with the best leaf's traces.
    fn prefix_cmp(&self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        let Some(best) = &self.best else { return Less };
        for (i, t) in self.traces.iter().enumerate() {
            if i >= best.traces.len() {
                // best is a proper prefix of every leaf below here
                return Greater;
            }
            match t.cmp(&best.traces[i]) {
                Equal => continue,
                o => return o,
            }
        }
        Equal
    }

    /// Explore the node whose partition is `cells`. Returns `Some(level)` when
    /// an automorphism shows that everything below the ancestor at `level` on
    /// the current path is already covered.
    fn dfs(&mut self, cells: Vec<u32>, fixed: u32) -> Option<usize> {
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .map(|(i, _)| i);
        let Some(t) = target else {
            return self.leaf(&cells);
        };
        let depth = self.path.len();
        let cell = cells[t];
        let mut tried: Vec<usize> = Vec::new();
        for v in bits(cell) {
            if !tried.is_empty() && self.equivalent_to_tried(v, &tried, fixed) {
                continue;
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..t]);
            child.push(1 << v);
            child.push(cell & !(1 << v));
            child.extend_from_slice(&cells[t + 1..]);
            let tr = refine(self.g, &mut child);
            self.traces.push(tr);
            self.path.push(v);
            let jump = if self.prefix_cmp() != std::cmp::Ordering::Greater {
                self.dfs(child, fixed | 1 << v)
            } else {
                None
            };
            self.path.pop();
            self.traces.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    /// Is `v` in the orbit of an already explored sibling under the
    /// automorphisms that fix every vertex of `fixed`?
    fn equivalent_to_tried(&self, v: usize, tried: &[usize], fixed: u32) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for a in &self.autos {
            if bits(fixed).any(|w| a[w] as usize != w) {
                continue;
            }
            any = true;
            for x in 0..n {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, a[x] as usize));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&u| find(&mut parent, u) == rv)
    }

    fn leaf(&mut self, cells: &[u32]) -> Option<usize> {
        let n = self.g.n();
        let lab: Vec<u8> = cells.iter().map(|c| c.trailing_zeros() as u8).collect();
        let mut pos = [0u8; 32];
        for (p, &v) in lab.iter().enumerate() {
            pos[v as usize] = p as u8;
        }
        let rows: Vec<u32> = lab
            .iter()
            .map(|&v| bits(self.g.adj(v as usize)).fold(0u32, |r, u| r | 1 << pos[u]))
            .collect();
        let leaf = Leaf {
            traces: self.traces.clone(),
            rows,
            lab,
            path: self.path.clone(),
        };
        // sends our vertex at position p to the other leaf's vertex at p
        let auto_to = |other: &Leaf| -> Vec<u8> {
            let mut a = vec![0u8; n];
            for p in 0..n {
                a[leaf.lab[p] as usize] = other.lab[p];
            }
            a
        };
        let Some(first) = &self.first else {
            self.first = Some(Leaf {
                traces: leaf.traces.clone(),
                rows: leaf.rows.clone(),
                lab: leaf.lab.clone(),
                path: leaf.path.clone(),
            });
            self.best = Some(leaf);
            return None;
        };
        if first.cert() == leaf.cert() {
            let a = auto_to(first);
            let level = common_prefix(&leaf.path, &first.path);
            self.autos.push(a);
            return Some(level);
        }
        let best = self.best.as_ref().expect("best is set together with first");
        match leaf.cert().cmp(&best.cert()) {
            std::cmp::Ordering::Less => {
                if leaf.rows == first.rows {
                    let a = auto_to(first);
                    self.autos.push(a);
                }
                self.best = Some(leaf);
                None
            }
            std::cmp::Ordering::Equal => {
                let a = auto_to(best);
                let level = common_prefix(&leaf.path, &best.path);
                self.autos.push(a);
                Some(level)
            }
            std::cmp::Ordering::Greater => {
                if leaf.rows == best.rows || leaf.rows == first.rows {
                    let other = if leaf.rows == best.rows { best } else { first };
                    let a = auto_to(other);
                    self.autos.push(a);
                }
                None
            }
        }
    }
}

/// Isomorphism test via canonical forms.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.m() == b.m() && canonical_form(a) == canonical_form(b)
}

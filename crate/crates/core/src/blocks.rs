//! Blocks, cut vertices and the block-cut-vertex tree.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};

/// Bipartite tree (forest, for disconnected input) on blocks and cut vertices.
/// Node `i < blocks` is block `i`; node `blocks + j` is `cut_vertices[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BcTree {
    pub blocks: usize,
    pub cut_vertices: Vec<usize>,
    pub adj: Vec<Vec<usize>>,
}

impl BcTree {
    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_leaf(&self, node: usize) -> bool {
        self.adj[node].len() == 1
    }

    /// BFS distances from `src`; unreachable nodes get `usize::MAX`.
    pub fn distances(&self, src: usize) -> Vec<usize> {
        let mut d = vec![usize::MAX; self.adj.len()];
        d[src] = 0;
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if d[y] == usize::MAX {
                    d[y] = d[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        d
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    /// Vertex sets of the blocks. Isolated vertices form singleton blocks.
    pub blocks: Vec<u32>,
    pub cut_vertices: u32,
    pub bc_tree: BcTree,
}

impl BlockDecomposition {
    /// Number of edges of `g` inside block `i`.
    pub fn block_edges(&self, g: &Graph, i: usize) -> usize {
        g.edges_within(self.blocks[i])
    }
}

struct Tarjan<'a> {
    g: &'a Graph,
    disc: [u8; 32],
    low: [u8; 32],
    time: u8,
    stack: Vec<(usize, usize)>,
    blocks: Vec<u32>,
}

impl Tarjan<'_> {
    fn visit(&mut self, u: usize, parent: Option<usize>) {
        self.time += 1;
        self.disc[u] = self.time;
        self.low[u] = self.time;
        for w in bits(self.g.adj(u)) {
            if self.disc[w] == 0 {
                self.stack.push((u, w));
                self.visit(w, Some(u));
                self.low[u] = self.low[u].min(self.low[w]);
                if self.low[w] >= self.disc[u] {
                    let mut block = 0u32;
                    while let Some((a, b)) = self.stack.pop() {
                        block |= 1 << a | 1 << b;
                        if (a, b) == (u, w) {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if Some(w) != parent && self.disc[w] < self.disc[u] {
                self.stack.push((u, w));
                self.low[u] = self.low[u].min(self.disc[w]);
            }
        }
    }
}

pub fn decompose(g: &Graph) -> BlockDecomposition {
    let mut t = Tarjan {
        g,
        disc: [0; 32],
        low: [0; 32],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for v in 0..g.n() {
        if t.disc[v] == 0 {
            if g.adj(v) == 0 {
                t.disc[v] = u8::MAX;
                t.blocks.push(1 << v);
            } else {
                t.visit(v, None);
            }
        }
    }
    let mut blocks = t.blocks;
    blocks.sort_unstable_by_key(|b| (b.trailing_zeros(), *b));
    let mut count = [0u8; 32];
    for &b in &blocks {
        for v in bits(b) {
            count[v] += 1;
        }
    }
    let cut_vertices = (0..g.n())
        .filter(|&v| count[v] > 1)
        .fold(0u32, |m, v| m | 1 << v);
    let cuts: Vec<usize> = bits(cut_vertices).collect();
    let mut adj = vec![Vec::new(); blocks.len() + cuts.len()];
    for (bi, &b) in blocks.iter().enumerate() {
        for (ci, &c) in cuts.iter().enumerate() {
            if b & (1 << c) != 0 {
                adj[bi].push(blocks.len() + ci);
                adj[blocks.len() + ci].push(bi);
            }
        }
    }
    let bc_tree = BcTree {
        blocks: blocks.len(),
        cut_vertices: cuts,
        adj,
    };
    BlockDecomposition {
        blocks,
        cut_vertices,
        bc_tree,
    }
}

/// Leaf blocks that are an endpoint of some maximum-distance pair of leaf
/// blocks in the bc-tree. Empty when `g` is biconnected.
pub fn peripheral_blocks(g: &Graph) -> Result<Vec<u32>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let d = decompose(g);
    if d.cut_vertices == 0 {
        return Ok(Vec::new());
    }
    let tree = &d.bc_tree;
    let leaves: Vec<usize> = (0..tree.blocks).filter(|&b| tree.is_leaf(b)).collect();
    let dist: Vec<Vec<usize>> = leaves.iter().map(|&l| tree.distances(l)).collect();
    let mut diam = 0;
    for (i, row) in dist.iter().enumerate() {
        for &l in &leaves[i + 1..] {
            diam = diam.max(row[l]);
        }
    }
    let peripheral: Vec<u32> = leaves
        .iter()
        .enumerate()
        .filter(|&(i, _)| leaves.iter().any(|&l| dist[i][l] == diam && l != leaves[i]))
        .map(|(_, &b)| d.blocks[b])
        .collect();
    Ok(peripheral)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_named;

    #[test]
    fn butterfly_blocks() {
        let d = decompose(&make_named("Z").unwrap());
        assert_eq!(d.blocks.len(), 2);
        assert!(d.blocks.iter().all(|b| b.count_ones() == 3));
        assert_eq!(d.cut_vertices, 1);
    }

    #[test]
    fn cycle_and_path() {
        let d = decompose(&make_named("C5").unwrap());
        assert_eq!((d.blocks.len(), d.cut_vertices), (1, 0));
        let d = decompose(&make_named("P4").unwrap());
        assert_eq!((d.blocks.len(), d.cut_vertices.count_ones()), (3, 2));
        assert_eq!(d.bc_tree.edge_count(), d.bc_tree.node_count() - 1);
    }

    #[test]
    fn isolated_vertices_are_blocks() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let d = decompose(&g);
        assert_eq!(d.blocks, vec![0b011, 0b100]);
    }

    #[test]
    fn peripheral_star_and_chain() {
        let star = Graph::from_edges(
            7,
            &[
                (0, 1),
                (1, 2),
                (0, 2),
                (0, 3),
                (3, 4),
                (0, 4),
                (0, 5),
                (5, 6),
                (0, 6),
            ],
        )
        .unwrap();
        assert_eq!(peripheral_blocks(&star).unwrap().len(), 3);
        assert_eq!(
            peripheral_blocks(&make_named("Z").unwrap()).unwrap().len(),
            2
        );
        assert!(peripheral_blocks(&make_named("C4").unwrap())
            .unwrap()
            .is_empty());
        assert!(peripheral_blocks(&make_named("2K3").unwrap()).is_err());
        // four triangles in a chain
        let chain = Graph::from_edges(
            9,
            &[
                (0, 1),
                (1, 2),
                (0, 2),
                (2, 3),
                (3, 4),
                (2, 4),
                (4, 5),
                (5, 6),
                (4, 6),
                (6, 7),
                (7, 8),
                (6, 8),
            ],
        )
        .unwrap();
        let p = peripheral_blocks(&chain).unwrap();
        assert_eq!(p, vec![0b111, 0b111 << 6]);
    }
}

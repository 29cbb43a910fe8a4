//! Brute-force oracles shared by the integration tests. They work on plain
//! adjacency matrices and never call the crate's algorithms.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use apexobs_core::{ClassId, Graph};
use rand::Rng;

pub type Matrix = Vec<Vec<bool>>;

pub fn matrix(g: &Graph) -> Matrix {
    let n = g.n();
    (0..n)
        .map(|u| (0..n).map(|v| g.has_edge(u, v)).collect())
        .collect()
}

pub fn from_matrix(a: &Matrix) -> Graph {
    let n = a.len();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| a[u][v])
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Lexicographically smallest upper triangle over all relabellings.
pub fn brute_canon(a: &Matrix) -> (usize, Vec<bool>) {
    let n = a.len();
    let best = permutations(n)
        .into_iter()
        .map(|p| {
            let mut t = Vec::with_capacity(n * n / 2);
            for u in 0..n {
                for v in u + 1..n {
                    t.push(a[p[u]][p[v]]);
                }
            }
            t
        })
        .min()
        .unwrap_or_default();
    (n, best)
}

/// One representative per isomorphism class of graphs on `n` vertices.
pub fn all_graphs(n: usize) -> Vec<Matrix> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut a = vec![vec![false; n]; n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                a[u][v] = true;
                a[v][u] = true;
            }
        }
        if seen.insert(brute_canon(&a)) {
            out.push(a);
        }
    }
    out
}

fn delete_vertex(a: &Matrix, x: usize) -> Matrix {
    a.iter()
        .enumerate()
        .filter(|&(u, _)| u != x)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|&(v, _)| v != x)
                .map(|(_, &b)| b)
                .collect()
        })
        .collect()
}

fn contract(a: &Matrix, u: usize, v: usize) -> Matrix {
    let mut b = a.clone();
    for w in 0..a.len() {
        if w != u && a[v][w] {
            b[u][w] = true;
            b[w][u] = true;
        }
    }
    b[u][u] = false;
    delete_vertex(&b, v)
}

/// Canonical forms of every minor of `a`, `a` included.
pub fn minor_closure(a: &Matrix) -> BTreeSet<(usize, Vec<bool>)> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![a.clone()];
    seen.insert(brute_canon(a));
    while let Some(g) = stack.pop() {
        let n = g.len();
        let mut next = Vec::new();
        for x in 0..n {
            next.push(delete_vertex(&g, x));
        }
        for u in 0..n {
            for v in u + 1..n {
                if g[u][v] {
                    let mut d = g.clone();
                    d[u][v] = false;
                    d[v][u] = false;
                    next.push(d);
                    next.push(contract(&g, u, v));
                }
            }
        }
        for h in next {
            if seen.insert(brute_canon(&h)) {
                stack.push(h);
            }
        }
    }
    seen
}

fn components(a: &Matrix, alive: &[bool]) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if !alive[s] || seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            for v in 0..n {
                if alive[v] && a[u][v] && !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                }
            }
            i += 1;
        }
        out.push(comp);
    }
    out
}

fn edges_among(a: &Matrix, vs: &[usize]) -> usize {
    let mut m = 0;
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            m += a[u][v] as usize;
        }
    }
    m
}

/// Number of simple `s`-`t` paths using only alive vertices and avoiding
/// the edge `s`-`t` itself.
fn paths_avoiding_edge(a: &Matrix, alive: &[bool], s: usize, t: usize) -> usize {
    fn dfs(a: &Matrix, alive: &[bool], u: usize, t: usize, s: usize, on: &mut [bool]) -> usize {
        if u == t {
            return 1;
        }
        let mut c = 0;
        for v in 0..a.len() {
            if alive[v] && a[u][v] && !on[v] && !(u == s && v == t) {
                on[v] = true;
                c += dfs(a, alive, v, t, s, on);
                on[v] = false;
            }
        }
        c
    }
    let mut on = vec![false; a.len()];
    on[s] = true;
    dfs(a, alive, s, t, s, &mut on)
}

pub fn in_class_oracle(a: &Matrix, alive: &[bool], class: ClassId) -> bool {
    let comps = components(a, alive);
    let excess: Vec<isize> = comps
        .iter()
        .map(|c| edges_among(a, c) as isize - c.len() as isize + 1)
        .collect();
    match class {
        ClassId::Forest => excess.iter().all(|&e| e == 0),
        ClassId::SubUnicyclic => excess.iter().sum::<isize>() <= 1,
        ClassId::Pseudoforest => excess.iter().all(|&e| e <= 1),
        // every edge lies on at most one cycle
        ClassId::Cactus => {
            let n = a.len();
            (0..n).all(|u| {
                (u + 1..n).all(|v| {
                    !(alive[u] && alive[v] && a[u][v]) || paths_avoiding_edge(a, alive, u, v) <= 1
                })
            })
        }
    }
}

/// Smallest number of vertices whose removal lands in `class`.
pub fn min_apex_oracle(a: &Matrix, class: ClassId) -> usize {
    let n = a.len();
    (0u32..1 << n)
        .filter(|mask| {
            let alive: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 0).collect();
            in_class_oracle(a, &alive, class)
        })
        .map(u32::count_ones)
        .min()
        .unwrap() as usize
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Random relabelling of `g`.
pub fn shuffled<R: Rng>(rng: &mut R, g: &Graph) -> Graph {
    use rand::seq::SliceRandom;
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    let edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| (perm[u], perm[v]))
        .collect();
    Graph::from_edges(g.n(), &edges).unwrap()
}

/// Unlabelled free trees on `n` nodes, counted through Prüfer sequences and
/// a centre-rooted AHU encoding.
pub fn free_tree_count(n: usize) -> usize {
    if n <= 2 {
        return 1;
    }
    let mut seen = HashSet::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        seen.insert(tree_code(&prufer_tree(&seq, n)));
        let mut i = 0;
        while i < seq.len() && seq[i] == n - 1 {
            seq[i] = 0;
            i += 1;
        }
        if i == seq.len() {
            break;
        }
        seq[i] += 1;
    }
    seen.len()
}

fn prufer_tree(seq: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut deg = vec![1; n];
    for &s in seq {
        deg[s] += 1;
    }
    let mut adj = vec![Vec::new(); n];
    for &s in seq {
        let leaf = (0..n).find(|&v| deg[v] == 1).unwrap();
        adj[leaf].push(s);
        adj[s].push(leaf);
        deg[leaf] -= 1;
        deg[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    adj[rest[0]].push(rest[1]);
    adj[rest[1]].push(rest[0]);
    adj
}

fn tree_code(adj: &[Vec<usize>]) -> String {
    let n = adj.len();
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    fn enc(adj: &[Vec<usize>], v: usize, p: usize) -> String {
        let mut kids: Vec<String> = adj[v]
            .iter()
            .filter(|&&w| w != p)
            .map(|&w| enc(adj, w, v))
            .collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    layer
        .iter()
        .map(|&c| enc(adj, c, usize::MAX))
        .min()
        .unwrap()
}

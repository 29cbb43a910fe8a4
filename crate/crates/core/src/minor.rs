//! Minor containment for small graphs and the one-step minor generator.

use std::collections::BTreeMap;

use dashmap::DashMap;
use once_cell::sync::Lazy;

use crate::canon::canonical_form;
use crate::class::cyclomatic;
use crate::graph::{bits, Graph};

/// Every graph one deletion or contraction away from `g`: delete an edge,
/// contract an edge, or delete an isolated vertex. Deduplicated up to
/// isomorphism and ordered by canonical form.
pub fn one_step_minors(g: &Graph) -> Vec<Graph> {
    let mut seen: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
    for (u, v) in g.edges() {
        for h in [g.without_edge(u, v), g.contract(u, v)] {
            seen.entry(canonical_form(&h)).or_insert(h);
        }
    }
    for v in bits(g.isolated_vertices()) {
        let h = g.remove_vertex(v);
        seen.entry(canonical_form(&h)).or_insert(h);
    }
    seen.into_values().collect()
}

/// Exact minor test by recursive deletion/contraction with a shared memo.
///
/// The memo maps `(canonical_form(h), canonical_form(g))` to the answer. It is
/// safe to share between threads; two threads racing on the same key both
/// compute the same value.
#[derive(Default)]
pub struct MinorTester {
    memo: DashMap<(Vec<u8>, Vec<u8>), bool>,
}

static GLOBAL: Lazy<MinorTester> = Lazy::new(MinorTester::default);

/// Is `h` a minor of `g`? Uses a process-wide memo.
pub fn is_minor(h: &Graph, g: &Graph) -> bool {
    GLOBAL.is_minor(h, g)
}

/// Degree sequences sorted descending; `h` fits in `g` on the same vertex
/// count only if it is dominated entrywise.
fn degrees_dominated(h: &Graph, g: &Graph) -> bool {
    let mut dh = h.degrees();
    let mut dg = g.degrees();
    dh.sort_unstable_by(|a, b| b.cmp(a));
    dg.sort_unstable_by(|a, b| b.cmp(a));
    dh.iter().zip(&dg).all(|(a, b)| a <= b)
}

impl MinorTester {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn clear(&self) {
        self.memo.clear();
    }

    pub fn is_minor(&self, h: &Graph, g: &Graph) -> bool {
        let (mut h, mut g) = (*h, *g);
        // an isolated vertex on both sides can be matched to itself; an
        // isolated vertex of g alone can never host a vertex with neighbours
        loop {
            let ih = h.isolated_vertices();
            let ig = g.isolated_vertices();
            if ig == 0 {
                break;
            }
            let vg = ig.trailing_zeros() as usize;
            g = g.remove_vertex(vg);
            if ih != 0 {
                h = h.remove_vertex(ih.trailing_zeros() as usize);
            }
        }
        if h.n() > g.n() || h.m() > g.m() {
            return false;
        }
        if h.m() == 0 {
            return true;
        }
        if cyclomatic(&h) > cyclomatic(&g) {
            return false;
        }
        if h.n() == g.n() && !degrees_dominated(&h, &g) {
            return false;
        }
        let key = (canonical_form(&h), canonical_form(&g));
        if h.n() == g.n() && h.m() == g.m() {
            return key.0 == key.1;
        }
        if let Some(r) = self.memo.get(&key) {
            return *r;
        }
        let mut children: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
        for (u, v) in g.edges() {
            if g.m() > h.m() {
                let c = g.without_edge(u, v);
                children.entry(canonical_form(&c)).or_insert(c);
            }
            if g.n() > h.n() {
                let c = g.contract(u, v);
                children.entry(canonical_form(&c)).or_insert(c);
            }
        }
        let result = children.values().any(|c| self.is_minor(&h, c));
        self.memo.insert(key, result);
        result
    }
}

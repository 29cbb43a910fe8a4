//! Butterfly cacti `Z_k`: connected cacti built from `k` butterflies by
//! gluing an extremal vertex of each new butterfly onto a non-central vertex
//! of the graph built so far. Also the cactus obstructions assembled from them.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::apex::{apex_sets_of_size, min_apex_size};
use crate::blocks::decompose;
use crate::canon::canonical_form;
use crate::class::{is_in_class, ClassId};
use crate::error::{Error, Result};
use crate::graph::{bits, Graph, NamedGraph};
use crate::io::to_graph6;
use crate::obstruction::{is_obstruction, search_obstructions_in, SearchOptions};

pub const MAX_K: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ButterflyCactus {
    #[serde(serialize_with = "ser_graph6")]
    pub graph: Graph,
    /// Bitmask of the central vertices.
    pub central: u32,
    pub k: usize,
}

fn ser_graph6<S: serde::Serializer>(g: &Graph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&to_graph6(g))
}

impl ButterflyCactus {
    pub fn butterfly() -> Self {
        ButterflyCactus {
            graph: NamedGraph::Butterfly.build().expect("fixed size"),
            central: 1,
            k: 1,
        }
    }

    pub fn central_vertices(&self) -> Vec<usize> {
        bits(self.central).collect()
    }

    /// Glue a fresh butterfly at non-central vertex `w`. The glued extremal
    /// vertex keeps the id `w`; the four new vertices get the next ids, the
    /// new central vertex first.
    pub fn attach(&self, w: usize) -> Result<Self> {
        let g = &self.graph;
        if w >= g.n() || self.central & (1 << w) != 0 {
            return Err(Error::OutOfRange {
                param: "w",
                detail: format!("{w} is not a non-central vertex"),
            });
        }
        let n = g.n();
        let c = n;
        let mut h = g.add_vertices(4)?;
        for (a, b) in [
            (w, c),
            (w, n + 1),
            (c, n + 1),
            (c, n + 2),
            (c, n + 3),
            (n + 2, n + 3),
        ] {
            h = h.with_edge(a, b)?;
        }
        Ok(ButterflyCactus {
            graph: h,
            central: self.central | 1 << c,
            k: self.k + 1,
        })
    }

    /// Check the structural invariants: connected, every block a triangle,
    /// `k` central vertices of degree 4 lying in two blocks each, and a
    /// forest once they are removed.
    pub fn check(&self) -> Result<()> {
        let g = &self.graph;
        let fail = |what: &str| Err(Error::Invariant(format!("butterfly cactus: {what}")));
        if !g.is_connected() {
            return fail("not connected");
        }
        let d = decompose(g);
        if d.blocks
            .iter()
            .any(|&b| b.count_ones() != 3 || g.edges_within(b) != 3)
        {
            return fail("a block is not a triangle");
        }
        if self.central.count_ones() as usize != self.k || g.n() != 4 * self.k + 1 {
            return fail("wrong size");
        }
        for v in bits(self.central) {
            let through = d.blocks.iter().filter(|&&b| b & (1 << v) != 0).count();
            if g.degree(v) != 4 || through != 2 {
                return fail("central vertex is not a butterfly centre");
            }
        }
        if !is_in_class(&g.remove_vertices(self.central), ClassId::Forest) {
            return fail("removing the central vertices leaves a cycle");
        }
        Ok(())
    }
}

fn check_k(k: usize, lo: usize, hi: usize) -> Result<()> {
    if k < lo || k > hi {
        return Err(Error::OutOfRange {
            param: "k",
            detail: format!("{k} not in {lo}..={hi}"),
        });
    }
    Ok(())
}

/// `Z_1, ..., Z_k`, each deduplicated up to isomorphism and sorted by
/// canonical form.
pub fn generate_z_levels(k: usize) -> Result<Vec<Vec<ButterflyCactus>>> {
    check_k(k, 1, MAX_K)?;
    let mut levels = vec![vec![ButterflyCactus::butterfly()]];
    while levels.len() < k {
        let prev = levels.last().expect("nonempty");
        let mut next: Vec<(Vec<u8>, usize, usize, ButterflyCactus)> = prev
            .par_iter()
            .enumerate()
            .flat_map_iter(|(i, b)| {
                bits(b.graph.vertex_mask() & !b.central).map(move |w| {
                    let child = b.attach(w).expect("non-central vertex");
                    (canonical_form(&child.graph), i, w, child)
                })
            })
            .collect();
        next.sort_by(|a, b| (&a.0, a.1, a.2).cmp(&(&b.0, b.1, b.2)));
        next.dedup_by(|a, b| a.0 == b.0);
        levels.push(next.into_iter().map(|t| t.3).collect());
    }
    Ok(levels)
}

/// All members of `Z_k` up to isomorphism, `1 <= k <= 6`.
pub fn generate_z(k: usize) -> Result<Vec<ButterflyCactus>> {
    Ok(generate_z_levels(k)?.pop().expect("k >= 1"))
}

/// The central vertices, after confirming they are the only `k`-set whose
/// removal leaves a forest.
pub fn central_set(b: &ButterflyCactus) -> Result<u32> {
    b.check()?;
    let sets = apex_sets_of_size(&b.graph, ClassId::Forest, b.k);
    if sets != [b.central] {
        return Err(Error::Invariant(format!(
            "{} forest deletion sets of size {} (expected exactly the central set)",
            sets.len(),
            b.k
        )));
    }
    Ok(b.central)
}

/// Integer partitions of `total` into at least two parts, parts descending.
fn partitions(total: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(left)).rev() {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, &mut Vec::new(), &mut out);
    out.retain(|p| p.len() >= 2);
    out
}

/// Multisets of size `r` drawn from `0..m`, as nondecreasing index vectors.
fn multisets(m: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i, m, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, r, &mut Vec::new(), &mut out);
    out
}

/// Disjoint unions of at least two butterfly cacti whose sizes sum to `k+1`,
/// together with `(k+2)K3`, deduplicated and sorted by canonical form.
pub fn disconnected_obstructions(k: usize) -> Result<Vec<Graph>> {
    check_k(k, 1, 4)?;
    let levels = generate_z_levels(k)?;
    let mut out: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
    for parts in partitions(k + 1) {
        // group equal part sizes so each multiset is produced once
        let mut groups: Vec<(usize, usize)> = Vec::new();
        for &p in &parts {
            match groups.last_mut() {
                Some((q, c)) if *q == p => *c += 1,
                _ => groups.push((p, 1)),
            }
        }
        let mut acc: Vec<Graph> = vec![Graph::empty(0)?];
        for (size, count) in groups {
            let members = &levels[size - 1];
            let mut next = Vec::new();
            for base in &acc {
                for pick in multisets(members.len(), count) {
                    let mut g = *base;
                    for i in pick {
                        g = g.disjoint_union(&members[i].graph)?;
                    }
                    next.push(g);
                }
            }
            acc = next;
        }
        for g in acc {
            out.entry(canonical_form(&g)).or_insert(g);
        }
    }
    let extra = NamedGraph::Triangles(k + 2).build()?;
    out.entry(canonical_form(&extra)).or_insert(extra);
    Ok(out.into_values().collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct CactusObstructionFamily {
    pub k: usize,
    /// `Z_{k+1}`.
    pub connected: Vec<ButterflyCactus>,
    /// Everything from [`disconnected_obstructions`] except `(k+2)K3`.
    #[serde(serialize_with = "ser_graph6_list")]
    pub disconnected: Vec<Graph>,
    #[serde(serialize_with = "ser_graph6")]
    pub exceptional: Graph,
}

fn ser_graph6_list<S: serde::Serializer>(
    gs: &[Graph],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(gs.iter().map(to_graph6))
}

impl CactusObstructionFamily {
    pub fn total(&self) -> usize {
        self.connected.len() + self.disconnected.len() + 1
    }
}

pub fn cactus_obstruction_family(k: usize) -> Result<CactusObstructionFamily> {
    check_k(k, 1, 4)?;
    let exceptional = NamedGraph::Triangles(k + 2).build()?;
    let ex = canonical_form(&exceptional);
    let disconnected = disconnected_obstructions(k)?
        .into_iter()
        .filter(|g| canonical_form(g) != ex)
        .collect();
    Ok(CactusObstructionFamily {
        k,
        connected: generate_z(k + 1)?,
        disconnected,
        exceptional,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HolinessSearch {
    pub max_n: usize,
    pub found: usize,
    pub complete: bool,
    /// Connected cactus obstructions found that are not in `Z_{k+1}`.
    pub unexpected: Vec<String>,
    /// `Z_{k+1}` members the search did not find.
    pub missing: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HolinessReport {
    pub k: usize,
    pub members: usize,
    pub passed: usize,
    pub failures: Vec<String>,
    pub search: Option<HolinessSearch>,
    pub complete: bool,
    pub millis: f64,
}

impl HolinessReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
            && self.passed == self.members
            && self
                .search
                .as_ref()
                .is_none_or(|s| s.unexpected.is_empty() && s.missing.is_empty())
    }
}

/// Check that every member of `Z_{k+1}` is an obstruction at level `k`, and
/// for `k <= 1` that a search over connected cacti finds nothing else.
pub fn verify_holiness(k: usize, budget: Option<Duration>) -> Result<HolinessReport> {
    check_k(k, 0, MAX_K - 1)?;
    let start = Instant::now();
    let deadline = budget.map(|b| start + b);
    let members = generate_z(k + 1)?;
    let mut passed = 0;
    let mut failures = Vec::new();
    let mut complete = true;
    for b in &members {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            complete = false;
            break;
        }
        if is_obstruction(&b.graph, k) {
            passed += 1;
        } else {
            failures.push(to_graph6(&b.graph));
        }
    }
    let search = if k <= 1 && complete {
        let max_n = 4 * (k + 1) + 2;
        let opts = SearchOptions {
            connected_only: true,
            within: Some(ClassId::Cactus),
            budget: deadline.map(|d| d.saturating_duration_since(Instant::now())),
            ..SearchOptions::new(k, max_n)
        };
        let cat = search_obstructions_in(&opts);
        complete &= cat.claimed_complete;
        let expected: BTreeMap<Vec<u8>, &Graph> = members
            .iter()
            .map(|b| (canonical_form(&b.graph), &b.graph))
            .collect();
        let found: BTreeMap<Vec<u8>, &Graph> = cat
            .records
            .iter()
            .map(|r| (canonical_form(&r.graph), &r.graph))
            .collect();
        Some(HolinessSearch {
            max_n,
            found: found.len(),
            complete: cat.claimed_complete,
            unexpected: found
                .iter()
                .filter(|(c, _)| !expected.contains_key(*c))
                .map(|(_, g)| to_graph6(g))
                .collect(),
            missing: expected
                .iter()
                .filter(|(c, _)| !found.contains_key(*c))
                .map(|(_, g)| to_graph6(g))
                .collect(),
        })
    } else {
        None
    };
    Ok(HolinessReport {
        k,
        members: members.len(),
        passed,
        failures,
        search,
        complete,
        millis: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Largest number of vertex-disjoint cycles in a cactus, where the cycles
/// are exactly the blocks with more than two vertices.
pub fn cycle_packing_number(g: &Graph) -> Result<usize> {
    if !is_in_class(g, ClassId::Cactus) {
        return Err(Error::NotCactus);
    }
    let cycles: Vec<u32> = decompose(g)
        .blocks
        .into_iter()
        .filter(|b| b.count_ones() > 2)
        .collect();
    fn best(cycles: &[u32], used: u32) -> usize {
        match cycles.split_first() {
            None => 0,
            Some((&c, rest)) => {
                let skip = best(rest, used);
                if c & used == 0 {
                    skip.max(1 + best(rest, used | c))
                } else {
                    skip
                }
            }
        }
    }
    Ok(best(&cycles, 0))
}

/// For the smallest `k >= 0` with `(k+2)K3` not a minor of the cactus `g`,
/// check that deleting at most `k+1` vertices leaves a forest.
pub fn apex_forest_bound_check(g: &Graph) -> Result<bool> {
    let packing = cycle_packing_number(g)?;
    let k = packing.saturating_sub(1);
    Ok(min_apex_size(g, ClassId::Forest) <= k + 1)
}

//! Recognition of the four graph classes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::blocks::decompose;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassId {
    /// At most one cycle.
    SubUnicyclic,
    /// Every component has at most one cycle.
    Pseudoforest,
    /// Every block is an edge or a cycle.
    Cactus,
    /// No cycles.
    Forest,
}

impl ClassId {
    pub const ALL: [ClassId; 4] = [
        ClassId::SubUnicyclic,
        ClassId::Pseudoforest,
        ClassId::Cactus,
        ClassId::Forest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassId::SubUnicyclic => "subunicyclic",
            ClassId::Pseudoforest => "pseudoforest",
            ClassId::Cactus => "cactus",
            ClassId::Forest => "forest",
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.to_ascii_lowercase().replace(['-', '_'], "");
        ClassId::ALL
            .into_iter()
            .find(|c| c.name() == t)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// |E| - |V| + (number of components).
pub fn cyclomatic(g: &Graph) -> isize {
    cyclomatic_within(g, g.vertex_mask())
}

/// Cyclomatic number of the subgraph induced on `mask`.
pub fn cyclomatic_within(g: &Graph, mask: u32) -> isize {
    g.edges_within(mask) as isize - mask.count_ones() as isize
        + g.components_within(mask).len() as isize
}

pub fn is_in_class(g: &Graph, c: ClassId) -> bool {
    in_class_within(g, g.vertex_mask(), c)
}

/// Class membership of the subgraph induced on `mask`.
pub fn in_class_within(g: &Graph, mask: u32, c: ClassId) -> bool {
    match c {
        ClassId::SubUnicyclic => cyclomatic_within(g, mask) <= 1,
        ClassId::Forest => cyclomatic_within(g, mask) == 0,
        ClassId::Pseudoforest => g
            .components_within(mask)
            .into_iter()
            .all(|comp| g.edges_within(comp) <= comp.count_ones() as usize),
        ClassId::Cactus => {
            let h = g.induced(mask);
            let d = decompose(&h);
            d.blocks.iter().all(|&b| {
                let e = h.edges_within(b);
                let v = b.count_ones() as usize;
                v <= 2 || e == v
            })
        }
    }
}

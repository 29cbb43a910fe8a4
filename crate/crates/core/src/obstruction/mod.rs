//! Minor obstructions for k-apex sub-unicyclic graphs: the obstruction test,
//! shipped catalogs, verification and exhaustive search.

mod catalog;
mod search;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::apex::{apex_at_most, apex_set_at_most};
use crate::canon::canonical_form;
use crate::class::ClassId;
use crate::graph::{bits, Graph};
use crate::io::to_graph6;
use crate::minor::one_step_minors;

pub use catalog::{
    builtin_catalog, data_dir, load_catalog, load_catalog_from, parse_catalog, DATA_ENV,
};
pub use search::{
    enumerate_hereditary, search_obstructions, search_obstructions_in, SearchOptions,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Unverified,
    Verified,
    Refuted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    Catalog,
    Search,
}

/// Where a catalog record was drawn: panel name plus row and column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FigurePosition {
    pub panel: String,
    pub row: u32,
    pub column: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionRecord {
    pub name: String,
    #[serde(serialize_with = "ser_graph6")]
    pub graph: Graph,
    pub k: usize,
    pub class: ClassId,
    pub status: Status,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub figure: Option<FigurePosition>,
}

fn ser_graph6<S: serde::Serializer>(g: &Graph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&to_graph6(g))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Catalog {
    pub k: usize,
    pub records: Vec<ObstructionRecord>,
    pub claimed_complete: bool,
    pub source_note: String,
    #[serde(skip_serializing_if = "serde_json::Map::is_empty")]
    pub metadata: serde_json::Map<String, serde_json::Value>,
}

impl Catalog {
    pub fn find(&self, name: &str) -> Option<&ObstructionRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    /// Name of the record isomorphic to `g`, if any.
    pub fn identify(&self, g: &Graph) -> Option<&str> {
        let c = canonical_form(g);
        self.records
            .iter()
            .find(|r| r.graph.n() == g.n() && r.graph.m() == g.m() && canonical_form(&r.graph) == c)
            .map(|r| r.name.as_str())
    }

    /// Pairs of records that are isomorphic to each other.
    pub fn duplicate_pairs(&self) -> Vec<(String, String)> {
        let forms: Vec<Vec<u8>> = self
            .records
            .iter()
            .map(|r| canonical_form(&r.graph))
            .collect();
        let mut out = Vec::new();
        for i in 0..forms.len() {
            for j in i + 1..forms.len() {
                if forms[i] == forms[j] {
                    out.push((self.records[i].name.clone(), self.records[j].name.clone()));
                }
            }
        }
        out
    }
}

/// Outcome of the obstruction test, naming the step that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Obstruction,
    /// Deleting these vertices already leaves a sub-unicyclic graph.
    InClass {
        deletion: u32,
    },
    /// This one-step minor is still outside the class.
    NotMinimal {
        witness: Graph,
    },
}

impl Verdict {
    pub fn failed_step(&self) -> Option<&'static str> {
        match self {
            Verdict::Obstruction => None,
            Verdict::InClass { .. } => Some("membership"),
            Verdict::NotMinimal { .. } => Some("minimality"),
        }
    }
}

pub fn obstruction_verdict(g: &Graph, k: usize) -> Verdict {
    if let Some(deletion) = apex_set_at_most(g, ClassId::SubUnicyclic, k) {
        return Verdict::InClass { deletion };
    }
    match one_step_minors(g)
        .into_iter()
        .find(|h| !apex_at_most(h, ClassId::SubUnicyclic, k))
    {
        Some(witness) => Verdict::NotMinimal { witness },
        None => Verdict::Obstruction,
    }
}

/// Outside the k-apex class, while every one-step minor is inside it.
pub fn is_obstruction(g: &Graph, k: usize) -> bool {
    obstruction_verdict(g, k) == Verdict::Obstruction
}

/// Three necessary conditions on any obstruction for k-apex sub-unicyclic
/// graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FilterReport {
    pub min_degree_at_least_two: bool,
    pub bridgeless: bool,
    pub degree_two_neighbours_adjacent: bool,
}

impl FilterReport {
    pub fn all(&self) -> bool {
        self.min_degree_at_least_two && self.bridgeless && self.degree_two_neighbours_adjacent
    }
}

pub fn structural_filters(g: &Graph) -> FilterReport {
    let min_degree_at_least_two = (0..g.n()).all(|v| g.degree(v) >= 2);
    let bridgeless = g.bridges().is_empty();
    let degree_two_neighbours_adjacent = (0..g.n()).filter(|&v| g.degree(v) == 2).all(|v| {
        let mut it = bits(g.adj(v));
        let (a, b) = (it.next().unwrap(), it.next().unwrap());
        g.has_edge(a, b)
    });
    FilterReport {
        min_degree_at_least_two,
        bridgeless,
        degree_two_neighbours_adjacent,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RecordReport {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_step: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub filters: FilterReport,
    pub millis: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub k: usize,
    pub total: usize,
    pub verified: usize,
    pub refuted: Vec<String>,
    pub duplicates: Vec<(String, String)>,
    pub records: Vec<RecordReport>,
    pub millis: f64,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.refuted.is_empty() && self.duplicates.is_empty() && self.verified == self.total
    }
}

/// Run the obstruction test on every record, in parallel, and mark each one
/// `Verified` or `Refuted`.
pub fn verify_catalog(cat: &mut Catalog) -> VerifyReport {
    let start = Instant::now();
    let k = cat.k;
    let results: Vec<(Verdict, FilterReport, f64)> = cat
        .records
        .par_iter()
        .map(|r| {
            let t = Instant::now();
            let v = obstruction_verdict(&r.graph, r.k);
            (
                v,
                structural_filters(&r.graph),
                t.elapsed().as_secs_f64() * 1e3,
            )
        })
        .collect();
    let mut records = Vec::with_capacity(results.len());
    for (rec, (verdict, filters, millis)) in cat.records.iter_mut().zip(results) {
        rec.status = if verdict == Verdict::Obstruction {
            Status::Verified
        } else {
            Status::Refuted
        };
        let witness = match &verdict {
            Verdict::NotMinimal { witness } => Some(to_graph6(witness)),
            Verdict::InClass { deletion } => {
                Some(format!("delete {:?}", bits(*deletion).collect::<Vec<_>>()))
            }
            Verdict::Obstruction => None,
        };
        records.push(RecordReport {
            name: rec.name.clone(),
            n: rec.graph.n(),
            m: rec.graph.m(),
            status: rec.status,
            failed_step: verdict.failed_step(),
            witness,
            filters,
            millis,
        });
    }
    let refuted: Vec<String> = records
        .iter()
        .filter(|r| r.status == Status::Refuted)
        .map(|r| r.name.clone())
        .collect();
    VerifyReport {
        k,
        total: records.len(),
        verified: records
            .iter()
            .filter(|r| r.status == Status::Verified)
            .count(),
        refuted,
        duplicates: cat.duplicate_pairs(),
        records,
        millis: start.elapsed().as_secs_f64() * 1e3,
    }
}

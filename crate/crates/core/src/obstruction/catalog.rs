//! Catalog data files: a graph6 file with one record per line (`#` lines are
//! comments) and a JSON manifest listing the records in the same order.

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::{Catalog, FigurePosition, ObstructionRecord, Provenance, Status};
use crate::class::ClassId;
use crate::error::{Error, Result};
use crate::io::read_graph6_lines;

/// Environment variable naming a directory that replaces the built-in data.
pub const DATA_ENV: &str = "APEXOBS_DATA";

const BUILTIN: [(usize, &str, &str); 2] = [
    (
        0,
        include_str!("../../data/obs_k0.g6"),
        include_str!("../../data/obs_k0.json"),
    ),
    (
        1,
        include_str!("../../data/obs_k1.g6"),
        include_str!("../../data/obs_k1.json"),
    ),
];

#[derive(Deserialize)]
struct Manifest {
    k: usize,
    class: ClassId,
    claimed_complete: bool,
    source_note: String,
    #[serde(default)]
    metadata: serde_json::Map<String, serde_json::Value>,
    records: Vec<ManifestRecord>,
}

#[derive(Deserialize)]
struct ManifestRecord {
    name: String,
    k: usize,
    figure: Option<FigurePosition>,
    n: Option<usize>,
    m: Option<usize>,
}

pub fn data_dir() -> Option<PathBuf> {
    std::env::var_os(DATA_ENV).map(PathBuf::from)
}

fn file_names(k: usize) -> (String, String) {
    (format!("obs_k{k}.g6"), format!("obs_k{k}.json"))
}

/// Catalog for `k`, read from `$APEXOBS_DATA` when set and from the data
/// compiled into the crate otherwise.
pub fn load_catalog(k: usize) -> Result<Catalog> {
    match data_dir() {
        Some(dir) => load_catalog_from(&dir, k),
        None => builtin_catalog(k),
    }
}

pub fn builtin_catalog(k: usize) -> Result<Catalog> {
    let (_, g6, json) = BUILTIN
        .iter()
        .find(|(kk, _, _)| *kk == k)
        .ok_or_else(|| Error::Catalog(format!("no catalog shipped for k={k}")))?;
    parse_catalog(g6, json)
}

pub fn load_catalog_from(dir: &Path, k: usize) -> Result<Catalog> {
    let (g6, json) = file_names(k);
    let read = |name: &str| {
        std::fs::read_to_string(dir.join(name))
            .map_err(|e| Error::Catalog(format!("{}: {e}", dir.join(name).display())))
    };
    parse_catalog(&read(&g6)?, &read(&json)?)
}

pub fn parse_catalog(g6_text: &str, manifest_json: &str) -> Result<Catalog> {
    let graphs = read_graph6_lines(g6_text).map_err(|e| Error::Catalog(e.to_string()))?;
    let man: Manifest = serde_json::from_str(manifest_json)
        .map_err(|e| Error::Catalog(format!("manifest: {e}")))?;
    if graphs.len() != man.records.len() {
        return Err(Error::Catalog(format!(
            "{} graphs but {} manifest records",
            graphs.len(),
            man.records.len()
        )));
    }
    let mut names = HashSet::new();
    let mut records = Vec::with_capacity(graphs.len());
    for (graph, r) in graphs.into_iter().zip(man.records) {
        if !names.insert(r.name.clone()) {
            return Err(Error::Catalog(format!("duplicate record name {}", r.name)));
        }
        if r.k != man.k {
            return Err(Error::Catalog(format!(
                "record {} has k={} in a k={} catalog",
                r.name, r.k, man.k
            )));
        }
        if r.n.is_some_and(|n| n != graph.n()) || r.m.is_some_and(|m| m != graph.m()) {
            return Err(Error::Catalog(format!(
                "record {} does not match its manifest size",
                r.name
            )));
        }
        records.push(ObstructionRecord {
            name: r.name,
            graph,
            k: r.k,
            class: man.class,
            status: Status::Unverified,
            provenance: Provenance::Catalog,
            figure: r.figure,
        });
    }
    Ok(Catalog {
        k: man.k,
        records,
        claimed_complete: man.claimed_complete,
        source_note: man.source_note,
        metadata: man.metadata,
    })
}

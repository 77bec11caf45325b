//! Built-in example graphs and an exhaustive generator of small connected
//! multigraphs.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io;
use crate::matroid::{RepresentedMatroid, SignedVector};
use crate::ribbon::RibbonGraph;
use crate::signature::{Signature, SignaturePolarity};

const BUILTIN: [(&str, &str); 7] = [
    ("single_edge", include_str!("../../../catalog/single_edge.json")),
    ("theta", include_str!("../../../catalog/theta.json")),
    ("triangle", include_str!("../../../catalog/triangle.json")),
    ("path2", include_str!("../../../catalog/path2.json")),
    ("k4", include_str!("../../../catalog/k4.json")),
    ("fig5", include_str!("../../../catalog/fig5.json")),
    ("k5me", include_str!("../../../catalog/k5me.json")),
];

#[derive(Debug, Deserialize)]
struct LabeledVector {
    label: String,
    support: Vec<usize>,
    signs: Vec<i8>,
}

#[derive(Debug, Deserialize)]
struct EntryFile {
    name: String,
    #[serde(default)]
    note: String,
    expected_bases: Option<usize>,
    #[serde(default)]
    signature: Vec<LabeledVector>,
    #[serde(default)]
    certificate: Vec<String>,
}

/// One catalog graph, with the optional data attached to it.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub note: String,
    pub graph: Graph,
    pub expected_bases: Option<usize>,
    ribbon: Option<String>,
    signature: Vec<(String, SignedVector)>,
    pub certificate: Vec<String>,
}

impl CatalogEntry {
    pub fn from_json(text: &str) -> Result<Self> {
        let graph = io::parse_graph(text)?;
        let file: EntryFile = serde_json::from_str(text)?;
        let value: Value = serde_json::from_str(text)?;
        let n = graph.edge_count();
        let mut signature = Vec::with_capacity(file.signature.len());
        for v in file.signature {
            if v.support.len() != v.signs.len() {
                return Err(Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("vector {} has mismatched support and signs", v.label),
                });
            }
            let mut entries = vec![0i8; n];
            for (&e, &s) in v.support.iter().zip(&v.signs) {
                if e == 0 || e > n || s.abs() != 1 {
                    return Err(Error::Parse {
                        line: 0,
                        column: 0,
                        message: format!("vector {} has a bad entry", v.label),
                    });
                }
                entries[e - 1] = s;
            }
            signature.push((v.label, SignedVector::general(entries)));
        }
        Ok(CatalogEntry {
            name: file.name,
            note: file.note,
            graph,
            expected_bases: file.expected_bases,
            ribbon: value.get("ribbon").map(Value::to_string),
            signature,
            certificate: file.certificate,
        })
    }

    pub fn matroid(&self) -> Result<RepresentedMatroid> {
        RepresentedMatroid::from_graph(&self.graph)
    }

    pub fn ribbon(&self) -> Result<Option<RibbonGraph>> {
        self.ribbon
            .as_deref()
            .map(|text| io::parse_ribbon(&self.graph, text))
            .transpose()
    }

    pub fn labeled_vectors(&self) -> &[(String, SignedVector)] {
        &self.signature
    }

    pub fn signature(&self, m: &RepresentedMatroid) -> Result<Option<Signature>> {
        if self.signature.is_empty() {
            return Ok(None);
        }
        let vs: Vec<SignedVector> = self.signature.iter().map(|(_, v)| v.clone()).collect();
        Signature::new(m, SignaturePolarity::Circuit, vs).map(Some)
    }

    /// The signature vectors named by the certificate labels.
    pub fn certificate_vectors(&self) -> Result<Vec<SignedVector>> {
        self.certificate
            .iter()
            .map(|label| {
                self.signature
                    .iter()
                    .find(|(l, _)| l == label)
                    .map(|(_, v)| v.clone())
                    .ok_or_else(|| Error::Parse {
                        line: 0,
                        column: 0,
                        message: format!("certificate label {label} is not in the signature"),
                    })
            })
            .collect()
    }
}

pub fn builtin() -> Vec<CatalogEntry> {
    BUILTIN
        .iter()
        .map(|(name, text)| {
            CatalogEntry::from_json(text)
                .unwrap_or_else(|e| panic!("built-in catalog entry {name} is malformed: {e}"))
        })
        .collect()
}

pub fn builtin_names() -> Vec<&'static str> {
    BUILTIN.iter().map(|(n, _)| *n).collect()
}

pub fn get(name: &str) -> Option<CatalogEntry> {
    builtin().into_iter().find(|e| e.name == name)
}

pub fn builtin_text(name: &str) -> Option<&'static str> {
    BUILTIN.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

type EdgeList = Vec<(usize, usize)>;

/// Canonical form under vertex relabelling. Vertices are first sorted by
/// (degree, loops); only permutations inside those classes are tried.
fn canonical(vertices: usize, edges: &EdgeList) -> (Vec<(usize, usize)>, EdgeList) {
    let mut inv = vec![(0usize, 0usize); vertices];
    for &(a, b) in edges {
        inv[a].0 += 1;
        inv[b].0 += 1;
        if a == b {
            inv[a].1 += 1;
        }
    }
    let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (v, &k) in inv.iter().enumerate() {
        groups.entry(k).or_default().push(v);
    }
    let keys: Vec<(usize, usize)> = groups
        .iter()
        .flat_map(|(k, vs)| std::iter::repeat(*k).take(vs.len()))
        .collect();
    let mut best: Option<EdgeList> = None;
    let perms = groups
        .values()
        .map(|vs| vs.iter().copied().permutations(vs.len()).collect::<Vec<_>>())
        .multi_cartesian_product();
    let mut label = vec![0usize; vertices];
    for choice in perms {
        for (i, v) in choice.iter().flatten().enumerate() {
            label[*v] = i;
        }
        let mut relabeled: EdgeList = edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (label[a], label[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        relabeled.sort_unstable();
        if best.as_ref().map_or(true, |b| relabeled < *b) {
            best = Some(relabeled);
        }
    }
    (keys, best.unwrap_or_default())
}

/// Every connected multigraph (loops allowed) with at least two vertices
/// and between 1 and `max_edges` edges, one per isomorphism class. Edges
/// point from the lower to the higher vertex.
pub fn connected_multigraphs(max_edges: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    let mut layer: BTreeSet<(usize, (Vec<(usize, usize)>, EdgeList))> = BTreeSet::new();
    layer.insert((2, canonical(2, &vec![(0, 1)])));
    for size in 1..=max_edges {
        let mut next = BTreeSet::new();
        for (vertices, (_, edges)) in &layer {
            out.push(Graph::new(*vertices, edges.clone()).expect("generated graph is valid"));
            if size == max_edges {
                continue;
            }
            for a in 0..*vertices {
                for b in a..*vertices {
                    let mut grown = edges.clone();
                    grown.push((a, b));
                    next.insert((*vertices, canonical(*vertices, &grown)));
                }
                let mut grown = edges.clone();
                grown.push((a, *vertices));
                next.insert((*vertices + 1, canonical(*vertices + 1, &grown)));
            }
        }
        layer = next;
    }
    out
}

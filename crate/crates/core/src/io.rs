//! Text formats for graphs, matrices, signatures, atlases, ribbons,
//! simplex families, heights and map tables.
//!
//! Edge and vertex ids in files are 1-based.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::atlas::{Atlas, Polarity};
use crate::bijection::PhiTable;
use crate::error::{Error, Result};
use crate::fourientation::{EdgeState, Fourientation, Orientation};
use crate::graph::Graph;
use crate::lawrence::{Heights, MaximalSimplex};
use crate::linalg::Rational;
use crate::matroid::{ArcId, Basis, RepresentedMatroid, SignedVector};
use crate::ribbon::{HalfEdge, RibbonGraph};
use crate::signature::{Signature, SignaturePolarity};

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn parse_value(text: &str) -> Result<Value> {
    if text.trim().is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "empty input".into(),
        });
    }
    serde_json::from_str(text).map_err(json_error)
}

fn shape_error(message: impl Into<String>) -> Error {
    Error::Parse {
        line: 0,
        column: 0,
        message: message.into(),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphFile {
    vertices: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    parse_graph_with_labels(text).map(|(g, _)| g)
}

fn parse_graph_with_labels(text: &str) -> Result<(Graph, Option<Vec<String>>)> {
    parse_value(text)?;
    let file: GraphFile = serde_json::from_str(text).map_err(json_error)?;
    let edges: Vec<(usize, usize)> = file.edges.iter().map(|e| (e[0], e[1])).collect();
    Ok((Graph::from_one_based(file.vertices, &edges)?, file.labels))
}

pub fn graph_to_json(g: &Graph) -> String {
    let file = GraphFile {
        vertices: g.vertex_count(),
        edges: g.edges().iter().map(|&(t, h)| [t + 1, h + 1]).collect(),
        labels: None,
    };
    pretty(&serde_json::to_value(file).expect("graph serializes"))
}

/// Whitespace-separated rows; blank lines and `#` comments are skipped.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<i64>>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        let mut col = 0;
        for token in content.split_whitespace() {
            let start = content[col..].find(token).map_or(col, |p| col + p);
            col = start + token.len();
            let x: i64 = token.parse().map_err(|_| Error::Parse {
                line: i + 1,
                column: start + 1,
                message: format!("expected an integer, found {token:?}"),
            })?;
            row.push(x);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "empty input".into(),
        });
    }
    Ok(rows)
}

pub fn matrix_to_text(rows: &[Vec<i64>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(|x| format!("{x:>2}")).join(" "))
        .map(|l| l + "\n")
        .collect()
}

/// A graph (JSON object) or a matrix (plain text).
pub fn parse_matroid(text: &str) -> Result<RepresentedMatroid> {
    if text.trim_start().starts_with('{') {
        let (g, labels) = parse_graph_with_labels(text)?;
        let m = RepresentedMatroid::from_graph(&g)?;
        match labels {
            Some(l) => m.with_edge_labels(l),
            None => Ok(m),
        }
    } else {
        RepresentedMatroid::from_matrix(parse_matrix(text)?)
    }
}

fn vector_from_json(n: usize, v: &Value) -> Result<SignedVector> {
    let support = v
        .get("support")
        .and_then(Value::as_array)
        .ok_or_else(|| shape_error("signed vector needs a \"support\" list"))?;
    let signs = v
        .get("signs")
        .and_then(Value::as_array)
        .ok_or_else(|| shape_error("signed vector needs a \"signs\" list"))?;
    if support.len() != signs.len() {
        return Err(shape_error("\"support\" and \"signs\" differ in length"));
    }
    let mut entries = vec![0i8; n];
    for (e, s) in support.iter().zip(signs) {
        let e = e
            .as_u64()
            .filter(|&e| e >= 1 && e as usize <= n)
            .ok_or_else(|| shape_error(format!("edge id {e} out of range 1..={n}")))?;
        let s = s
            .as_i64()
            .filter(|s| *s == 1 || *s == -1)
            .ok_or_else(|| shape_error(format!("sign {s} is not ±1")))?;
        entries[e as usize - 1] = s as i8;
    }
    Ok(SignedVector::general(entries))
}

fn vector_to_json(v: &SignedVector) -> Value {
    let support: Vec<usize> = v.support();
    json!({
        "support": support.iter().map(|e| e + 1).collect::<Vec<_>>(),
        "signs": support.iter().map(|&e| v.get(e)).collect::<Vec<_>>(),
    })
}

fn polarity_name(p: SignaturePolarity) -> &'static str {
    match p {
        SignaturePolarity::Circuit => "circuit",
        SignaturePolarity::Cocircuit => "cocircuit",
    }
}

/// A list of signed vectors, or `{"polarity": ..., "vectors": [...]}`, or a
/// catalog entry with a `"signature"` list. A bare list's polarity is
/// inferred from its vectors.
pub fn parse_signature(m: &RepresentedMatroid, text: &str) -> Result<Signature> {
    let value = parse_value(text)?;
    let (polarity, list) = match &value {
        Value::Array(list) => (None, list),
        Value::Object(obj) => {
            let list = obj
                .get("vectors")
                .or_else(|| obj.get("signature"))
                .and_then(Value::as_array)
                .ok_or_else(|| shape_error("signature object needs a \"vectors\" list"))?;
            let p = match obj.get("polarity").and_then(Value::as_str) {
                None => None,
                Some("circuit") => Some(SignaturePolarity::Circuit),
                Some("cocircuit") => Some(SignaturePolarity::Cocircuit),
                Some(other) => return Err(shape_error(format!("unknown polarity {other:?}"))),
            };
            (p, list)
        }
        _ => return Err(shape_error("signature must be a list or an object")),
    };
    let vectors = list
        .iter()
        .map(|v| vector_from_json(m.n(), v))
        .collect::<Result<Vec<_>>>()?;
    let polarity = match polarity {
        Some(p) => p,
        None => infer_signature_polarity(m, &vectors)?,
    };
    Signature::new(m, polarity, vectors)
}

fn infer_signature_polarity(m: &RepresentedMatroid, vs: &[SignedVector]) -> Result<SignaturePolarity> {
    let is_circuit = |v: &SignedVector| m.signed_circuits().iter().any(|c| c.entries() == v.entries());
    match vs.first() {
        Some(v) if is_circuit(v) => Ok(SignaturePolarity::Circuit),
        Some(_) => Ok(SignaturePolarity::Cocircuit),
        None if m.signed_circuits().is_empty() => Ok(SignaturePolarity::Circuit),
        None if m.signed_cocircuits().is_empty() => Ok(SignaturePolarity::Cocircuit),
        None => Err(shape_error("cannot infer the polarity of an empty signature")),
    }
}

pub fn signature_to_json(sig: &Signature) -> String {
    pretty(&json!({
        "polarity": polarity_name(sig.polarity()),
        "vectors": sig.vectors().iter().map(vector_to_json).collect::<Vec<_>>(),
    }))
}

fn basis_key(b: &Basis) -> String {
    b.one_based().iter().join(",")
}

fn parse_basis_key(key: &str, n: usize) -> Result<Basis> {
    let edges = key
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .ok()
                .filter(|&e| e >= 1 && e <= n)
                .map(|e| e - 1)
                .ok_or_else(|| shape_error(format!("bad edge id {s:?} in basis key {key:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Basis::new(edges))
}

/// `{"polarity": ..., "entries": {"1,2": "bb+", ...}}` or the bare map, in
/// which case the polarity is read off the first entry.
pub fn parse_atlas(m: &RepresentedMatroid, text: &str) -> Result<Atlas> {
    let value = parse_value(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| shape_error("atlas must be a JSON object"))?;
    let (polarity, map) = match obj.get("entries") {
        Some(entries) => {
            let p = match obj.get("polarity").and_then(Value::as_str) {
                Some("external") => Some(Polarity::External),
                Some("internal") => Some(Polarity::Internal),
                None => None,
                Some(other) => return Err(shape_error(format!("unknown polarity {other:?}"))),
            };
            let map = entries
                .as_object()
                .ok_or_else(|| shape_error("\"entries\" must be an object"))?;
            (p, map)
        }
        None => (None, obj),
    };
    let mut entries = Vec::with_capacity(map.len());
    for (key, v) in map {
        let b = parse_basis_key(key, m.n())?;
        let s = v
            .as_str()
            .ok_or_else(|| shape_error(format!("entry {key:?} must be a string")))?;
        let f: Fourientation = s.parse()?;
        entries.push((b, f));
    }
    let polarity = match polarity {
        Some(p) => p,
        None => {
            let (b, f) = entries
                .first()
                .ok_or_else(|| shape_error("atlas has no entries"))?;
            if b.edges().iter().all(|&e| f.get(e) == EdgeState::Bi) {
                Polarity::External
            } else {
                Polarity::Internal
            }
        }
    };
    Atlas::new(m, polarity, entries)
}

pub fn atlas_to_json(a: &Atlas) -> String {
    let entries: serde_json::Map<String, Value> = a
        .iter()
        .map(|(b, f)| (basis_key(b), Value::String(f.to_string())))
        .collect();
    pretty(&json!({ "polarity": a.polarity().name(), "entries": entries }))
}

/// `{"rotations": {"1": [[edge, tag], ...]}, "root": [q, [edge, tag]]}`,
/// optionally nested under `"ribbon"`.
pub fn parse_ribbon(graph: &Graph, text: &str) -> Result<RibbonGraph> {
    let value = parse_value(text)?;
    let value = value.get("ribbon").cloned().unwrap_or(value);
    let rot = value
        .get("rotations")
        .and_then(Value::as_object)
        .ok_or_else(|| shape_error("ribbon needs a \"rotations\" object"))?;
    let half_edge = |v: &Value| -> Result<HalfEdge> {
        let pair = v
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| shape_error(format!("half-edge {v} must be [edge, tag]")))?;
        let e = pair[0]
            .as_u64()
            .filter(|&e| e >= 1)
            .ok_or_else(|| shape_error(format!("bad edge id in {v}")))?;
        let tag = pair[1]
            .as_u64()
            .filter(|&t| t <= 1)
            .ok_or_else(|| shape_error(format!("bad end tag in {v}")))?;
        Ok(HalfEdge::new(e as usize - 1, tag as u8))
    };
    let mut rotations = vec![Vec::new(); graph.vertex_count()];
    for (key, list) in rot {
        let v: usize = key
            .parse()
            .ok()
            .filter(|&v| v >= 1 && v <= graph.vertex_count())
            .ok_or_else(|| shape_error(format!("bad vertex id {key:?}")))?;
        let list = list
            .as_array()
            .ok_or_else(|| shape_error(format!("rotation at {key} must be a list")))?;
        rotations[v - 1] = list.iter().map(half_edge).collect::<Result<_>>()?;
    }
    let root = value
        .get("root")
        .and_then(Value::as_array)
        .filter(|a| a.len() == 2)
        .ok_or_else(|| shape_error("ribbon needs \"root\": [vertex, [edge, tag]]"))?;
    let q = root[0]
        .as_u64()
        .filter(|&q| q >= 1)
        .ok_or_else(|| shape_error("bad root vertex"))? as usize;
    let h = half_edge(&root[1])?;
    RibbonGraph::new(graph.clone(), rotations, q - 1, h)
}

pub fn ribbon_to_json(rg: &RibbonGraph) -> String {
    let rotations: serde_json::Map<String, Value> = rg
        .rotations()
        .iter()
        .enumerate()
        .map(|(v, rot)| {
            let list: Vec<Value> = rot.iter().map(|h| json!([h.edge + 1, h.end])).collect();
            ((v + 1).to_string(), Value::Array(list))
        })
        .collect();
    let root = rg.root();
    pretty(&json!({
        "rotations": rotations,
        "root": [rg.root_vertex() + 1, [root.edge + 1, root.end]],
    }))
}

/// A list of vertex-id lists such as `[[1, -1, 2], ...]`.
pub fn parse_family(n: usize, text: &str) -> Result<Vec<MaximalSimplex>> {
    let value = parse_value(text)?;
    let list = value
        .as_array()
        .ok_or_else(|| shape_error("simplex family must be a list"))?;
    list.iter()
        .map(|s| {
            let ids = s
                .as_array()
                .ok_or_else(|| shape_error(format!("simplex {s} must be a list")))?;
            let vs = ids
                .iter()
                .map(|v| {
                    let x = v
                        .as_i64()
                        .ok_or_else(|| shape_error(format!("vertex id {v} must be an integer")))?;
                    ArcId::new(x as i32, n)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(MaximalSimplex::new(vs))
        })
        .collect()
}

pub fn family_to_json(family: &[MaximalSimplex]) -> String {
    let list: Vec<Vec<i32>> = family
        .iter()
        .map(|s| s.vertices().iter().map(|v| v.value()).collect())
        .collect();
    pretty(&json!(list))
}

fn parse_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => s
            .trim()
            .parse::<Rational>()
            .map_err(|_| shape_error(format!("bad rational {s:?}"))),
        Value::Number(x) => x
            .as_i64()
            .map(crate::linalg::rational)
            .ok_or_else(|| shape_error(format!("bad rational {x}"))),
        other => Err(shape_error(format!("bad rational {other}"))),
    }
}

/// `{"+1": "p/q", "-1": "0", ...}`.
pub fn parse_heights(n: usize, text: &str) -> Result<Heights> {
    let value = parse_value(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| shape_error("heights must be a JSON object"))?;
    let mut h = Heights::new();
    for (k, v) in obj {
        let id: i32 = k
            .trim_start_matches('+')
            .parse()
            .map_err(|_| shape_error(format!("bad vertex id {k:?}")))?;
        h.insert(ArcId::new(id, n)?, parse_rational(v)?);
    }
    Ok(h)
}

pub fn heights_to_json(h: &Heights) -> String {
    let obj: serde_json::Map<String, Value> = h
        .iter()
        .map(|(k, v)| (format!("{k:+}"), Value::String(v.to_string())))
        .collect();
    pretty(&Value::Object(obj))
}

/// `1,0`, `(1, 0)`, `[1, -1/2]` and the like.
pub fn parse_weights(text: &str) -> Result<Vec<Rational>> {
    let inner = text
        .trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']']);
    inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.trim_matches('"')
                .parse::<Rational>()
                .map_err(|_| shape_error(format!("bad weight {s:?}")))
        })
        .collect()
}

pub fn f_table_to_json(table: &[(Basis, Orientation)]) -> String {
    let obj: serde_json::Map<String, Value> = table
        .iter()
        .map(|(b, o)| (basis_key(b), Value::String(o.to_string())))
        .collect();
    pretty(&Value::Object(obj))
}

pub fn parse_f_table(n: usize, text: &str) -> Result<Vec<(Basis, Orientation)>> {
    let value = parse_value(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| shape_error("f table must be a JSON object"))?;
    let mut out: Vec<(Basis, Orientation)> = obj
        .iter()
        .map(|(k, v)| {
            let b = parse_basis_key(k, n)?;
            let o: Orientation = v
                .as_str()
                .ok_or_else(|| shape_error(format!("entry {k:?} must be a string")))?
                .parse()?;
            Ok((b, o))
        })
        .collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}

pub fn phi_table_to_json(t: &PhiTable) -> String {
    let obj: BTreeMap<String, Vec<usize>> = t
        .entries()
        .into_iter()
        .map(|(o, s)| (o.to_string(), s.iter().map(|e| e + 1).collect()))
        .collect();
    pretty(&serde_json::to_value(obj).expect("table serializes"))
}

pub fn parse_phi_table(n: usize, text: &str) -> Result<PhiTable> {
    let value = parse_value(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| shape_error("subset table must be a JSON object"))?;
    let entries = obj
        .iter()
        .map(|(k, v)| {
            let o: Orientation = k.parse()?;
            let s = v
                .as_array()
                .ok_or_else(|| shape_error(format!("entry {k:?} must be a list")))?
                .iter()
                .map(|e| {
                    e.as_u64()
                        .filter(|&e| e >= 1)
                        .map(|e| e as usize - 1)
                        .ok_or_else(|| shape_error(format!("bad edge id {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((o, s))
        })
        .collect::<Result<Vec<_>>>()?;
    PhiTable::from_entries(n, &entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature;

    const THETA: &str = r#"{"vertices": 2, "edges": [[1, 2], [1, 2]]}"#;

    #[test]
    fn graph_and_matrix() {
        let m = parse_matroid(THETA).unwrap();
        assert_eq!(m.matrix(), &[vec![-1, -1]]);
        let g = parse_graph(THETA).unwrap();
        assert_eq!(parse_graph(&graph_to_json(&g)).unwrap(), g);
        let m = parse_matroid("1 0 1\n0 1 -1\n").unwrap();
        assert_eq!(m.n(), 3);
        assert_eq!(parse_matrix(&matrix_to_text(m.matrix())).unwrap(), m.matrix());
    }

    #[test]
    fn parse_errors_have_positions() {
        match parse_matroid("") {
            Err(Error::Parse { line: 1, column: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_matrix("1 0\n0 x\n") {
            Err(Error::Parse { line: 2, column: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_matroid("{\"vertices\": 2,\n \"edges\": [[1, 2]") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn signature_and_atlas_round_trip() {
        let m = parse_matroid(THETA).unwrap();
        let sig = parse_signature(&m, r#"[{"support": [1, 2], "signs": [-1, 1]}]"#).unwrap();
        assert_eq!(sig.polarity(), SignaturePolarity::Circuit);
        assert_eq!(parse_signature(&m, &signature_to_json(&sig)).unwrap(), sig);
        let a = signature::atlas_from_signature(&m, &sig).unwrap();
        let text = atlas_to_json(&a);
        assert_eq!(parse_atlas(&m, &text).unwrap(), a);
        let bare = parse_atlas(&m, r#"{"1": "b+", "2": "-b"}"#).unwrap();
        assert_eq!(bare, a);
        let co = parse_signature(&m, r#"[{"support": [1, 2], "signs": [1, 1]}]"#).unwrap();
        assert_eq!(co.polarity(), SignaturePolarity::Cocircuit);
    }

    #[test]
    fn heights_weights_family() {
        let h = parse_heights(2, r#"{"+1": "1/2", "-1": 0, "+2": "0", "-2": "-3"}"#).unwrap();
        assert_eq!(parse_heights(2, &heights_to_json(&h)).unwrap(), h);
        let w = parse_weights("(1, -1/2)").unwrap();
        assert_eq!(w, vec![crate::linalg::rational(1), crate::linalg::ratio(-1, 2)]);
        let fam = parse_family(2, "[[1, -1, 2], [-1, -2, 2]]").unwrap();
        assert_eq!(parse_family(2, &family_to_json(&fam)).unwrap(), fam);
        assert!(parse_family(2, "[[1, 3]]").is_err());
    }
}

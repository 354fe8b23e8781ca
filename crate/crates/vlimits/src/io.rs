//! File formats: graph JSON, divisor JSON, and the exact string forms
//! used in all machine-readable output (`p/q` rationals, `k/2` half-integers;
//! no floats).

use crate::chipfire::{Divisor, Subdivision};
use crate::graph::{Cochain1, Graph, GraphError};
use crate::linalg::{Int, Rat};
use num::{Signed, Zero};
use serde::Deserialize;
use serde_json::{Map, Value};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("edge `{edge}`: length must be a positive integer up to 1000000")]
    BadLength { edge: String },
    #[error("invalid rational `{0}`: expected `p` or `p/q` with nonzero q")]
    BadRational(String),
    #[error("divisor: unknown vertex key `{0}`")]
    UnknownDivisorKey(String),
    #[error("divisor: scale must be a positive integer")]
    BadScale,
}

/// A parsed graph file: the combinatorial graph plus per-edge lengths and
/// integral twists (read on the stored orientation).
#[derive(Clone, Debug)]
pub struct GraphData {
    pub graph: Graph,
    pub lengths: Vec<u32>,
    pub twists: Vec<i64>,
}

impl GraphData {
    pub fn twist_cochain(&self) -> Cochain1<i64> {
        Cochain1::from_stored(self.twists.clone())
    }
}

#[derive(Deserialize)]
struct GraphDoc {
    vertices: Vec<String>,
    edges: Vec<EdgeDoc>,
}

#[derive(Deserialize)]
struct EdgeDoc {
    id: String,
    tail: String,
    head: String,
    #[serde(default = "default_length")]
    length: i64,
    #[serde(default)]
    twist: i64,
}

fn default_length() -> i64 {
    1
}

pub fn parse_graph_json(text: &str) -> Result<GraphData, IoError> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    let mut lengths = Vec::with_capacity(doc.edges.len());
    let mut twists = Vec::with_capacity(doc.edges.len());
    let mut triples = Vec::with_capacity(doc.edges.len());
    for e in &doc.edges {
        if e.length <= 0 || e.length > 1_000_000 {
            return Err(IoError::BadLength {
                edge: e.id.clone(),
            });
        }
        lengths.push(e.length as u32);
        twists.push(e.twist);
        triples.push((e.id.clone(), e.tail.clone(), e.head.clone()));
    }
    let graph = Graph::new(doc.vertices, triples)?;
    Ok(GraphData {
        graph,
        lengths,
        twists,
    })
}

/// Exact `p/q` form of a rational (always with an explicit denominator).
pub fn rat_str(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `k/2` form of a half-integer given as twice its value.
pub fn half_str(twice: i64) -> String {
    format!("{twice}/2")
}

pub fn parse_rat(s: &str) -> Result<Rat, IoError> {
    let bad = || IoError::BadRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n = Int::from_str(num).map_err(|_| bad())?;
    let d = Int::from_str(den).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

#[derive(Deserialize)]
struct DivisorDoc {
    #[serde(default = "default_scale")]
    n: i64,
    coeffs: Map<String, Value>,
}

fn default_scale() -> i64 {
    1
}

/// Parse a divisor file against a graph: keys are base vertex ids or
/// `z:<edge>:<i>` interior labels; the subdivision scale comes from the file.
pub fn parse_divisor_json<'g>(
    text: &str,
    data: &'g GraphData,
) -> Result<(Subdivision<'g>, Divisor), IoError> {
    let doc: DivisorDoc = serde_json::from_str(text)?;
    if doc.n <= 0 || doc.n > u32::MAX as i64 {
        return Err(IoError::BadScale);
    }
    let sub = Subdivision::new(&data.graph, &data.lengths, doc.n as u32)
        .expect("validated lengths and scale");
    let mut d = sub.zero_divisor();
    for (key, value) in &doc.coeffs {
        let Some(idx) = sub.vertex_by_label(key) else {
            return Err(IoError::UnknownDivisorKey(key.clone()));
        };
        let c = value
            .as_i64()
            .ok_or_else(|| IoError::UnknownDivisorKey(key.clone()))?;
        d.coeffs[idx] = c;
    }
    Ok((sub, d))
}

/// Serialize a divisor sparsely in canonical vertex order.
pub fn divisor_to_json(sub: &Subdivision, d: &Divisor) -> Value {
    let mut coeffs = Map::new();
    for (idx, &c) in d.coeffs.iter().enumerate() {
        if c != 0 {
            coeffs.insert(sub.vertex_label(idx), Value::from(c));
        }
    }
    let mut doc = Map::new();
    doc.insert("n".into(), Value::from(sub.scale() as i64));
    doc.insert("coeffs".into(), Value::Object(coeffs));
    Value::Object(doc)
}

pub fn graph_to_json(data: &GraphData) -> Value {
    let graph = &data.graph;
    let vertices: Vec<Value> = graph
        .vertex_ids()
        .iter()
        .map(|v| Value::from(v.clone()))
        .collect();
    let edges: Vec<Value> = (0..graph.edge_count())
        .map(|e| {
            let rec = graph.edge(e);
            let mut m = Map::new();
            m.insert("id".into(), Value::from(rec.id.clone()));
            m.insert(
                "tail".into(),
                Value::from(graph.vertex_ids()[rec.tail].clone()),
            );
            m.insert(
                "head".into(),
                Value::from(graph.vertex_ids()[rec.head].clone()),
            );
            m.insert("length".into(), Value::from(data.lengths[e] as i64));
            m.insert("twist".into(), Value::from(data.twists[e]));
            Value::Object(m)
        })
        .collect();
    let mut doc = Map::new();
    doc.insert("vertices".into(), Value::Array(vertices));
    doc.insert("edges".into(), Value::Array(edges));
    Value::Object(doc)
}

/// Render a rational as a decimal for SVG coordinates only (presentation
/// layer; machine output never uses this).
pub fn rat_to_f64(r: &Rat) -> f64 {
    let scale = 1_000_000i64;
    let scaled: Rat = r * Rat::from_integer(Int::from(scale));
    let rounded = scaled.round();
    let whole = rounded.to_integer();
    // Values in drawings are tiny; clamp pathological inputs instead of
    // panicking.
    if whole.abs() > Int::from(i64::MAX / 2) {
        if whole.is_negative() {
            f64::MIN
        } else {
            f64::MAX
        }
    } else {
        let v: i64 = num::ToPrimitive::to_i64(&whole).unwrap_or(0);
        v as f64 / scale as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;

    const B2_JSON: &str = r#"{
        "vertices": ["u", "v"],
        "edges": [
            {"id": "e1", "tail": "u", "head": "v", "length": 2, "twist": 0},
            {"id": "e2", "tail": "u", "head": "v", "length": 3, "twist": 1}
        ]
    }"#;

    #[test]
    fn graph_round_trip() {
        let data = parse_graph_json(B2_JSON).unwrap();
        assert_eq!(data.graph.vertex_count(), 2);
        assert_eq!(data.lengths, vec![2, 3]);
        assert_eq!(data.twists, vec![0, 1]);
        let back = graph_to_json(&data).to_string();
        let again = parse_graph_json(&back).unwrap();
        assert_eq!(again.lengths, data.lengths);
        assert_eq!(again.twists, data.twists);
        assert_eq!(again.graph.vertex_ids(), data.graph.vertex_ids());
    }

    #[test]
    fn graph_rejections() {
        let loops = r#"{"vertices": ["u"], "edges": [{"id": "e", "tail": "u", "head": "u"}]}"#;
        assert!(matches!(
            parse_graph_json(loops),
            Err(IoError::Graph(GraphError::LoopEdge(_)))
        ));
        let bad_len =
            r#"{"vertices": ["u", "v"], "edges": [{"id": "e", "tail": "u", "head": "v", "length": 0}]}"#;
        assert!(matches!(
            parse_graph_json(bad_len),
            Err(IoError::BadLength { .. })
        ));
        assert!(matches!(
            parse_graph_json("{"),
            Err(IoError::Json(_))
        ));
    }

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rat("3/4").unwrap(), Rat::new(Int::from(3), Int::from(4)));
        assert_eq!(parse_rat("-2").unwrap(), linalg::rat(-2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(rat_str(&Rat::new(Int::from(3), Int::from(4))), "3/4");
        assert_eq!(rat_str(&linalg::rat(5)), "5/1");
        assert_eq!(half_str(-3), "-3/2");
    }

    #[test]
    fn divisor_round_trip() {
        let data = parse_graph_json(B2_JSON).unwrap();
        let text = r#"{"n": 1, "coeffs": {"u": 1, "z:e1:1": -1}}"#;
        let (sub, d) = parse_divisor_json(text, &data).unwrap();
        assert_eq!(d.coeffs[sub.vertex_by_label("u").unwrap()], 1);
        assert_eq!(d.coeffs[sub.vertex_by_label("z:e1:1").unwrap()], -1);
        let back = divisor_to_json(&sub, &d).to_string();
        let (_, d2) = parse_divisor_json(&back, &data).unwrap();
        assert_eq!(d, d2);

        let bad = r#"{"n": 1, "coeffs": {"z:e1:9": 1}}"#;
        assert!(matches!(
            parse_divisor_json(bad, &data),
            Err(IoError::UnknownDivisorKey(_))
        ));
    }
}

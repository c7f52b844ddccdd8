//! JSON persistence.
//!
//! ```json
//! { "dim": 3, "plane_normal": ["1/8", "1/8", "1"],
//!   "vertices": [["0", "1/2", "-3/7"], ...],
//!   "edges": [[0, 1], ...],
//!   "metadata": { "construction": "stacked" } }
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::{Embedding, GeometricGraph, GraphError};
use crate::exact_geom::{format_rational, parse_rational, Point2, Point3, Rational};

/// On-disk shape of a graph document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub dim: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plane_normal: Option<Vec<String>>,
    pub vertices: Vec<Vec<String>>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub metadata: Map<String, Value>,
}

impl From<&GeometricGraph> for GraphFile {
    fn from(g: &GeometricGraph) -> Self {
        let fmt = |r: &Rational| format_rational(r);
        let (dim, plane_normal, vertices) = match &g.embedding {
            Embedding::Planar(p) => (2, None, p.iter().map(|q| vec![fmt(&q.x), fmt(&q.y)]).collect()),
            Embedding::Spatial { points, plane_normal } => (
                3,
                plane_normal.as_ref().map(|n| n.coords().iter().map(|c| fmt(c)).collect()),
                points.iter().map(|p| p.coords().iter().map(|c| fmt(c)).collect()).collect(),
            ),
        };
        GraphFile {
            dim,
            plane_normal,
            vertices,
            edges: g.edges.iter().map(|&(a, b)| [a, b]).collect(),
            metadata: g.metadata.clone(),
        }
    }
}

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> GraphError {
    GraphError::Parse { location: location.into(), message: message.into() }
}

fn coord(v: &Value, location: String) -> Result<Rational, GraphError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        other => return Err(parse_err(location, format!("expected rational string, found {other}"))),
    };
    parse_rational(&text).map_err(|e| parse_err(location, e.to_string()))
}

fn coords(v: &Value, len: usize, location: &str) -> Result<Vec<Rational>, GraphError> {
    let arr = v
        .as_array()
        .ok_or_else(|| parse_err(location, "expected an array of coordinates"))?;
    if arr.len() != len {
        return Err(parse_err(location, format!("expected {len} coordinates, found {}", arr.len())));
    }
    arr.iter()
        .enumerate()
        .map(|(i, c)| coord(c, format!("{location}[{i}]")))
        .collect()
}

/// Parse a graph document. Structural problems (edge indices out of range)
/// are errors; geometric invariants are left to [`super::validate`].
pub fn from_json_str(text: &str) -> Result<GeometricGraph, GraphError> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| parse_err(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    let obj = doc.as_object().ok_or_else(|| parse_err("$", "expected a JSON object"))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("dim", "missing or non-integer"))?;
    if dim != 2 && dim != 3 {
        return Err(parse_err("dim", format!("must be 2 or 3, found {dim}")));
    }
    let dim = dim as usize;
    let verts = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("vertices", "missing or not an array"))?;
    let mut rows = Vec::with_capacity(verts.len());
    for (i, v) in verts.iter().enumerate() {
        rows.push(coords(v, dim, &format!("vertices[{i}]"))?);
    }
    let n = rows.len();
    let edge_vals = obj
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("edges", "missing or not an array"))?;
    let mut edges = Vec::with_capacity(edge_vals.len());
    for (i, e) in edge_vals.iter().enumerate() {
        let loc = format!("edges[{i}]");
        let pair = e.as_array().filter(|a| a.len() == 2).ok_or_else(|| parse_err(&loc, "expected [i, j]"))?;
        let mut ends = [0usize; 2];
        for (k, x) in pair.iter().enumerate() {
            let idx = x
                .as_u64()
                .ok_or_else(|| parse_err(format!("{loc}[{k}]"), "expected a vertex index"))?
                as usize;
            if idx >= n {
                return Err(GraphError::Structure(format!(
                    "{loc} references vertex {idx} but only {n} vertices exist"
                )));
            }
            ends[k] = idx;
        }
        edges.push((ends[0], ends[1]));
    }
    let metadata = match obj.get("metadata") {
        None | Some(Value::Null) => Map::new(),
        Some(Value::Object(m)) => m.clone(),
        Some(_) => return Err(parse_err("metadata", "expected an object")),
    };
    let embedding = if dim == 2 {
        if obj.get("plane_normal").is_some_and(|v| !v.is_null()) {
            return Err(parse_err("plane_normal", "only allowed with dim 3"));
        }
        Embedding::Planar(rows.into_iter().map(|r| Point2::new(r[0].clone(), r[1].clone())).collect())
    } else {
        let plane_normal = match obj.get("plane_normal") {
            None | Some(Value::Null) => None,
            Some(v) => {
                let c = coords(v, 3, "plane_normal")?;
                Some(Point3::new(c[0].clone(), c[1].clone(), c[2].clone()))
            }
        };
        let points = rows
            .into_iter()
            .map(|r| Point3::new(r[0].clone(), r[1].clone(), r[2].clone()))
            .collect();
        Embedding::Spatial { points, plane_normal }
    };
    Ok(GeometricGraph { embedding, edges, metadata })
}

/// Pretty JSON with a trailing newline; byte-stable for equal graphs.
pub fn to_json_string(g: &GeometricGraph) -> String {
    let mut s = serde_json::to_string_pretty(&GraphFile::from(g)).expect("graph serializes");
    s.push('\n');
    s
}

pub fn load(path: impl AsRef<Path>) -> Result<GeometricGraph, GraphError> {
    let text = std::fs::read_to_string(path)?;
    from_json_str(&text)
}

pub fn save(g: &GeometricGraph, path: impl AsRef<Path>) -> Result<(), GraphError> {
    std::fs::write(path, to_json_string(g))?;
    Ok(())
}

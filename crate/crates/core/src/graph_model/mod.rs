//! Geometric graphs: vertices at rational points, straight-line edges.

mod io;
mod scan;
mod validate;

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::exact_geom::rational::serde_rational;
use crate::exact_geom::{Dot, Point2, Point3, Rational, Segment2, Vector3};

pub use io::{from_json_str, load, save, to_json_string, GraphFile};
pub use scan::{Chart, CrossingPair};
pub use validate::{validate, Violation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Embedding {
    Planar(Vec<Point2>),
    /// Points in 3-space. With a normal, every point satisfies `p·n = 0`.
    Spatial {
        points: Vec<Point3>,
        plane_normal: Option<Vector3>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometricGraph {
    pub embedding: Embedding,
    /// Unordered vertex-index pairs.
    pub edges: Vec<(usize, usize)>,
    pub metadata: Map<String, Value>,
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("invalid graph: {}", summarize(.0))]
    Invalid(Vec<Violation>),
    #[error("graph is not planar or coplanar; crossings are undefined")]
    NotPlanar,
    #[error("operation needs a 2D graph (flatten coplanar input first)")]
    Needs2d,
    #[error("edges {0} and {1} overlap collinearly")]
    CollinearOverlap(usize, usize),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("structural error: {0}")]
    Structure(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn summarize(v: &[Violation]) -> String {
    let shown: Vec<String> = v.iter().take(5).map(|x| x.to_string()).collect();
    if v.len() > 5 {
        format!("{} (and {} more)", shown.join("; "), v.len() - 5)
    } else {
        shown.join("; ")
    }
}

impl GeometricGraph {
    pub fn planar(points: Vec<Point2>, edges: Vec<(usize, usize)>) -> Self {
        GeometricGraph { embedding: Embedding::Planar(points), edges, metadata: Map::new() }
    }

    pub fn spatial(points: Vec<Point3>, edges: Vec<(usize, usize)>) -> Self {
        GeometricGraph {
            embedding: Embedding::Spatial { points, plane_normal: None },
            edges,
            metadata: Map::new(),
        }
    }

    /// Integer-coordinate planar graph, mostly for fixtures and tests.
    pub fn from_int_points(points: &[(i64, i64)], edges: &[(usize, usize)]) -> Self {
        let pts = points.iter().map(|&(x, y)| Point2::from_ints(x, y)).collect();
        GeometricGraph::planar(pts, edges.to_vec())
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    pub fn n(&self) -> usize {
        match &self.embedding {
            Embedding::Planar(p) => p.len(),
            Embedding::Spatial { points, .. } => points.len(),
        }
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn dim(&self) -> u8 {
        match self.embedding {
            Embedding::Planar(_) => 2,
            Embedding::Spatial { .. } => 3,
        }
    }

    pub fn plane_normal(&self) -> Option<&Vector3> {
        match &self.embedding {
            Embedding::Spatial { plane_normal, .. } => plane_normal.as_ref(),
            Embedding::Planar(_) => None,
        }
    }

    pub fn points2(&self) -> Option<&[Point2]> {
        match &self.embedding {
            Embedding::Planar(p) => Some(p),
            Embedding::Spatial { .. } => None,
        }
    }

    /// Every vertex as a 3D point (planar ones at z = 0).
    pub fn points3(&self) -> Vec<Point3> {
        match &self.embedding {
            Embedding::Planar(p) => p
                .iter()
                .map(|q| Point3::new(q.x.clone(), q.y.clone(), Rational::from_integer(0.into())))
                .collect(),
            Embedding::Spatial { points, .. } => points.clone(),
        }
    }

    pub fn segment2(&self, e: usize) -> Option<Segment2> {
        let pts = self.points2()?;
        let (a, b) = self.edges[e];
        Segment2::new(pts[a].clone(), pts[b].clone()).ok()
    }

    /// Whether crossings are meaningful: planar, or 3D with a stored plane.
    pub fn is_flat(&self) -> bool {
        match &self.embedding {
            Embedding::Planar(_) => true,
            Embedding::Spatial { plane_normal, .. } => plane_normal.is_some(),
        }
    }

    /// Vertex degrees in edge order.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Connected when every vertex is reachable through edges.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = n;
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                comps -= 1;
            }
        }
        comps == 1
    }

    pub fn ensure_valid(&self) -> Result<(), GraphError> {
        let v = validate(self);
        if v.is_empty() {
            Ok(())
        } else {
            Err(GraphError::Invalid(v))
        }
    }

    /// Same graph with every coordinate mapped through `f` (planar only).
    pub fn map_points2(&self, f: impl Fn(&Point2) -> Point2) -> Option<GeometricGraph> {
        let pts = self.points2()?;
        Some(GeometricGraph {
            embedding: Embedding::Planar(pts.iter().map(f).collect()),
            edges: self.edges.clone(),
            metadata: self.metadata.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub crossing_count: usize,
    /// cos² of the sharpest crossing (largest cos² over crossing pairs).
    #[serde(with = "serde_rational::option")]
    pub min_crossing_cos2: Option<Rational>,
}

impl fmt::Display for GraphStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} m={} crossings={}", self.n, self.m, self.crossing_count)?;
        if let Some(c) = &self.min_crossing_cos2 {
            write!(f, " max_cos2={}", crate::exact_geom::format_rational(c))?;
        }
        Ok(())
    }
}

/// Counts and sharpest crossing from the exhaustive pair scan.
pub fn stats(g: &GeometricGraph) -> Result<GraphStats, GraphError> {
    g.ensure_valid()?;
    let chart = Chart::new(g)?;
    let pairs = chart.crossing_pairs()?;
    let min_crossing_cos2 = pairs.iter().map(|p| chart.cos2(p.e1, p.e2)).max();
    Ok(GraphStats { n: g.n(), m: g.m(), crossing_count: pairs.len(), min_crossing_cos2 })
}

/// cos² between two 3D direction vectors (used by coplanar checks).
pub fn cos2_3d(a: &Vector3, b: &Vector3) -> Rational {
    let d = a.dot(b);
    &d * &d / (a.norm2() * b.norm2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geom::{int, rat};

    fn k4() -> GeometricGraph {
        GeometricGraph::from_int_points(
            &[(0, 0), (1, 0), (1, 1), (0, 1)],
            &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)],
        )
    }

    #[test]
    fn stats_examples() {
        let tri = GeometricGraph::from_int_points(&[(0, 0), (4, 0), (0, 4)], &[(0, 1), (1, 2), (2, 0)]);
        let s = stats(&tri).unwrap();
        assert_eq!((s.n, s.m, s.crossing_count), (3, 3, 0));
        assert_eq!(s.min_crossing_cos2, None);

        let x = GeometricGraph::from_int_points(&[(0, 0), (2, 2), (0, 2), (2, 0)], &[(0, 1), (2, 3)]);
        assert_eq!(stats(&x).unwrap().crossing_count, 1);

        let s = stats(&k4()).unwrap();
        assert_eq!((s.n, s.m, s.crossing_count), (4, 6, 1));
        assert_eq!(s.min_crossing_cos2, Some(int(0)));
    }

    #[test]
    fn stats_invariant_under_translation_and_scaling() {
        let g = GeometricGraph::from_int_points(
            &[(0, 0), (3, 1), (0, 2), (2, -1), (1, 3)],
            &[(0, 1), (2, 3), (0, 4), (3, 4), (1, 2)],
        );
        let base = stats(&g).unwrap();
        let shift = crate::exact_geom::Point2::new(int(7), int(-3));
        let moved = g.map_points2(|p| p.add(&shift)).unwrap();
        assert_eq!(stats(&moved).unwrap(), base);
        let scaled = g.map_points2(|p| p.scale(&rat(5, 3))).unwrap();
        assert_eq!(stats(&scaled).unwrap(), base);
    }

    #[test]
    fn connectivity() {
        assert!(k4().is_connected());
        let two = GeometricGraph::from_int_points(&[(0, 0), (1, 0), (5, 5), (6, 5)], &[(0, 1), (2, 3)]);
        assert!(!two.is_connected());
    }
}

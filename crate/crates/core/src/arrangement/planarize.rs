//! Subdividing every edge at its crossing points.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::ArrangementError;
use crate::exact_geom::{crossing_point, Dot, Point2, Rational};
use crate::graph_model::{Chart, GeometricGraph, GraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "vertex")]
pub enum NodeKind {
    /// A vertex of the source graph.
    Original(usize),
    Crossing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub point: Point2,
    pub kind: NodeKind,
}

impl Node {
    pub fn is_original(&self) -> bool {
        matches!(self.kind, NodeKind::Original(_))
    }
}

/// A piece of a source edge between consecutive nodes on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub a: usize,
    pub b: usize,
    pub source_edge: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Planarization {
    pub source: GeometricGraph,
    /// Sorted lexicographically by point.
    pub nodes: Vec<Node>,
    pub arcs: Vec<Arc>,
    /// Node of each source vertex.
    pub vertex_node: Vec<usize>,
    /// Crossing nodes where three or more edges meet.
    pub multi_crossings: Vec<usize>,
    pub crossing_pairs: usize,
}

impl Planarization {
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.nodes.len()];
        for a in &self.arcs {
            d[a.a] += 1;
            d[a.b] += 1;
        }
        d
    }

    pub fn crossing_count(&self) -> usize {
        self.nodes.iter().filter(|n| !n.is_original()).count()
    }

    /// Crossing nodes all have degree 4.
    pub fn is_simple(&self) -> bool {
        self.multi_crossings.is_empty()
    }
}

/// Compute G′: every proper crossing becomes a node (coincident crossings
/// merge) and every edge is split at the crossings along it.
pub fn planarize(g: &GeometricGraph) -> Result<Planarization, ArrangementError> {
    let pts = g.points2().ok_or(GraphError::Needs2d)?;
    g.ensure_valid()?;
    let chart = Chart::new(g)?;
    let pairs = chart.crossing_pairs()?;
    let mut on_edge: Vec<Vec<Point2>> = vec![Vec::new(); g.m()];
    let mut crossings: BTreeSet<Point2> = BTreeSet::new();
    for p in &pairs {
        let s1 = g.segment2(p.e1).expect("valid edge");
        let s2 = g.segment2(p.e2).expect("valid edge");
        let x = crossing_point(&s1, &s2).map_err(|_| GraphError::CollinearOverlap(p.e1, p.e2))?;
        on_edge[p.e1].push(x.clone());
        on_edge[p.e2].push(x.clone());
        crossings.insert(x);
    }
    let mut all: BTreeMap<Point2, NodeKind> =
        crossings.into_iter().map(|x| (x, NodeKind::Crossing)).collect();
    for (i, p) in pts.iter().enumerate() {
        all.insert(p.clone(), NodeKind::Original(i));
    }
    let index: BTreeMap<&Point2, usize> = all.keys().enumerate().map(|(i, p)| (p, i)).collect();
    let nodes: Vec<Node> = all.iter().map(|(p, k)| Node { point: p.clone(), kind: *k }).collect();
    let vertex_node: Vec<usize> = pts.iter().map(|p| index[p]).collect();
    let mut arcs = Vec::new();
    for (e, &(a, b)) in g.edges.iter().enumerate() {
        let dir = pts[b].sub(&pts[a]);
        let along = |p: &Point2| -> Rational { p.sub(&pts[a]).dot(&dir) };
        let mut inner = std::mem::take(&mut on_edge[e]);
        inner.sort_by_cached_key(along);
        inner.dedup();
        let chain: Vec<usize> = std::iter::once(vertex_node[a])
            .chain(inner.iter().map(|p| index[p]))
            .chain(std::iter::once(vertex_node[b]))
            .collect();
        for w in chain.windows(2) {
            arcs.push(Arc { a: w[0], b: w[1], source_edge: e });
        }
    }
    let mut p = Planarization {
        source: g.clone(),
        nodes,
        arcs,
        vertex_node,
        multi_crossings: Vec::new(),
        crossing_pairs: pairs.len(),
    };
    let deg = p.degrees();
    p.multi_crossings = (0..p.nodes.len()).filter(|&i| !p.nodes[i].is_original() && deg[i] > 4).collect();
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_has_no_crossings() {
        let g = GeometricGraph::from_int_points(&[(0, 0), (4, 0), (0, 4)], &[(0, 1), (1, 2), (2, 0)]);
        let p = planarize(&g).unwrap();
        assert_eq!(p.crossing_count(), 0);
        assert_eq!(p.arcs.len(), 3);
    }

    #[test]
    fn x_has_one_degree_four_node() {
        let g = GeometricGraph::from_int_points(&[(0, 0), (2, 2), (0, 2), (2, 0)], &[(0, 1), (2, 3)]);
        let p = planarize(&g).unwrap();
        assert_eq!(p.crossing_count(), 1);
        assert_eq!(p.arcs.len(), 4);
        let c = p.nodes.iter().position(|n| !n.is_original()).unwrap();
        assert_eq!(p.nodes[c].point, Point2::from_ints(1, 1));
        assert_eq!(p.degrees()[c], 4);
        assert!(p.is_simple());
    }

    #[test]
    fn concurrent_segments_merge() {
        // directions 0, ~π/3, ~2π/3 through the origin
        let g = GeometricGraph::from_int_points(
            &[(-4, 0), (4, 0), (-4, -7), (4, 7), (4, -7), (-4, 7)],
            &[(0, 1), (2, 3), (4, 5)],
        );
        let p = planarize(&g).unwrap();
        assert_eq!(p.crossing_count(), 1);
        assert_eq!(p.multi_crossings.len(), 1);
        assert_eq!(p.degrees()[p.multi_crossings[0]], 6);
        assert_eq!(p.crossing_pairs, 3);
    }

    #[test]
    fn arcs_concatenate_to_edges() {
        let g = GeometricGraph::from_int_points(
            &[(0, 0), (6, 0), (1, -1), (1, 1), (3, -1), (3, 1), (5, -2), (5, 2)],
            &[(0, 1), (2, 3), (4, 5), (6, 7)],
        );
        let p = planarize(&g).unwrap();
        let first: Vec<_> = p.arcs.iter().filter(|a| a.source_edge == 0).collect();
        assert_eq!(first.len(), 4);
        for w in first.windows(2) {
            assert_eq!(w[0].b, w[1].a);
        }
        assert_eq!(first[0].a, p.vertex_node[0]);
        assert_eq!(first[3].b, p.vertex_node[1]);
    }

    #[test]
    fn rejects_3d_input() {
        let g = crate::constructions::stacked_grids(2);
        assert!(matches!(planarize(&g), Err(ArrangementError::Graph(GraphError::Needs2d))));
    }
}

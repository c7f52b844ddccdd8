//! Lifting a covered line arrangement to a 3D graph of vertical grid planes.

use std::collections::HashSet;

use super::lattice::CoveredArrangement;
use super::ConstructionError;
use crate::exact_geom::{int, Point3};
use crate::graph_model::GeometricGraph;

/// Vertices are the cover points at heights `0..k`; over every line sits a
/// grid graph whose columns are the cover points on the line in order and
/// whose rows are the heights. Column `j` at height `h` joins `(j+1, h)`,
/// `(j+1, h+1)` and `(j+2, h+1)`, so every edge moves along the line.
pub fn lemma_convert_build(
    arr: &CoveredArrangement,
    t: usize,
    k: usize,
) -> Result<GeometricGraph, ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::InvalidParameter(format!("k = {k} must be at least 2")));
    }
    let on_lines = arr.points_on_lines();
    if let Some(l) = on_lines.iter().position(Vec::is_empty) {
        return Err(ConstructionError::InvalidParameter(format!("line {l} has no cover point")));
    }
    let vid = |p: usize, h: usize| p * k + h;
    let points: Vec<Point3> = arr
        .cover_points
        .iter()
        .flat_map(|p| (0..k).map(move |h| Point3::new(p.x.clone(), p.y.clone(), int(h as i64))))
        .collect();
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    for cols in &on_lines {
        let p = cols.len();
        for j in 0..p {
            for h in 0..k {
                for (dj, dh) in [(1, 0), (1, 1), (2, 1)] {
                    if j + dj < p && h + dh < k {
                        let (a, b) = (vid(cols[j], h), vid(cols[j + dj], h + dh));
                        if !seen.insert((a.min(b), a.max(b))) {
                            return Err(ConstructionError::Internal(format!(
                                "edge ({a}, {b}) produced by two planes"
                            )));
                        }
                        edges.push((a, b));
                    }
                }
            }
        }
    }
    Ok(GeometricGraph::spatial(points, edges)
        .with_meta("construction", "lemma-convert")
        .with_meta("t", t)
        .with_meta("k", k))
}

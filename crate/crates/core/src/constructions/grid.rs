//! The crossing-free grid graph and its stacked 3D copies.

use crate::exact_geom::{Point2, Point3};
use crate::graph_model::GeometricGraph;

/// Edges of the grid graph on `x` columns and `y` rows, each as
/// `((i, j), (i', j'))`: `(i,j)` joins `(i,j+1)`, `(i+1,j+1)` and `(i+1,j+2)`.
pub(crate) fn grid_edges(x: usize, y: usize) -> Vec<((usize, usize), (usize, usize))> {
    let mut out = Vec::new();
    for i in 0..x {
        for j in 0..y {
            for (di, dj) in [(0, 1), (1, 1), (1, 2)] {
                let (a, b) = (i + di, j + dj);
                if a < x && b < y {
                    out.push(((i, j), (a, b)));
                }
            }
        }
    }
    out
}

/// Grid graph drawn on the integer points `{0..x-1} × {0..y-1}`.
pub fn grid_graph(x: usize, y: usize) -> GeometricGraph {
    let points = (0..x)
        .flat_map(|i| (0..y).map(move |j| Point2::from_ints(i as i64, j as i64)))
        .collect();
    let edges = grid_edges(x, y)
        .into_iter()
        .map(|((i, j), (a, b))| (i * y + j, a * y + b))
        .collect();
    GeometricGraph::planar(points, edges)
        .with_meta("construction", "grid")
        .with_meta("x", x)
        .with_meta("y", y)
}

/// `2r` grid-graph copies on the `r × r × r` cube: one on each plane
/// `x = c` and one on each plane `y = c`.
///
/// Within a plane the grid's rows run up the z-axis and its columns run
/// along the horizontal axis, with column steps on every edge, so no edge is
/// parallel to the z-axis.
pub fn stacked_grids(r: usize) -> GeometricGraph {
    let idx = |x: usize, y: usize, z: usize| (x * r + y) * r + z;
    let mut points = Vec::with_capacity(r * r * r);
    for x in 0..r {
        for y in 0..r {
            for z in 0..r {
                points.push(Point3::from_ints(x as i64, y as i64, z as i64));
            }
        }
    }
    // grid index (h, c): h = height, c = column along the plane
    let copy = grid_edges(r, r);
    let mut edges = Vec::with_capacity(2 * r * copy.len());
    for c in 0..r {
        for &((h1, c1), (h2, c2)) in &copy {
            edges.push((idx(c, c1, h1), idx(c, c2, h2)));
        }
        for &((h1, c1), (h2, c2)) in &copy {
            edges.push((idx(c1, c, h1), idx(c2, c, h2)));
        }
    }
    GeometricGraph::spatial(points, edges)
        .with_meta("construction", "stacked")
        .with_meta("r", r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_model::{stats, validate};
    use num_traits::Zero;
    use std::collections::HashSet;

    fn closed_form(x: i64, y: i64) -> i64 {
        3 * x * y - 4 * x - 2 * y + 3
    }

    #[test]
    fn small_grid_counts() {
        assert_eq!(grid_graph(1, 1).m(), 0);
        assert_eq!(grid_graph(2, 2).m(), 3);
        assert_eq!(grid_graph(4, 4).m(), 27);
        assert_eq!(closed_form(4, 4), 27);
    }

    #[test]
    fn grid_closed_form_and_planarity() {
        for x in 1..=12 {
            for y in 1..=12 {
                let g = grid_graph(x, y);
                if x >= 2 && y >= 3 {
                    assert_eq!(g.m() as i64, closed_form(x as i64, y as i64), "{x}x{y}");
                }
                {
                    assert!(validate(&g).is_empty());
                    assert_eq!(stats(&g).unwrap().crossing_count, 0, "{x}x{y}");
                }
            }
        }
    }

    #[test]
    fn stacked_counts() {
        let g1 = stacked_grids(1);
        assert_eq!((g1.n(), g1.m()), (1, 0));
        let g2 = stacked_grids(2);
        assert_eq!((g2.n(), g2.m()), (8, 12));
        let g6 = stacked_grids(6);
        assert_eq!((g6.n(), g6.m()), (216, 900));
        for r in 3..=7 {
            let m = stacked_grids(r).m();
            assert_eq!(m, 2 * r * (3 * r * r - 6 * r + 3));
        }
    }

    #[test]
    fn stacked_copies_are_disjoint_and_never_vertical() {
        for r in [2, 4, 5] {
            let g = stacked_grids(r);
            let pts = g.points3();
            let mut seen = HashSet::new();
            for &(a, b) in &g.edges {
                assert!(seen.insert((a.min(b), a.max(b))), "edge repeated");
                let d = pts[b].sub(&pts[a]);
                assert!(!(d.x.is_zero() && d.y.is_zero()));
            }
            assert!(validate(&g).is_empty());
        }
    }
}

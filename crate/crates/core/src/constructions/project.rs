//! Orthogonal projection onto the plane with normal `(γ, γ, 1)`.

use num_traits::{Signed, Zero};

use super::ConstructionError;
use crate::exact_geom::{rat, CosThreshold, Dot, Point3, Rational};
use crate::graph_model::{validate, Embedding, GeometricGraph, Violation};
use crate::verify::is_alpha_ac;

/// Halvings tried by [`choose_gamma`] before giving up.
pub const DEFAULT_MAX_HALVINGS: u32 = 24;

pub fn project(g3: &GeometricGraph, gamma: &Rational) -> Result<GeometricGraph, ConstructionError> {
    if gamma.is_negative() {
        return Err(ConstructionError::InvalidParameter(format!("gamma {gamma} is negative")));
    }
    let n = Point3::new(gamma.clone(), gamma.clone(), Rational::from_integer(1.into()));
    let nn = n.norm2();
    let points: Vec<Point3> = g3
        .points3()
        .iter()
        .map(|p| p.sub(&n.scale(&(p.dot(&n) / &nn))))
        .collect();
    let out = GeometricGraph {
        embedding: Embedding::Spatial { points, plane_normal: Some(n) },
        edges: g3.edges.clone(),
        metadata: g3.metadata.clone(),
    }
    .with_meta("gamma", crate::exact_geom::format_rational(gamma));
    if let Some(v) = validate(&out).into_iter().next() {
        return Err(match v {
            Violation::DuplicatePoint { first, second } => {
                ConstructionError::ProjectionCollision { first, second }
            }
            Violation::VertexOnEdge { vertex, edge } => ConstructionError::ProjectionOnEdge { vertex, edge },
            Violation::EdgeOverlap { first, second } => ConstructionError::ProjectionOverlap { first, second },
            other => ConstructionError::Graph(crate::graph_model::GraphError::Invalid(vec![other])),
        });
    }
    Ok(out)
}

/// First `γ = 2^-s` (`s = 3, 4, ...`) whose projection is certified at the
/// threshold. Projections that collapse vertices are skipped.
pub fn choose_gamma(
    g3: &GeometricGraph,
    target: &CosThreshold,
    max_halvings: u32,
) -> Result<Rational, ConstructionError> {
    g3.ensure_valid()?;
    let mut gamma = rat(1, 8);
    for _ in 0..=max_halvings {
        match project(g3, &gamma) {
            Ok(g) => {
                if is_alpha_ac(&g, target)?.verdict {
                    return Ok(gamma);
                }
            }
            Err(
                ConstructionError::ProjectionCollision { .. }
                | ConstructionError::ProjectionOnEdge { .. }
                | ConstructionError::ProjectionOverlap { .. },
            ) => {}
            Err(e) => return Err(e),
        }
        gamma /= Rational::from_integer(2.into());
    }
    debug_assert!(!gamma.is_zero());
    Err(ConstructionError::GammaSearchExhausted { halvings: max_halvings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{grid_graph, stacked_grids};
    use crate::exact_geom::{int, rational_cos_bound, AngleSpec};

    #[test]
    fn zero_gamma_collapses_columns() {
        let e = project(&stacked_grids(2), &int(0)).unwrap_err();
        assert!(matches!(e, ConstructionError::ProjectionCollision { .. }), "{e}");
    }

    #[test]
    fn projected_points_lie_on_plane() {
        let g = project(&stacked_grids(3), &rat(1, 7)).unwrap();
        let n = g.plane_normal().unwrap().clone();
        for p in g.points3() {
            assert!(p.dot(&n).is_zero());
        }
        assert_eq!((g.n(), g.m()), (27, stacked_grids(3).m()));
    }

    #[test]
    fn gamma_search_on_stacked_grids() {
        let alpha = AngleSpec::pi_over(2).minus(&rat(1, 4));
        let t = rational_cos_bound(&alpha, 64).unwrap();
        let gamma = choose_gamma(&stacked_grids(4), &t, DEFAULT_MAX_HALVINGS).unwrap();
        let s = gamma.recip().to_integer().bits() - 1;
        assert!(s <= 12, "gamma = {gamma}");
    }

    #[test]
    fn exact_right_angle_is_never_reached() {
        let t = rational_cos_bound(&AngleSpec::pi_over(2), 64).unwrap();
        let e = choose_gamma(&stacked_grids(2), &t, 6).unwrap_err();
        assert!(matches!(e, ConstructionError::GammaSearchExhausted { halvings: 6 }));
    }

    #[test]
    fn crossing_free_input_keeps_first_gamma() {
        let g2 = grid_graph(4, 3);
        let pts = g2
            .points2()
            .unwrap()
            .iter()
            .map(|p| Point3::new(p.x.clone(), int(0), p.y.clone()))
            .collect();
        let g3 = GeometricGraph::spatial(pts, g2.edges.clone());
        let t = rational_cos_bound(&AngleSpec::pi_over(2), 64).unwrap();
        assert_eq!(choose_gamma(&g3, &t, 4).unwrap(), rat(1, 8));
    }
}

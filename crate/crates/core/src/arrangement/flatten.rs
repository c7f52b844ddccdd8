//! Carrying a coplanar 3D drawing into the plane.
//!
//! With `u0 = n × e_k` (`e_k` the axis where `|n_k|` is smallest) and
//! `v0 = n × u0`, the map `p ↦ (p·u0, (p·v0)/|n|)` is a similarity of the
//! plane onto R², scaled by `|u0|`. Only `1/|n|` can be irrational; it is
//! replaced by a rational `s`, which keeps the map linear, so incidences
//! and crossings carry over exactly and only angles move, by a factor
//! `s·|n|` on one axis.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ArrangementError;
use crate::exact_geom::rational::{ceil_dyadic, serde_rational};
use crate::exact_geom::{rational_sqrt, Dot, Interval, Point2, Point3, Rational};
use crate::graph_model::{stats, validate, Embedding, GeometricGraph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlattenReport {
    pub bits: u32,
    /// True when the input was already planar or `|n|` is rational.
    pub exact: bool,
    /// Upper bound on `|s·|n| − 1|`.
    #[serde(with = "serde_rational")]
    pub relative_scale_error: Rational,
    /// Largest crossing cos² in the output.
    #[serde(with = "serde_rational::option")]
    pub max_crossing_cos2: Option<Rational>,
}

pub fn flatten_to_2d(
    g: &GeometricGraph,
    bits: u32,
) -> Result<(GeometricGraph, FlattenReport), ArrangementError> {
    let report = |g2: &GeometricGraph, exact: bool, err: Rational| -> Result<FlattenReport, ArrangementError> {
        Ok(FlattenReport {
            bits,
            exact,
            relative_scale_error: err,
            max_crossing_cos2: stats(g2)?.min_crossing_cos2,
        })
    };
    let (points, normal) = match &g.embedding {
        Embedding::Planar(_) => {
            let r = report(g, true, Rational::zero())?;
            return Ok((g.clone(), r));
        }
        Embedding::Spatial { points, plane_normal } => (points, plane_normal.clone()),
    };
    let normal = match normal {
        Some(n) => n,
        None => fit_normal(points).ok_or_else(|| {
            GraphError::Structure("spatial drawing has no plane normal".into())
        })?,
    };
    let n = [&normal.x, &normal.y, &normal.z];
    let k = (0..3).min_by(|&a, &b| n[a].abs().cmp(&n[b].abs())).expect("three axes");
    let mut axis = [Rational::zero(), Rational::zero(), Rational::zero()];
    axis[k] = Rational::from_integer(1.into());
    let e = Point3::new(axis[0].clone(), axis[1].clone(), axis[2].clone());
    let u0 = normal.cross(&e);
    let v0 = normal.cross(&u0);
    let n2 = normal.norm2();
    let (s, exact, err) = match rational_sqrt(&n2) {
        Some(r) => (Rational::from_integer(1.into()) / r, true, Rational::zero()),
        None => {
            let root = Interval::point(n2.clone()).sqrt(bits + 8);
            let s = ceil_dyadic(&(Rational::from_integer(1.into()) / &root.hi), bits);
            let span = root.scale(&s);
            let one = Rational::from_integer(1.into());
            let err = (&span.hi - &one).abs().max((&span.lo - &one).abs());
            (s, false, err)
        }
    };
    let flat: Vec<Point2> = points.iter().map(|p| Point2::new(p.dot(&u0), p.dot(&v0) * &s)).collect();
    let out = GeometricGraph { embedding: Embedding::Planar(flat), edges: g.edges.clone(), metadata: g.metadata.clone() }
        .with_meta("flattened_bits", bits);
    if let Some(v) = validate(&out).into_iter().next() {
        return Err(ArrangementError::FlattenCollision { bits, reason: format!("{v:?}") });
    }
    let r = report(&out, exact, err)?;
    Ok((out, r))
}

fn fit_normal(points: &[Point3]) -> Option<Point3> {
    let p0 = points.first()?;
    let d1 = points.iter().map(|p| p.sub(p0)).find(|d| !d.is_zero())?;
    points
        .iter()
        .map(|p| d1.cross(&p.sub(p0)))
        .find(|c| !c.is_zero())
        .filter(|n| points.iter().all(|p| p.sub(p0).dot(n).is_zero()))
}

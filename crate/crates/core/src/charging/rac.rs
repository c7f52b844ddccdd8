//! Face conditions behind the `4n − 10` bound for right-angle crossings.

use serde::{Deserialize, Serialize};

use super::{initial_charges, Arrangement, ChargingError};
use crate::arrangement::HalfEdgeMesh;
use crate::exact_geom::rational::serde_rational;
use crate::exact_geom::{rat, CosThreshold, Rational};
use crate::verify::{is_alpha_ac, ACCertificate};

/// Which outer-face argument sharpened `4n − 8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RacCase {
    /// Outer face has `|f| ≥ 4` and only original vertices: slack 2.
    OuterFaceLarge,
    /// Outer face is a 3-triangle with three distinct inner neighbours,
    /// at most one a 2-triangle: slack at least 3/2.
    OuterTriangle,
    /// Neither applies; only `4n − 8` follows.
    General,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RacReport {
    pub n: usize,
    pub m: usize,
    pub precondition: ACCertificate,
    /// Faces with `|f| = 3` and `v(f) < 2`.
    pub three_face_violations: Vec<usize>,
    /// Faces with `ch(f) < v(f)/2`.
    pub half_charge_violations: Vec<usize>,
    pub case: RacCase,
    /// Lower bound on `Σ (ch − v/2)` the case guarantees.
    #[serde(with = "serde_rational")]
    pub certified_slack: Rational,
    /// `⌊4n − 8 − slack⌋` when the face conditions hold.
    pub derived_bound: Option<i64>,
    pub bound_holds: bool,
    pub holds: bool,
}

/// Check the face inequalities of the right-angle argument on `arr`.
pub fn rac_face_conditions(arr: &Arrangement) -> Result<RacReport, ChargingError> {
    arr.require_connected()?;
    let cert = is_alpha_ac(&arr.planarization.source, &CosThreshold::exact("pi/2", Rational::from_integer(0.into())))?;
    if !cert.verdict {
        return Err(ChargingError::Precondition("input is not right-angle crossing".into()));
    }
    if !arr.planarization.is_simple() {
        return Err(ChargingError::Precondition("concurrent crossings".into()));
    }
    let metrics = &arr.metrics;
    let ch = initial_charges(metrics).charges;
    let half = |f: usize| rat(metrics[f].original_vertex_steps as i64, 2);
    let slack = |f: usize| &ch[f] - half(f);
    let three_face_violations: Vec<usize> = metrics
        .iter()
        .filter(|f| f.walk_length == 3 && f.original_vertex_steps < 2)
        .map(|f| f.face)
        .collect();
    let half_charge_violations: Vec<usize> =
        (0..metrics.len()).filter(|&f| slack(f) < Rational::from_integer(0.into())).collect();
    let outer = arr.mesh.outer;
    let o = &metrics[outer];
    let (case, certified_slack) = if o.walk_length >= 4 && o.original_vertex_steps == o.walk_length && slack(outer) >= rat(2, 1) {
        (RacCase::OuterFaceLarge, rat(2, 1))
    } else if o.walk_length == 3 && o.original_vertex_steps == 3 {
        outer_triangle_slack(arr, &slack).map_or((RacCase::General, rat(0, 1)), |s| (RacCase::OuterTriangle, s))
    } else {
        (RacCase::General, rat(0, 1))
    };
    let face_ok = three_face_violations.is_empty() && half_charge_violations.is_empty();
    let n = arr.n() as i64;
    let derived_bound = face_ok.then(|| (Rational::from_integer((4 * n - 8).into()) - &certified_slack).floor().to_integer());
    let derived_bound = derived_bound.map(|b| i64::try_from(b).expect("bound fits"));
    let bound_holds = derived_bound.is_some_and(|b| arr.m() as i64 <= b);
    Ok(RacReport {
        n: arr.n(),
        m: arr.m(),
        precondition: cert,
        three_face_violations,
        half_charge_violations,
        case,
        certified_slack,
        derived_bound,
        bound_holds,
        holds: face_ok && bound_holds,
    })
}

/// Slack guaranteed around an outer 3-triangle, when the neighbour
/// conditions of the argument hold.
fn outer_triangle_slack(arr: &Arrangement, slack: &dyn Fn(usize) -> Rational) -> Option<Rational> {
    let mesh = &arr.mesh;
    let metrics = &arr.metrics;
    let mut neighbours: Vec<usize> =
        mesh.face_walk(mesh.outer).iter().map(|&h| mesh.face_of[HalfEdgeMesh::twin(h)]).collect();
    neighbours.sort_unstable();
    neighbours.dedup();
    if neighbours.len() != 3 || neighbours.contains(&mesh.outer) {
        return None;
    }
    if neighbours.iter().any(|&f| metrics[f].original_vertex_steps < 2) {
        return None;
    }
    let two_triangles = neighbours
        .iter()
        .filter(|&&f| metrics[f].walk_length == 3 && metrics[f].original_vertex_steps == 2)
        .count();
    if two_triangles > 1 {
        return None;
    }
    let others: Vec<usize> = neighbours
        .into_iter()
        .filter(|&f| !(metrics[f].walk_length == 3 && metrics[f].original_vertex_steps == 2))
        .collect();
    if others.iter().any(|&f| slack(f) < rat(1, 2)) {
        return None;
    }
    Some(slack(mesh.outer).min(rat(1, 2)) + rat(others.len() as i64, 2))
}
